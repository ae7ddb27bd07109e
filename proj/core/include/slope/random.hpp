#pragma once

#include <cstdint>
#include <limits>

namespace slope {

/// xoshiro256** seeded through splitmix64. Output is identical on every
/// platform; the sampling helpers below avoid std:: distributions, whose
/// algorithms are implementation-defined.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform between a and b; the bounds may be given in either order.
  double uniform(double a, double b);
  /// Box-Muller normal draw.
  double normal(double mean = 0.0, double stddev = 1.0);
  /// Sum of `trials` Bernoulli(p) draws.
  std::uint64_t binomial(std::uint64_t trials, double p);
  /// Knuth's multiplication method; intended for small lambda.
  std::uint64_t poisson(double lambda);
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
};

}  // namespace slope
