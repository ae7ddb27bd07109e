#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "slope/regression.hpp"

namespace slope {

/// Rissanen's normalizing constant for the universal integer code.
inline constexpr double kRissanenC0 = 2.865064;

struct EncodingConfig {
  int precision = 3;
  std::size_t num_classes = 5;
  double t = 5.0;
};

/// Universal code length L_N(z) in bits. Throws InvalidArgument for z < 1.
double int_code_len(std::uint64_t z);

/// Shift exponent: the smallest s with |phi| * 10^s >= 10^p. phi must be
/// nonzero.
int param_shift(double phi, int precision);

/// phi as the decoder sees it: sign * ceil(|phi| * 10^s) / 10^s.
double round_param(double phi, int precision);

/// Bits for one parameter: shift, shifted digits and sign. Zero costs 1 bit.
double param_code_len(double phi, int precision);

double function_code_len(std::span<const double> coeffs, int precision);
double function_code_len(const FittedFunction& fn, int precision);

/// log2 of the binomial coefficient C(n, k), via lgamma.
double log2_binomial(std::size_t n, std::size_t k);

/// Model cost from its structural counts and summed parameter costs.
double model_code_len(std::size_t n_locals, std::size_t distinct_x,
                      double param_bits, const EncodingConfig& cfg);

/// Gaussian residual cost for one function covering n_f points.
double gaussian_data_code_len(std::size_t n_f, double sigma_hat, double tau);

/// Sum over functions given as (n_f, sigma_hat).
double data_code_len(std::span<const std::pair<std::size_t, double>> functions,
                     double tau);

/// Uniform code at resolution tau: -n log2 tau.
double marginal_code_len(std::size_t n, double tau);

}  // namespace slope
