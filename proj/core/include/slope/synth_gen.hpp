#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slope/data_model.hpp"
#include "slope/random.hpp"
#include "slope/slope_engine.hpp"

namespace slope {

enum class CauseKind { Uniform, SubGaussian, Binomial, Poisson, EquidistantK, Gaussian };

struct CauseDist {
  CauseKind kind = CauseKind::Uniform;
  std::size_t k = 2;  // EquidistantK only
};

enum class MechanismKind { Linear, Cubic, Reciprocal };

/// Coefficients in ascending powers for Linear/Cubic; (a, b) of a/(x+b) for
/// Reciprocal, where b is filled in from the cause sample when left unset.
struct Mechanism {
  MechanismKind kind = MechanismKind::Linear;
  std::vector<double> coeffs;

  static Mechanism linear() { return {MechanismKind::Linear, {1.0, 2.0}}; }
  static Mechanism cubic() { return {MechanismKind::Cubic, {1.0, 1.0, 1.0, 1.0}}; }
  static Mechanism reciprocal() { return {MechanismKind::Reciprocal, {1.0}}; }
  static Mechanism standard(MechanismKind kind);
};

enum class NoiseKind { AdditiveUniform, AdditiveGaussian, NonAdditive };

struct GenSpec {
  CauseDist cause;
  Mechanism mechanism = Mechanism::linear();
  NoiseKind noise = NoiseKind::AdditiveGaussian;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
};

/// Sign-preserving power v -> sign(v) |v|^0.7.
double sub_gaussian_transform(double v);

std::vector<double> gen_cause(const CauseDist& dist, std::size_t n, Rng& rng);

/// Throws SingularMechanism when a reciprocal denominator comes within 1e-6
/// of zero.
std::vector<double> apply_mechanism(const Mechanism& mech,
                                    std::span<const double> xs);

/// Shift b for the reciprocal mechanism: keeps x + b >= 1 over the sample.
double reciprocal_shift(std::span<const double> xs);

/// Non-additive noise at one point given two standard-normal draws.
double non_additive_noise(double x, double nu, double z1, double z2);

std::vector<double> add_noise(NoiseKind kind, std::span<const double> xs,
                              std::span<const double> ys0, Rng& rng);

struct GeneratedPair {
  NumericPair pair;
  Decision truth = Decision::XtoY;
};

GeneratedPair gen_pair(const GenSpec& spec);

std::string_view to_string(CauseKind kind);
std::string_view to_string(MechanismKind kind);
std::string_view to_string(NoiseKind kind);
/// Short codes: u, g (sub-Gaussian), b, p, ek, n (Gaussian).
std::optional<CauseKind> parse_cause(std::string_view code);
/// linear, cubic, reciprocal.
std::optional<MechanismKind> parse_mechanism(std::string_view code);
/// u, g, n.
std::optional<NoiseKind> parse_noise(std::string_view code);

/// Default file stem for a generated pair, e.g. "u_cubic_g_n1000_s1".
std::string default_name(const GenSpec& spec);

}  // namespace slope
