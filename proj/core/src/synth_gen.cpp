#include "slope/synth_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slope/error.hpp"

namespace slope {

Mechanism Mechanism::standard(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::Linear: return linear();
    case MechanismKind::Cubic: return cubic();
    case MechanismKind::Reciprocal: return reciprocal();
  }
  return linear();
}

double sub_gaussian_transform(double v) {
  return std::copysign(std::pow(std::fabs(v), 0.7), v);
}

std::vector<double> gen_cause(const CauseDist& dist, std::size_t n, Rng& rng) {
  std::vector<double> xs(n);
  switch (dist.kind) {
    case CauseKind::Uniform: {
      const double t = rng.uniform(1.0, 10.0);
      for (auto& x : xs) x = rng.uniform(-t, t);
      break;
    }
    case CauseKind::SubGaussian: {
      const double s = rng.uniform(1.0, 10.0);
      for (auto& x : xs) x = sub_gaussian_transform(rng.normal(0.0, s));
      break;
    }
    case CauseKind::Gaussian: {
      const double s = rng.uniform(1.0, 10.0);
      for (auto& x : xs) x = rng.normal(0.0, s);
      break;
    }
    case CauseKind::Binomial: {
      const double p = rng.uniform(0.1, 0.9);
      const auto trials =
          std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                         std::ceil(rng.uniform(1.0, 10.0))));
      for (auto& x : xs) x = static_cast<double>(rng.binomial(trials, p));
      break;
    }
    case CauseKind::Poisson: {
      const double lambda = rng.uniform(1.0, 10.0);
      for (auto& x : xs) x = static_cast<double>(rng.poisson(lambda));
      break;
    }
    case CauseKind::EquidistantK: {
      if (dist.k < 2) throw InvalidArgument("equidistant cause needs k >= 2");
      const double denom = static_cast<double>(dist.k - 1);
      for (auto& x : xs) x = static_cast<double>(rng.below(dist.k)) / denom;
      break;
    }
  }
  return xs;
}

double reciprocal_shift(std::span<const double> xs) {
  if (xs.empty()) return 1.0;
  return 1.0 - *std::min_element(xs.begin(), xs.end());
}

std::vector<double> apply_mechanism(const Mechanism& mech,
                                    std::span<const double> xs) {
  std::vector<double> ys(xs.size());
  switch (mech.kind) {
    case MechanismKind::Linear:
    case MechanismKind::Cubic:
      for (std::size_t i = 0; i < xs.size(); ++i) {
        // Horner, coefficients in ascending powers.
        double v = 0.0;
        for (auto c = mech.coeffs.rbegin(); c != mech.coeffs.rend(); ++c)
          v = v * xs[i] + *c;
        ys[i] = v;
      }
      break;
    case MechanismKind::Reciprocal: {
      if (mech.coeffs.empty())
        throw InvalidArgument("reciprocal mechanism needs a numerator");
      const double a = mech.coeffs[0];
      const double b = mech.coeffs.size() > 1 ? mech.coeffs[1] : reciprocal_shift(xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] + b;
        if (std::fabs(d) < 1e-6)
          throw SingularMechanism("reciprocal denominator vanishes at x=" +
                                  std::to_string(xs[i]));
        ys[i] = a / d;
      }
      break;
    }
  }
  return ys;
}

double non_additive_noise(double x, double nu, double z1, double z2) {
  const double two_pi = 2.0 * std::numbers::pi;
  return z1 * std::fabs(std::sin(two_pi * nu * x)) +
         z2 * std::fabs(std::sin(two_pi * (10.0 * nu) * x)) / 4.0;
}

std::vector<double> add_noise(NoiseKind kind, std::span<const double> xs,
                              std::span<const double> ys0, Rng& rng) {
  if (xs.size() != ys0.size()) throw InvalidArgument("xs and ys differ in length");
  std::vector<double> ys(ys0.begin(), ys0.end());
  if (xs.empty()) return ys;
  const double half_max = *std::max_element(xs.begin(), xs.end()) / 2.0;
  switch (kind) {
    case NoiseKind::AdditiveUniform: {
      const double t = rng.uniform(1.0, half_max);
      for (auto& y : ys) y += rng.uniform(-t, t);
      break;
    }
    case NoiseKind::AdditiveGaussian: {
      const double s = rng.uniform(1.0, half_max);
      for (auto& y : ys) y += rng.normal(0.0, s);
      break;
    }
    case NoiseKind::NonAdditive: {
      const double nu = rng.uniform(0.25, 1.1);
      for (std::size_t i = 0; i < ys.size(); ++i) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        ys[i] += non_additive_noise(xs[i], nu, z1, z2);
      }
      break;
    }
  }
  return ys;
}

GeneratedPair gen_pair(const GenSpec& spec) {
  if (spec.n < 3) throw InvalidArgument("need n >= 3");
  Rng rng(spec.seed);
  GeneratedPair out;
  out.pair.x = gen_cause(spec.cause, spec.n, rng);
  Mechanism mech = spec.mechanism;
  if (mech.kind == MechanismKind::Reciprocal && mech.coeffs.size() == 1)
    mech.coeffs.push_back(reciprocal_shift(out.pair.x));
  const auto ys0 = apply_mechanism(mech, out.pair.x);
  out.pair.y = add_noise(spec.noise, out.pair.x, ys0, rng);
  out.pair.name = default_name(spec);
  out.truth = Decision::XtoY;
  return out;
}

std::string_view to_string(CauseKind kind) {
  switch (kind) {
    case CauseKind::Uniform: return "u";
    case CauseKind::SubGaussian: return "g";
    case CauseKind::Binomial: return "b";
    case CauseKind::Poisson: return "p";
    case CauseKind::EquidistantK: return "ek";
    case CauseKind::Gaussian: return "n";
  }
  return "?";
}

std::string_view to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::Linear: return "linear";
    case MechanismKind::Cubic: return "cubic";
    case MechanismKind::Reciprocal: return "reciprocal";
  }
  return "?";
}

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::AdditiveUniform: return "u";
    case NoiseKind::AdditiveGaussian: return "g";
    case NoiseKind::NonAdditive: return "n";
  }
  return "?";
}

std::optional<CauseKind> parse_cause(std::string_view code) {
  for (auto k : {CauseKind::Uniform, CauseKind::SubGaussian, CauseKind::Binomial,
                 CauseKind::Poisson, CauseKind::EquidistantK, CauseKind::Gaussian})
    if (to_string(k) == code) return k;
  return std::nullopt;
}

std::optional<MechanismKind> parse_mechanism(std::string_view code) {
  for (auto k : {MechanismKind::Linear, MechanismKind::Cubic, MechanismKind::Reciprocal})
    if (to_string(k) == code) return k;
  return std::nullopt;
}

std::optional<NoiseKind> parse_noise(std::string_view code) {
  for (auto k : {NoiseKind::AdditiveUniform, NoiseKind::AdditiveGaussian,
                 NoiseKind::NonAdditive})
    if (to_string(k) == code) return k;
  return std::nullopt;
}

std::string default_name(const GenSpec& spec) {
  std::string name(to_string(spec.cause.kind));
  if (spec.cause.kind == CauseKind::EquidistantK) name += std::to_string(spec.cause.k);
  name += "_";
  name += to_string(spec.mechanism.kind);
  name += "_";
  name += to_string(spec.noise);
  name += "_n" + std::to_string(spec.n) + "_s" + std::to_string(spec.seed);
  return name;
}

}  // namespace slope
