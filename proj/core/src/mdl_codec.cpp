#include "slope/mdl_codec.hpp"

#include <cmath>
#include <numbers>

#include "slope/error.hpp"

namespace slope {

double int_code_len(std::uint64_t z) {
  if (z < 1) throw InvalidArgument("L_N is defined for z >= 1");
  double bits = std::log2(kRissanenC0);
  double term = std::log2(static_cast<double>(z));
  while (term > 0.0) {
    bits += term;
    term = std::log2(term);
  }
  return bits;
}

namespace {

double pow10(int s) { return std::pow(10.0, static_cast<double>(s)); }

// |phi| * 10^s, with a relative slack so values that are integers up to
// floating noise (2.0000000000001 * 1000) do not round up a full unit.
double shifted_digits(double magnitude, int s) {
  const double scaled = magnitude * pow10(s);
  return std::ceil(scaled * (1.0 - 1e-12));
}

}  // namespace

int param_shift(double phi, int precision) {
  const double mag = std::fabs(phi);
  if (mag == 0.0 || !std::isfinite(mag))
    throw InvalidArgument("shift is defined for finite nonzero parameters");
  const double bound = pow10(precision);
  int s = precision - static_cast<int>(std::floor(std::log10(mag)));
  while (mag * pow10(s) < bound * (1.0 - 1e-12)) ++s;
  while (mag * pow10(s - 1) >= bound * (1.0 - 1e-12)) --s;
  return s;
}

double round_param(double phi, int precision) {
  if (std::fabs(phi) < 1e-12 || !std::isfinite(phi)) return 0.0;
  const int s = param_shift(phi, precision);
  const double digits = shifted_digits(std::fabs(phi), s);
  const double value = s >= 0 ? digits / pow10(s) : digits * pow10(-s);
  return std::copysign(value, phi);
}

double param_code_len(double phi, int precision) {
  if (phi == 0.0) return 1.0;
  const int s = param_shift(phi, precision);
  const double shift_bits =
      s >= 0 ? int_code_len(static_cast<std::uint64_t>(s) + 1)
             : int_code_len(static_cast<std::uint64_t>(-s) + 1) + 1.0;
  const double digits = shifted_digits(std::fabs(phi), s);
  return shift_bits + int_code_len(static_cast<std::uint64_t>(digits)) + 1.0;
}

double function_code_len(std::span<const double> coeffs, int precision) {
  double bits = 0.0;
  for (double c : coeffs) bits += param_code_len(c, precision);
  return bits;
}

double function_code_len(const FittedFunction& fn, int precision) {
  return function_code_len(fn.coeffs, precision);
}

double log2_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw InvalidArgument("binomial with k > n");
  if (k == 0 || k == n) return 0.0;
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return (std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
          std::lgamma(nn - kk + 1.0)) /
         std::numbers::ln2;
}

double model_code_len(std::size_t n_locals, std::size_t distinct_x,
                      double param_bits, const EncodingConfig& cfg) {
  if (n_locals > distinct_x)
    throw InvalidModel("more local functions than distinct source values");
  const double class_bits = std::log2(static_cast<double>(cfg.num_classes));
  double bits = int_code_len(1 + n_locals) + class_bits + param_bits;
  if (n_locals > 0)
    bits += log2_binomial(distinct_x - 1, n_locals - 1) + class_bits;
  return bits;
}

double gaussian_data_code_len(std::size_t n_f, double sigma_hat, double tau) {
  if (n_f == 0) return 0.0;
  const double nf = static_cast<double>(n_f);
  return nf / 2.0 *
             (1.0 / std::numbers::ln2 +
              std::log2(2.0 * std::numbers::pi * sigma_hat * sigma_hat)) -
         nf * std::log2(tau);
}

double data_code_len(std::span<const std::pair<std::size_t, double>> functions,
                     double tau) {
  double bits = 0.0;
  for (const auto& [n_f, sigma] : functions)
    bits += gaussian_data_code_len(n_f, sigma, tau);
  return bits;
}

double marginal_code_len(std::size_t n, double tau) {
  return -static_cast<double>(n) * std::log2(tau);
}

}  // namespace slope
