#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace slope {

/// The fixed set of regression function classes. Enumeration order is the
/// tie-breaking order.
enum class FunctionClass { Linear = 0, Quadratic, Cubic, Exponential, Reciprocal };

inline constexpr std::array<FunctionClass, 5> kAllClasses = {
    FunctionClass::Linear, FunctionClass::Quadratic, FunctionClass::Cubic,
    FunctionClass::Exponential, FunctionClass::Reciprocal};

std::size_t basis_size(FunctionClass cls);
std::string_view to_string(FunctionClass cls);
std::optional<FunctionClass> parse_function_class(std::string_view name);

/// Linear (1,x), Quadratic (1,x,x^2), Cubic (1,x,x^2,x^3),
/// Exponential (1,e^x), Reciprocal (1,1/(1+x)).
std::vector<double> design_row(FunctionClass cls, double x);

struct FittedFunction {
  FunctionClass cls = FunctionClass::Linear;
  std::vector<double> coeffs;  // rounded to encoding precision
  std::size_t n_f = 0;
  double sigma_hat = 0.0;

  double operator()(double x) const;
};

/// Evaluates sum_j coeffs[j] * basis_j(x).
double evaluate(FunctionClass cls, std::span<const double> coeffs, double x);

/// Least-squares coefficients without rounding. Rank-deficient problems get
/// the minimum-norm solution. Throws TooFewPoints when there are fewer points
/// than basis functions and SingularBasis if the basis is not finite at
/// some x.
std::vector<double> solve_least_squares(FunctionClass cls,
                                        std::span<const double> xs,
                                        std::span<const double> ys);

double sum_squared_error(FunctionClass cls, std::span<const double> coeffs,
                         std::span<const double> xs,
                         std::span<const double> ys);

/// Zero-mean maximum-likelihood residual scale, floored.
double residual_sigma(double sse, std::size_t n_f, double floor);
double residual_sigma(const FittedFunction& fn, std::span<const double> xs,
                      std::span<const double> ys, double floor);

/// Fits `cls` by least squares, rounds coefficients to `precision` digits,
/// then sets n_f and sigma_hat (floored at `sigma_floor`) from the rounded
/// residuals.
FittedFunction fit_ols(FunctionClass cls, std::span<const double> xs,
                       std::span<const double> ys, int precision,
                       double sigma_floor);

/// `m` equally spaced points from -t to t inclusive.
std::vector<double> local_grid(std::size_t m, double t);

}  // namespace slope
