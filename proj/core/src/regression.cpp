#include "slope/regression.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "slope/error.hpp"
#include "slope/mdl_codec.hpp"

namespace slope {

std::size_t basis_size(FunctionClass cls) {
  switch (cls) {
    case FunctionClass::Linear: return 2;
    case FunctionClass::Quadratic: return 3;
    case FunctionClass::Cubic: return 4;
    case FunctionClass::Exponential: return 2;
    case FunctionClass::Reciprocal: return 2;
  }
  return 0;
}

std::string_view to_string(FunctionClass cls) {
  switch (cls) {
    case FunctionClass::Linear: return "linear";
    case FunctionClass::Quadratic: return "quadratic";
    case FunctionClass::Cubic: return "cubic";
    case FunctionClass::Exponential: return "exponential";
    case FunctionClass::Reciprocal: return "reciprocal";
  }
  return "?";
}

std::optional<FunctionClass> parse_function_class(std::string_view name) {
  for (auto cls : kAllClasses)
    if (to_string(cls) == name) return cls;
  return std::nullopt;
}

namespace {

// Writes the basis of `cls` at x into out[0..basis_size).
inline void fill_row(FunctionClass cls, double x, double* out) {
  switch (cls) {
    case FunctionClass::Linear:
      out[0] = 1.0; out[1] = x;
      break;
    case FunctionClass::Quadratic:
      out[0] = 1.0; out[1] = x; out[2] = x * x;
      break;
    case FunctionClass::Cubic:
      out[0] = 1.0; out[1] = x; out[2] = x * x; out[3] = x * x * x;
      break;
    case FunctionClass::Exponential:
      out[0] = 1.0; out[1] = std::exp(x);
      break;
    case FunctionClass::Reciprocal:
      out[0] = 1.0; out[1] = 1.0 / (1.0 + x);
      break;
  }
}

}  // namespace

std::vector<double> design_row(FunctionClass cls, double x) {
  std::vector<double> row(basis_size(cls));
  fill_row(cls, x, row.data());
  return row;
}

double evaluate(FunctionClass cls, std::span<const double> coeffs, double x) {
  double row[4];
  fill_row(cls, x, row);
  double v = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) v += coeffs[j] * row[j];
  return v;
}

double FittedFunction::operator()(double x) const {
  return evaluate(cls, coeffs, x);
}

std::vector<double> solve_least_squares(FunctionClass cls,
                                        std::span<const double> xs,
                                        std::span<const double> ys) {
  const auto k = basis_size(cls);
  const auto n = xs.size();
  if (n != ys.size()) throw InvalidArgument("xs and ys differ in length");
  if (n < k)
    throw TooFewPoints(std::string(to_string(cls)) + " needs " +
                       std::to_string(k) + " points, got " + std::to_string(n));

  Eigen::MatrixXd design(n, k);
  Eigen::VectorXd target(n);
  double row[4];
  for (std::size_t i = 0; i < n; ++i) {
    fill_row(cls, xs[i], row);
    for (std::size_t j = 0; j < k; ++j) {
      if (!std::isfinite(row[j]))
        throw SingularBasis(std::string(to_string(cls)) +
                            " basis is not finite at x=" + std::to_string(xs[i]));
      design(i, j) = row[j];
    }
    target(i) = ys[i];
  }

  // Column scaling keeps the rank decision independent of basis magnitude.
  Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j)
    if (scale(j) == 0.0) scale(j) = 1.0;
  Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(scaled);
  cod.setThreshold(1e-12);
  Eigen::VectorXd beta = cod.solve(target).cwiseQuotient(scale);

  std::vector<double> coeffs(k);
  for (std::size_t j = 0; j < k; ++j) coeffs[j] = beta(j);
  return coeffs;
}

double sum_squared_error(FunctionClass cls, std::span<const double> coeffs,
                         std::span<const double> xs,
                         std::span<const double> ys) {
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - evaluate(cls, coeffs, xs[i]);
    sse += r * r;
  }
  return sse;
}

double residual_sigma(double sse, std::size_t n_f, double floor) {
  if (n_f == 0) return floor;
  return std::max(std::sqrt(sse / static_cast<double>(n_f)), floor);
}

double residual_sigma(const FittedFunction& fn, std::span<const double> xs,
                      std::span<const double> ys, double floor) {
  return residual_sigma(sum_squared_error(fn.cls, fn.coeffs, xs, ys),
                        xs.size(), floor);
}

FittedFunction fit_ols(FunctionClass cls, std::span<const double> xs,
                       std::span<const double> ys, int precision,
                       double sigma_floor) {
  FittedFunction fn;
  fn.cls = cls;
  fn.coeffs = solve_least_squares(cls, xs, ys);
  for (double& c : fn.coeffs) c = round_param(c, precision);
  fn.n_f = xs.size();
  fn.sigma_hat = residual_sigma(fn, xs, ys, sigma_floor);
  return fn;
}

std::vector<double> local_grid(std::size_t m, double t) {
  std::vector<double> grid(m);
  if (m == 1) {
    grid[0] = 0.0;
    return grid;
  }
  const double step = 2.0 * t / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i)
    grid[i] = -t + step * static_cast<double>(i);
  grid[m - 1] = t;
  return grid;
}

}  // namespace slope
