#include "slope/regression.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "slope/error.hpp"
#include "slope/mdl_codec.hpp"

namespace slope {
namespace {

TEST(DesignRow, Bases) {
  EXPECT_EQ(design_row(FunctionClass::Linear, 0.5), (std::vector<double>{1, 0.5}));
  EXPECT_EQ(design_row(FunctionClass::Cubic, 1.0), (std::vector<double>{1, 1, 1, 1}));
  EXPECT_EQ(design_row(FunctionClass::Reciprocal, 0.0), (std::vector<double>{1, 1}));
  EXPECT_EQ(design_row(FunctionClass::Quadratic, 2.0), (std::vector<double>{1, 2, 4}));
  EXPECT_DOUBLE_EQ(design_row(FunctionClass::Exponential, 1.0)[1], std::exp(1.0));
}

TEST(DesignRow, BasisSizes) {
  EXPECT_EQ(basis_size(FunctionClass::Linear), 2u);
  EXPECT_EQ(basis_size(FunctionClass::Quadratic), 3u);
  EXPECT_EQ(basis_size(FunctionClass::Cubic), 4u);
  EXPECT_EQ(basis_size(FunctionClass::Exponential), 2u);
  EXPECT_EQ(basis_size(FunctionClass::Reciprocal), 2u);
  for (auto cls : kAllClasses)
    EXPECT_EQ(design_row(cls, 0.3).size(), basis_size(cls));
}

TEST(DesignRow, FiniteOnUnitInterval) {
  for (auto cls : kAllClasses)
    for (int i = 0; i <= 1000; ++i)
      for (double v : design_row(cls, i / 1000.0)) EXPECT_TRUE(std::isfinite(v));
}

TEST(FitOls, ExactLine) {
  std::vector<double> xs, ys;
  for (int i = 0; i < 20; ++i) {
    xs.push_back(i / 19.0);
    ys.push_back(2 * xs.back() + 1);
  }
  const auto raw = solve_least_squares(FunctionClass::Linear, xs, ys);
  EXPECT_LE(sum_squared_error(FunctionClass::Linear, raw, xs, ys), 1e-9);
  const auto fn = fit_ols(FunctionClass::Linear, xs, ys, 3, 0.01);
  EXPECT_EQ(fn.coeffs, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(fn.n_f, 20u);
  EXPECT_DOUBLE_EQ(fn.sigma_hat, 0.01);
}

TEST(FitOls, ConstantTarget) {
  const std::vector<double> xs{0, 0.25, 0.5, 0.75, 1}, ys(5, 0.7);
  const auto fn = fit_ols(FunctionClass::Linear, xs, ys, 3, 1e-3);
  EXPECT_EQ(fn.coeffs, (std::vector<double>{0.7, 0.0}));
}

TEST(FitOls, TooFewPoints) {
  const std::vector<double> xs{0, 1, 0.5}, ys{1, 2, 3};
  EXPECT_THROW(fit_ols(FunctionClass::Cubic, xs, ys, 3, 0.1), TooFewPoints);
  EXPECT_NO_THROW(fit_ols(FunctionClass::Quadratic, xs, ys, 3, 0.1));
}

TEST(FitOls, RankDeficientGivesMinimumNorm) {
  // Two distinct x values: cubic basis is rank 2.
  const std::vector<double> xs{0, 0, 1, 1, 1}, ys{1, 1.2, 3, 3.1, 2.9};
  const auto a = solve_least_squares(FunctionClass::Cubic, xs, ys);
  const auto b = solve_least_squares(FunctionClass::Cubic, xs, ys);
  EXPECT_EQ(a, b);
  const auto lin = solve_least_squares(FunctionClass::Linear, xs, ys);
  EXPECT_NEAR(sum_squared_error(FunctionClass::Cubic, a, xs, ys),
              sum_squared_error(FunctionClass::Linear, lin, xs, ys), 1e-9);
  for (double c : a) EXPECT_TRUE(std::isfinite(c));
}

TEST(FitOls, SingularReciprocalOnGrid) {
  // The 6-point grid over [-5,5] contains x = -1.
  const auto grid = local_grid(6, 5.0);
  const std::vector<double> ys{1, 2, 3, 4, 5, 6};
  EXPECT_THROW(fit_ols(FunctionClass::Reciprocal, grid, ys, 3, 0.1), SingularBasis);
}

// Perturbation oracle: no random nudge of the unrounded optimum lowers SSE.
TEST(FitOls, PerturbationsNeverImproveSse) {
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.1);
  for (auto cls : kAllClasses) {
    std::vector<double> xs(50), ys(50);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = unit(gen);
      ys[i] = std::sin(3 * xs[i]) + noise(gen);
    }
    const auto best = solve_least_squares(cls, xs, ys);
    const double base = sum_squared_error(cls, best, xs, ys);
    std::uniform_real_distribution<double> rel(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      auto c = best;
      for (auto& v : c) v += rel(gen) * std::max(1e-3 * std::fabs(v), 1e-3);
      EXPECT_GE(sum_squared_error(cls, c, xs, ys), base - 1e-12)
          << to_string(cls) << " trial " << trial;
    }
  }
}

TEST(FitOls, NestedClassesHaveOrderedSse) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(30), ys(30);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = unit(gen);
      ys[i] = unit(gen);
    }
    auto sse = [&](FunctionClass c) {
      return sum_squared_error(c, solve_least_squares(c, xs, ys), xs, ys);
    };
    const double lin = sse(FunctionClass::Linear);
    const double quad = sse(FunctionClass::Quadratic);
    const double cub = sse(FunctionClass::Cubic);
    EXPECT_LE(quad, lin + 1e-12);
    EXPECT_LE(cub, quad + 1e-12);
  }
}

TEST(FitOls, CoefficientsAreRoundedBeforeResiduals) {
  const std::vector<double> xs{0, 0.5, 1}, ys{0.123456, 0.5, 0.876544};
  const auto fn = fit_ols(FunctionClass::Linear, xs, ys, 3, 1e-9);
  for (double c : fn.coeffs) EXPECT_EQ(c, round_param(c, 3));
  EXPECT_DOUBLE_EQ(fn.sigma_hat, residual_sigma(fn, xs, ys, 1e-9));
}

TEST(ResidualSigma, ZeroMeanMle) {
  EXPECT_DOUBLE_EQ(residual_sigma(2.0, 2, 0.01), 1.0);  // residuals {-1, 1}
  EXPECT_DOUBLE_EQ(residual_sigma(0.0, 5, 0.01), 0.01);
  EXPECT_DOUBLE_EQ(residual_sigma(9.0, 3, 0.01), std::sqrt(3.0));  // {0, 0, 3}

  FittedFunction fn{FunctionClass::Linear, {0.0, 0.0}, 3, 0.0};
  const std::vector<double> xs{0, 0.5, 1}, ys{0, 0, 3};
  EXPECT_DOUBLE_EQ(residual_sigma(fn, xs, ys, 0.01), std::sqrt(3.0));
}

TEST(ResidualSigma, NeverBelowFloor) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double floor = u(gen) + 1e-9;
    EXPECT_GE(residual_sigma(u(gen) * u(gen), 1 + i % 7, floor), floor);
  }
}

TEST(LocalGrid, EquallySpaced) {
  EXPECT_EQ(local_grid(2, 5), (std::vector<double>{-5, 5}));
  EXPECT_EQ(local_grid(3, 5), (std::vector<double>{-5, 0, 5}));
  const auto g = local_grid(5, 1);
  const std::vector<double> expected{-1, -0.5, 0, 0.5, 1};
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_DOUBLE_EQ(g[i], expected[i]);
}

}  // namespace
}  // namespace slope
