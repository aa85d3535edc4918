#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "effdim/dimension.hpp"
#include "effdim/errors.hpp"
#include "oracles.hpp"

namespace effdim::dimension {
namespace {

using spectral::polynomial_spectrum;
using spectral::Spectrum;

double exact(double beta, double b, double lambda, double tol = constants::kDefaultEffDimTol) {
  return effective_dimension_exact(polynomial_spectrum(beta, b, 1), lambda, tol).value;
}

TEST(EffectiveDimension, SingleStoredEigenvalue) {
  const auto r = effective_dimension_exact(Spectrum({1.0}), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(r.value, 0.5);
  EXPECT_EQ(r.truncation_error_bound, 0.0);
  EXPECT_EQ(r.terms_summed, 1u);
}

TEST(EffectiveDimension, StoredSpectrumWithoutModelSumsOnlyStoredValues) {
  const auto r = effective_dimension_exact(Spectrum({4.0, 1.0, 0.25}), 1.0);
  EXPECT_DOUBLE_EQ(r.value, 0.8 + 0.5 + 0.2);
  EXPECT_EQ(r.truncation_error_bound, 0.0);
}

TEST(EffectiveDimension, FigureCaseMatchesClosedFormAndBruteForce) {
  // beta / (beta + lambda n^2) = a^2 / (a^2 + n^2) with a^2 = beta / lambda = 100.
  const auto r = effective_dimension_exact(polynomial_spectrum(0.1, 2.0, 1), 1e-3, 1e-6);
  const double closed = testing::coth_series(10.0);
  EXPECT_NEAR(closed, 15.207963267948966, 1e-13);
  EXPECT_NEAR(r.value, closed, 1e-10);
  const auto brute = testing::brute_force_effective_dimension(0.1, 2.0, 1e-3, 10'000'000);
  EXPECT_LT(brute.upper - brute.lower, 1e-9);
  EXPECT_NEAR(r.value, brute.mid(), 1e-9);
  EXPECT_LE(r.truncation_error_bound, 1e-6);
}

TEST(EffectiveDimension, UnitCase) {
  // (pi coth(pi) - 1) / 2
  EXPECT_NEAR(exact(1.0, 2.0, 1.0), 1.0766740474685812, 1e-12);
  EXPECT_NEAR(exact(1.0, 2.0, 1.0), testing::coth_series(1.0), 1e-12);
}

TEST(EffectiveDimension, OtherExponentsMatchHighPrecisionSums) {
  // Frozen from 30-digit series summation.
  EXPECT_NEAR(exact(1.0, 3.0, 1e-3), 11.591987428235694, 1e-9);
  EXPECT_NEAR(exact(2.0, 1.5, 1e-2), 82.208215233075832, 1e-9);
}

TEST(EffectiveDimension, AllTailBranchesAgreeWithClosedForm) {
  // a = sqrt(beta / lambda) spans the three splitting regimes.
  for (double a : {0.01, 3.0, 100.0, 499.0, 700.0, 1000.0, 1999.0, 2500.0, 1e4, 1e6}) {
    const double lambda = 1.0 / (a * a);
    const double value = exact(1.0, 2.0, lambda);
    EXPECT_NEAR(value, testing::coth_series(a), 1e-9 * std::max(1.0, value)) << "a=" << a;
  }
}

TEST(EffectiveDimension, BracketContainsBruteForceNearBOne) {
  struct Case {
    double beta, b, lambda;
  };
  for (const auto& c : {Case{1.0, 1.2, 0.1}, Case{0.5, 1.5, 1e-3}, Case{3.0, 4.0, 1e-5}, Case{1.0, 12.0, 1e-6}}) {
    const auto r = effective_dimension_exact(polynomial_spectrum(c.beta, c.b, 1), c.lambda);
    const auto brute = testing::brute_force_effective_dimension(c.beta, c.b, c.lambda, 2'000'000);
    const double slack = 1e-9 + (brute.upper - brute.lower);
    EXPECT_GE(brute.upper + slack, r.value) << c.b;
    EXPECT_LE(brute.lower - slack, r.value + r.truncation_error_bound) << c.b;
  }
}

TEST(EffectiveDimension, RejectsBadArguments) {
  const auto s = polynomial_spectrum(1.0, 2.0, 4);
  EXPECT_THROW(effective_dimension_exact(s, 0.0, 1e-9), ValidationError);
  EXPECT_THROW(effective_dimension_exact(s, -1.0, 1e-9), ValidationError);
  EXPECT_THROW(effective_dimension_exact(s, 1.0, 0.0), ValidationError);
}

TEST(EffectiveDimension, NonincreasingInLambdaProperty) {
  testing::Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const double beta = gen.log_uniform(1e-3, 10.0);
    const double b = gen.uniform(1.05, 20.0);
    const double lambda = gen.log_uniform(1e-6, 1.0);
    EXPECT_GE(exact(beta, b, lambda) + 1e-9, exact(beta, b, lambda * 1.3));
  }
}

TEST(CorrectedBound, FrozenValues) {
  EXPECT_NEAR(corrected_bound(0.1, 2.0, 1e-3), 15.707963267948966, 1e-12);
  EXPECT_NEAR(corrected_bound(1.0, 3.0, 1e-3), 12.091995761561452, 1e-12);
  EXPECT_NEAR(corrected_bound(1.0, 2.0, 1.0), std::numbers::pi / 2.0, 1e-15);
  EXPECT_THROW(corrected_bound(1.0, INFINITY, 1.0), ValidationError);
  EXPECT_THROW(corrected_bound(1.0, 2.0, 0.0), ValidationError);
}

TEST(ClaimedBound, FrozenValues) {
  EXPECT_NEAR(claimed_bound(0.1, 2.0, 1e-3), 6.3245553203367587, 1e-12);
  EXPECT_NEAR(claimed_bound(1.0, 3.0, 1e-3), 15.0, 1e-12);
  EXPECT_DOUBLE_EQ(claimed_bound(1.0, 2.0, 1.0), 2.0);
  EXPECT_THROW(claimed_bound(1.0, 1.0, 1.0), ValidationError);
}

TEST(IntegralValue, MatchesQuadrature) {
  EXPECT_NEAR(integral_value(1.0, 2.0), std::numbers::pi / 2.0, 1e-15);
  EXPECT_NEAR(integral_value(1.0, 4.0), 1.1107207345395916, 1e-14);
  EXPECT_NEAR(integral_value(0.1, 2.0), 4.9672941328980506, 1e-13);
  for (double beta : {0.05, 1.0, 7.0}) {
    for (double b : {1.3, 2.0, 6.5}) {
      const double q = testing::integral_by_quadrature(beta, b);
      EXPECT_NEAR(integral_value(beta, b) / q, 1.0, 1e-8) << beta << ' ' << b;
    }
  }
  EXPECT_THROW(integral_value(1.0, 1.0), ValidationError);
}

TEST(WrongInequalityGap, SignsAndThreshold) {
  EXPECT_NEAR(wrong_inequality_gap(0.1, 2.0), 2.9672941328980506, 1e-12);
  EXPECT_NEAR(wrong_inequality_gap(1.0, 2.0), -0.42920367320510338, 1e-12);
  const double threshold = std::pow(std::numbers::pi / 4.0, 2.0);
  EXPECT_NEAR(wrong_inequality_gap(threshold, 2.0), 0.0, 1e-10);
}

TEST(CounterexampleThreshold, BisectionMatchesClosedFormProperty) {
  testing::Gen gen(17);
  for (int trial = 0; trial < 200; ++trial) {
    const double b = gen.uniform(1.01, 5.0);
    const double closed = counterexample_threshold(b);
    const double bisected = counterexample_threshold_bisection(b);
    EXPECT_NEAR(bisected / closed, 1.0, 1e-8) << "b=" << b;
    // Every beta below the threshold violates the historical inequality.
    EXPECT_GT(wrong_inequality_gap(closed * gen.uniform(0.01, 0.999), b), 0.0);
    EXPECT_LT(wrong_inequality_gap(closed * gen.uniform(1.001, 10.0), b), 0.0);
  }
  EXPECT_NEAR(counterexample_threshold(2.0), 0.61685027506808491, 1e-14);
  EXPECT_NEAR(counterexample_threshold_bisection(1.5), 0.52386596251856584, 1e-12);
}

TEST(Bounds, DominanceTightnessAndIdentityProperty) {
  testing::Gen gen(23);
  for (int trial = 0; trial < 300; ++trial) {
    const double beta = gen.log_uniform(1e-3, 10.0);
    const double b = gen.uniform(1.01, 20.0);
    const double lambda = gen.log_uniform(1e-6, 1.0);
    const double n = exact(beta, b, lambda);
    const double upper = corrected_bound(beta, b, lambda);
    EXPECT_LE(n, upper + 1e-9);
    EXPECT_LE(upper - n, 1.0 + 1e-9);
    // Change of variables: Q lambda^{-1/b} lambda^{1/b} = beta * integral.
    EXPECT_NEAR(upper * std::pow(lambda, 1.0 / b) / (beta * integral_value(beta, b)), 1.0, 1e-10);
  }
}

TEST(BoundComparisonTable, FigureAndUnitRows) {
  const std::vector<double> figure_grid = {1e-3};
  const auto rows = bound_comparison_table(0.1, 2.0, figure_grid);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].exact, 15.208, 1e-3);
  EXPECT_NEAR(rows[0].corrected, 15.708, 1e-3);
  EXPECT_NEAR(rows[0].claimed, 6.325, 1e-3);
  EXPECT_LT(rows[0].claimed, rows[0].exact);
  EXPECT_LT(rows[0].exact, rows[0].corrected);

  const std::vector<double> unit_grid = {1.0};
  const auto unit = bound_comparison_table(1.0, 2.0, unit_grid);
  EXPECT_NEAR(unit[0].exact, 1.0766740474685812, 1e-9);
  EXPECT_LT(unit[0].exact, unit[0].corrected);
  EXPECT_LT(unit[0].corrected, unit[0].claimed);

  EXPECT_THROW(bound_comparison_table(1.0, 2.0, std::vector<double>{}), ValidationError);
}

TEST(LogGrid, EndpointsAndSpacing) {
  const auto grid = log_grid(1e-6, 1.0, 7);
  ASSERT_EQ(grid.size(), 7u);
  EXPECT_EQ(grid.front(), 1e-6);
  EXPECT_EQ(grid.back(), 1.0);
  EXPECT_NEAR(grid[3], 1e-3, 1e-15);
  EXPECT_EQ(log_grid(0.5, 2.0, 1), std::vector<double>{0.5});
  EXPECT_THROW(log_grid(0.0, 1.0, 3), ValidationError);
  EXPECT_THROW(log_grid(1.0, 0.5, 3), ValidationError);
}

}  // namespace
}  // namespace effdim::dimension
