#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "effdim/errors.hpp"
#include "effdim/spectral.hpp"
#include "oracles.hpp"

namespace effdim::spectral {
namespace {

TEST(PolynomialSpectrum, ProducesDecayRule) {
  const auto s = polynomial_spectrum(1.0, 2.0, 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s.eigenvalues()[0], 1.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues()[1], 0.25);
  EXPECT_DOUBLE_EQ(s.eigenvalues()[2], 1.0 / 9.0);
  ASSERT_TRUE(s.decay_model().has_value());
  EXPECT_EQ(s.decay_model()->beta, 1.0);
  EXPECT_EQ(s.decay_model()->b, 2.0);
}

TEST(PolynomialSpectrum, SmallCases) {
  EXPECT_DOUBLE_EQ(polynomial_spectrum(0.1, 2.0, 1).eigenvalues()[0], 0.1);
  const auto s = polynomial_spectrum(2.0, 3.0, 2);
  EXPECT_DOUBLE_EQ(s.eigenvalues()[0], 2.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues()[1], 0.25);
}

TEST(PolynomialSpectrum, RejectsInvalidParameters) {
  EXPECT_THROW(polynomial_spectrum(1.0, 1.0, 3), ValidationError);
  EXPECT_THROW(polynomial_spectrum(1.0, 0.5, 3), ValidationError);
  EXPECT_THROW(polynomial_spectrum(0.0, 2.0, 3), ValidationError);
  EXPECT_THROW(polynomial_spectrum(-1.0, 2.0, 3), ValidationError);
  EXPECT_THROW(polynomial_spectrum(1.0, 2.0, 0), ValidationError);
}

TEST(PolynomialSpectrum, NonincreasingAndMatchesRuleProperty) {
  testing::Gen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const double beta = gen.log_uniform(1e-4, 1e4);
    const double b = gen.uniform(1.0001, 30.0);
    const std::size_t n_max = gen.index(1, 400);
    const auto s = polynomial_spectrum(beta, b, n_max);
    const auto values = s.eigenvalues();
    for (std::size_t i = 0; i < values.size(); ++i) {
      EXPECT_GT(values[i], 0.0);
      if (i > 0) EXPECT_LE(values[i], values[i - 1]);
      const double expected = beta * std::pow(static_cast<double>(i + 1), -b);
      EXPECT_NEAR(values[i] / expected, 1.0, 1e-14);
    }
  }
}

TEST(Spectrum, ArbitraryValuesValidated) {
  EXPECT_NO_THROW(Spectrum({3.0, 2.0, 2.0, 1e-9}));
  EXPECT_THROW(Spectrum({1.0, 2.0}), ValidationError);
  EXPECT_THROW(Spectrum({1.0, 0.0}), ValidationError);
  EXPECT_THROW(Spectrum({1.0, -1.0}), ValidationError);
  EXPECT_THROW(Spectrum(std::vector<double>{}), ValidationError);
  EXPECT_FALSE(Spectrum({1.0}).decay_model().has_value());
}

TEST(DecayExponent, InfiniteIsExplicit) {
  const auto inf = DecayExponent::infinite();
  EXPECT_TRUE(inf.is_infinite());
  EXPECT_THROW((void)inf.value(), ValidationError);
  EXPECT_EQ(DecayExponent::finite(2.5).value(), 2.5);
  EXPECT_THROW(DecayExponent::finite(1.0), ValidationError);
  EXPECT_THROW(DecayExponent::finite(INFINITY), ValidationError);
}

TEST(QConstant, MatchesQuadratureOracle) {
  // Q(1, 2) = integral of 1 / (1 + u^2) over [0, inf)
  const double oracle = testing::unit_tail_by_quadrature(0.0, 2.0);
  EXPECT_NEAR(q_constant(1.0, DecayExponent::finite(2.0)), oracle, 1e-12);
  EXPECT_NEAR(q_constant(1.0, DecayExponent::finite(2.0)), std::numbers::pi / 2.0, 1e-15);
}

TEST(QConstant, FrozenValues) {
  // 0.1^{1/2} pi / 2, cross-checked by quadrature of 1 / (0.1 + tau^2) times 0.1.
  EXPECT_NEAR(q_constant(0.1, DecayExponent::finite(2.0)), 0.49672941328980506, 1e-15);
  EXPECT_NEAR(q_constant(0.1, DecayExponent::finite(2.0)), 0.1 * testing::integral_by_quadrature(0.1, 2.0), 1e-12);
  EXPECT_EQ(q_constant(5.0, DecayExponent::infinite()), 5.0);
}

TEST(QConstant, FiniteLimitTendsToOneNotBeta) {
  // The b = infinity convention (Q = beta) is deliberately not the finite-b limit.
  EXPECT_NEAR(q_constant(5.0, DecayExponent::finite(1e3)), 1.0, 1e-2);
  EXPECT_NEAR(q_constant(5.0, DecayExponent::finite(1e6)), 1.0, 1e-5);
  EXPECT_NE(q_constant(5.0, DecayExponent::infinite()), q_constant(5.0, DecayExponent::finite(1e9)));
}

TEST(QConstant, IncreasingInBeta) {
  testing::Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = DecayExponent::finite(gen.uniform(1.01, 50.0));
    const double beta = gen.log_uniform(1e-3, 1e3);
    EXPECT_LT(q_constant(beta, b), q_constant(beta * 1.5, b));
  }
}

TEST(QConstant, RejectsBadInput) {
  EXPECT_THROW(q_constant(0.0, DecayExponent::finite(2.0)), ValidationError);
  EXPECT_THROW(pi_over_sin(1.0), ValidationError);
}

TEST(PriorParams, ValidateNamesField) {
  PriorParams p;
  p.b = DecayExponent::finite(2.0);
  EXPECT_NO_THROW(validate(p));
  p.c = 2.5;
  try {
    validate(p);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("c must"), std::string::npos);
  }
  p.c = 1.0;
  p.alpha = 0.0;
  EXPECT_THROW(validate(p), ValidationError);
}

}  // namespace
}  // namespace effdim::spectral
