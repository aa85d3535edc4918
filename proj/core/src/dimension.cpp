#include "effdim/dimension.hpp"

#include <array>
#include <cmath>
#include <string>

#include "effdim/errors.hpp"

namespace effdim::dimension {

using detail::require;

namespace {

void require_lambda(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive, got " + std::to_string(lambda));
}

void require_beta(double beta) {
  require(std::isfinite(beta) && beta > 0.0, "beta must be positive, got " + std::to_string(beta));
}

void require_finite_b(double b) {
  require(std::isfinite(b) && b > 1.0, "b must satisfy 1 < b < infinity, got " + std::to_string(b));
}

// Compensated (Neumaier) summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Integral of 1 / (1 + u^b) over [u0, infinity), for u0 outside (1/2, 2).
// Both branches are alternating series with ratio at most 2^{-b} < 1/2.
double unit_tail_integral(double u0, double b) {
  constexpr int kMaxTerms = 400;
  if (u0 >= 2.0) {
    const double ratio = std::pow(u0, -b);
    double power = u0 * ratio;  // u0^{1-b}
    CompensatedSum sum;
    double sign = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
      const double term = power / (b * (k + 1) - 1.0);
      sum.add(sign * term);
      if (term <= 1e-18 * std::abs(sum.value())) break;
      power *= ratio;
      sign = -sign;
    }
    return sum.value();
  }
  // integral over [0, u0] = sum_k (-1)^k u0^{bk+1} / (bk + 1)
  const double ratio = std::pow(u0, b);
  double power = u0;
  CompensatedSum head;
  double sign = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double term = power / (b * k + 1.0);
    head.add(sign * term);
    if (term <= 1e-18 * std::abs(head.value())) break;
    power *= ratio;
    sign = -sign;
  }
  return spectral::pi_over_sin(b) - head.value();
}

// Bernoulli numbers B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulliEven = {
    1.0 / 6.0,       -1.0 / 30.0,     1.0 / 42.0,   -1.0 / 30.0,          5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0,
};

// Taylor coefficients a_j = f^{(j)}(x0) / j! of f(x) = 1 / (1 + (x/s)^b),
// computed by power-series arithmetic: (x0 + h)^b expands binomially and the
// reciprocal series follows from the recurrence for 1 / (1 + S(h)).
template <std::size_t Order>
std::array<double, Order> decay_taylor_coefficients(double x0, double s, double b) {
  const double s0 = std::pow(x0 / s, b);
  const double weight = 1.0 / (1.0 + 1.0 / s0);
  // e_j = binom(b, j) x0^{-j}
  std::array<double, Order> e{};
  e[0] = 1.0;
  for (std::size_t j = 1; j < Order; ++j) {
    e[j] = e[j - 1] * (b - static_cast<double>(j) + 1.0) / (static_cast<double>(j) * x0);
  }
  std::array<double, Order> d{};
  d[0] = 1.0 / (1.0 + s0);
  for (std::size_t j = 1; j < Order; ++j) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= j; ++i) acc += e[i] * d[j - i];
    d[j] = -weight * acc;
  }
  return d;
}

// Splitting point for the direct head sum. The closed-form tail integral is
// evaluated at u0 = split / s, which must stay outside (1/2, 2).
double choose_split(double s) {
  if (s >= 2000.0 || s <= 500.0) return 1000.0;
  return 4000.0;
}

EffDimResult decay_model_dimension(const spectral::DecayModel& model, double lambda, double tol) {
  const double b = model.b;
  // f(x) = beta / (beta + lambda x^b) = 1 / (1 + (x / s)^b)
  const double s = std::pow(model.beta / lambda, 1.0 / b);
  const double split = choose_split(s);
  const auto f = [&](double x) { return model.beta / (model.beta + lambda * std::pow(x, b)); };

  CompensatedSum sum;
  const auto head_terms = static_cast<std::size_t>(split) - 1;
  for (std::size_t n = 1; n <= head_terms; ++n) sum.add(f(static_cast<double>(n)));

  // sum_{n >= split} f(n) = int_split^inf f + f(split)/2 - sum_k B_2k/(2k)! f^{(2k-1)}(split) + R
  if (s > 0.0) sum.add(s * unit_tail_integral(split / s, b));
  sum.add(0.5 * f(split));

  constexpr std::size_t kOrder = 2 * kBernoulliEven.size();
  const auto taylor = decay_taylor_coefficients<kOrder>(split, s, b);
  double omitted = 0.0;
  double previous = INFINITY;
  bool converged = false;
  for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
    // B_2k / (2k)! * f^{(2k-1)} = B_2k / (2k) * a_{2k-1}
    const double term = kBernoulliEven[k - 1] / (2.0 * static_cast<double>(k)) * taylor[2 * k - 1];
    if (std::abs(term) >= previous) {
      // Asymptotic series started diverging; stop before this term.
      omitted = std::abs(term);
      converged = true;
      break;
    }
    if (std::abs(term) <= 1e-3 * tol) {
      omitted = std::abs(term);
      converged = true;
      break;
    }
    sum.add(-term);
    previous = std::abs(term);
  }
  if (!converged) omitted = previous;
  if (!(omitted <= tol)) {
    throw NumericalError("effective dimension tail did not reach tolerance " + std::to_string(tol) +
                         " (estimated error " + std::to_string(omitted) + ")");
  }

  EffDimResult result;
  result.value = sum.value() - omitted;
  result.truncation_error_bound = 2.0 * omitted;
  result.terms_summed = head_terms;
  return result;
}

}  // namespace

EffDimResult effective_dimension_exact(const spectral::Spectrum& spectrum, double lambda, double tol) {
  require_lambda(lambda);
  require(std::isfinite(tol) && tol > 0.0, "tol must be positive, got " + std::to_string(tol));
  if (const auto& model = spectrum.decay_model()) {
    require_finite_b(model->b);
    return decay_model_dimension(*model, lambda, tol);
  }
  CompensatedSum sum;
  for (double t : spectrum.eigenvalues()) sum.add(t / (t + lambda));
  return EffDimResult{sum.value(), 0.0, spectrum.size()};
}

double corrected_bound(double beta, double b, double lambda) {
  require_beta(beta);
  require_finite_b(b);
  require_lambda(lambda);
  return spectral::q_constant(beta, spectral::DecayExponent::finite(b)) * std::pow(lambda, -1.0 / b);
}

double claimed_bound(double beta, double b, double lambda) {
  require_beta(beta);
  require_finite_b(b);
  require_lambda(lambda);
  return beta * b / (b - 1.0) * std::pow(lambda, -1.0 / b);
}

double integral_value(double beta, double b) {
  require_beta(beta);
  require_finite_b(b);
  return std::pow(beta, (1.0 - b) / b) * spectral::pi_over_sin(b);
}

double wrong_inequality_gap(double beta, double b) { return integral_value(beta, b) - b / (b - 1.0); }

double counterexample_threshold(double b) {
  require_finite_b(b);
  return std::pow((b - 1.0) / b * spectral::pi_over_sin(b), b / (b - 1.0));
}

double counterexample_threshold_bisection(double b) {
  require_finite_b(b);
  // The gap is strictly decreasing in beta; bisect on log(beta).
  const auto gap = [b](double log_beta) { return wrong_inequality_gap(std::exp(log_beta), b); };
  double lo = -1.0;
  double hi = 1.0;
  while (gap(lo) <= 0.0) {
    lo *= 2.0;
    if (lo < -700.0) throw NumericalError("counterexample threshold below representable range");
  }
  while (gap(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 700.0) throw NumericalError("counterexample threshold above representable range");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

std::vector<BoundRow> bound_comparison_table(double beta, double b, std::span<const double> lambda_grid,
                                             double tol) {
  require(!lambda_grid.empty(), "lambda grid must be nonempty");
  const auto spectrum = spectral::polynomial_spectrum(beta, b, 1);
  std::vector<BoundRow> rows;
  rows.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    rows.push_back(BoundRow{lambda, effective_dimension_exact(spectrum, lambda, tol).value,
                            corrected_bound(beta, b, lambda), claimed_bound(beta, b, lambda)});
  }
  return rows;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  require(std::isfinite(lo) && lo > 0.0, "grid lower end must be positive");
  require(std::isfinite(hi) && hi >= lo, "grid upper end must be at least the lower end");
  require(points >= 1, "grid must have at least one point");
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(log_lo + step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace effdim::dimension
