#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace effdim::testing {

struct QuadResult {
  double value;
  double error;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [a, b].
template <class F>
QuadResult gauss_kronrod_15(const F& f, double a, double b) {
  static constexpr std::array<double, 8> xgk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wgk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * wgk[7];
  double gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += wgk[j] * sum;
    if (j % 2 == 1) gauss += wg[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod quadrature on a finite interval: the
// subinterval with the largest error estimate is bisected until the summed
// error estimate falls below rel_tol * |integral| (or abs_tol).
template <class F>
QuadResult adaptive_integrate(const F& f, double a, double b, double rel_tol = 1e-13, double abs_tol = 1e-300,
                              std::size_t max_intervals = 20000) {
  struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& other) const { return error < other.error; }
  };
  std::priority_queue<Piece> heap;
  auto first = detail::gauss_kronrod_15(f, a, b);
  heap.push({a, b, first.value, first.error});
  double total = first.value;
  double error = first.error;
  while (error > std::max(abs_tol, rel_tol * std::abs(total)) && heap.size() < max_intervals) {
    const Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
  }
  // Re-sum to drop accumulated cancellation from the incremental updates.
  double value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err};
}

// Integral of 1 / (1 + u^b) over [u0, infinity) for u0 >= 0, b > 1: adaptive
// quadrature on [u0, max(u0,1)] directly and on [max(u0,1), U] in t = log u,
// plus the analytic tail U^{1-b} / (b - 1). U is chosen so the neglected next
// tail term U^{1-2b} / (2b - 1) is below 1e-15.
inline double unit_tail_by_quadrature(double u0, double b) {
  const auto g = [b](double u) { return 1.0 / (1.0 + std::pow(u, b)); };
  double total = 0.0;
  const double knee = std::max(u0, 1.0);
  if (u0 < 1.0) total += adaptive_integrate(g, u0, 1.0).value;
  const double upper = std::max(knee * 10.0, std::pow(1e15, 1.0 / (2.0 * b - 1.0)));
  const auto in_log = [b](double t) {
    const double u = std::exp(t);
    return u / (1.0 + std::pow(u, b));
  };
  total += adaptive_integrate(in_log, std::log(knee), std::log(upper)).value;
  total += std::pow(upper, 1.0 - b) / (b - 1.0);
  return total;
}

// Integral of 1 / (beta + tau^b) over [0, infinity), by quadrature after the
// substitution tau = beta^{1/b} u.
inline double integral_by_quadrature(double beta, double b) {
  return std::pow(beta, (1.0 - b) / b) * unit_tail_by_quadrature(0.0, b);
}

// sum_{n >= 1} a^2 / (a^2 + n^2) = (pi a coth(pi a) - 1) / 2
inline double coth_series(double a) {
  const double pi = 3.14159265358979323846;
  return 0.5 * (pi * a / std::tanh(pi * a) - 1.0);
}

struct Bracket {
  double lower;
  double upper;
  double mid() const { return 0.5 * (lower + upper); }
};

// Brute-force sum of beta / (beta + lambda n^b) over n = 1..n_max (Kahan), with
// the tail over n > n_max bracketed between the integrals from n_max + 1 and
// from n_max (the summand is decreasing).
inline Bracket brute_force_effective_dimension(double beta, double b, double lambda, std::size_t n_max) {
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double term = beta / (beta + lambda * std::pow(static_cast<double>(n), b)) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  const double scale = std::pow(beta / lambda, 1.0 / b);
  const double tail_upper = scale * unit_tail_by_quadrature(static_cast<double>(n_max) / scale, b);
  const double tail_lower = scale * unit_tail_by_quadrature(static_cast<double>(n_max + 1) / scale, b);
  return {sum + tail_lower, sum + tail_upper};
}

// Hand-rolled generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace effdim::testing
