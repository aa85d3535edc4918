#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "effdim/constants.hpp"
#include "effdim/spectral.hpp"

namespace effdim::dimension {

// N(lambda) = sum_n t_n / (t_n + lambda), bracketed: the true value lies in
// [value, value + truncation_error_bound].
struct EffDimResult {
  double value = 0.0;
  double truncation_error_bound = 0.0;
  std::size_t terms_summed = 0;
};

// Exact effective dimension. Without a decay model only the stored eigenvalues
// are summed and the error bound is zero. With a decay model the full infinite
// series is evaluated: the head is summed directly and the tail is computed by
// Euler-Maclaurin summation against the closed-form tail integral.
EffDimResult effective_dimension_exact(const spectral::Spectrum& spectrum, double lambda,
                                       double tol = constants::kDefaultEffDimTol);

// Upper bound Q lambda^{-1/b}, Q = beta^{1/b} (pi/b) / sin(pi/b). Finite b only.
double corrected_bound(double beta, double b, double lambda);

// Historical bound (beta b / (b - 1)) lambda^{-1/b}. This bound is NOT valid in
// general (it fails for small beta); it is kept only as a reference curve.
double claimed_bound(double beta, double b, double lambda);

// Closed form of the integral of 1 / (beta + tau^b) over [0, infinity):
// beta^{(1-b)/b} (pi/b) / sin(pi/b).
double integral_value(double beta, double b);

// integral_value(beta, b) - b / (b - 1). Positive values are counterexamples to
// the historical inequality integral <= b / (b - 1).
double wrong_inequality_gap(double beta, double b);

// beta* with wrong_inequality_gap(beta*, b) = 0, in closed form:
// ((b - 1)/b * (pi/b) / sin(pi/b))^{b/(b-1)}.
double counterexample_threshold(double b);

// Same threshold located by bisection on the sign of wrong_inequality_gap.
double counterexample_threshold_bisection(double b);

struct BoundRow {
  double lambda;
  double exact;
  double corrected;
  double claimed;
};

// One row per lambda, in grid order.
std::vector<BoundRow> bound_comparison_table(double beta, double b, std::span<const double> lambda_grid,
                                             double tol = constants::kDefaultEffDimTol);

// Logarithmically spaced grid from lo to hi inclusive. points == 1 yields {lo}.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

}  // namespace effdim::dimension
