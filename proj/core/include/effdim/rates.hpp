#pragma once

#include "effdim/spectral.hpp"

namespace effdim::rates {

// C_eta = 96 log^2(6 / eta). Confidence levels are eta in (0, 1); the formula
// is accepted on (0, 6), where log(6 / eta) > 0.
double c_eta(double eta);

// Terms of the excess-risk bound
//   C_eta (R l^c + k^2 R l^{c-2}/n^2 + k R l^{c-1}/n + k M^2 l^{-1}/n^2 + S^2 Q l^{-1/b}/n)
// with l = lambda, n = ell. The validity conditions are reported as flags;
// the bound value is computed regardless.
struct BoundBreakdown {
  double term_approx = 0.0;   // R lambda^c
  double term_b = 0.0;        // kappa^2 R lambda^{c-2} / ell^2
  double term_a = 0.0;        // kappa R lambda^{c-1} / ell
  double term_noise_m = 0.0;  // kappa M^2 lambda^{-1} / ell^2
  double term_effdim = 0.0;   // Sigma^2 Q lambda^{-1/b} / ell
  double c_eta = 0.0;
  double total = 0.0;
  double required_ell = 0.0;  // right-hand side of the sample-size condition
  bool sample_size_ok = false;
  bool lambda_ok = false;  // lambda <= alpha, alpha standing in for ||T||

  double sum_of_terms() const { return term_approx + term_b + term_a + term_noise_m + term_effdim; }
};

BoundBreakdown risk_bound(const spectral::PriorParams& params, double lambda, double ell, double eta);

// 2 C_eta kappa Q lambda^{-(b+1)/b}; for b = infinity the exponent is -1.
double min_ell_for_condition(const spectral::PriorParams& params, double lambda, double eta);

// lambda_ell = ell^{-b/(bc+1)} for c > 1 and (log ell / ell)^{b/(b+1)} for c = 1.
// Finite b only. ell is real-valued; c = 1 requires ell >= 2.
double lambda_schedule(double b, double c, double ell);

// Smallest admissible ell_eta: (2 C_eta kappa Q)^{(bc+1)/(b(c-1))} for c > 1,
// exp(2 C_eta kappa Q) for c = 1. Finite b only.
double min_sample_size(const spectral::PriorParams& params, double eta);

// bc / (bc + 1); equals b / (b + 1) at c = 1.
double rate_exponent(double b, double c);

// Amounts by which the exponents of the three lower-order terms exceed bc:
// (3bc - 2b + 2) - bc, (2bc - b + 1) - bc, (2bc - b + 2) - bc.
struct DominanceMargins {
  double kappa_squared_term;
  double kappa_term;
  double noise_term;

  bool all_positive() const { return kappa_squared_term > 0.0 && kappa_term > 0.0 && noise_term > 0.0; }
};

DominanceMargins dominance_margins(double b, double c);

// eta_tau = 6 exp(-sqrt(tau / (192 D))), the inverse of tau = 2 C_eta D.
double eta_tau(double tau, double d_const);

// tau = 2 C_eta D = 192 D log^2(6 / eta).
double tau_for_eta(double eta, double d_const);

}  // namespace effdim::rates
