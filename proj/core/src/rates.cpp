#include "effdim/rates.hpp"

#include <cmath>
#include <string>

#include "effdim/constants.hpp"
#include "effdim/errors.hpp"

namespace effdim::rates {

using detail::require;

namespace {

// log(6 / eta) > 0 on (0, 6). Only eta < 1 is a meaningful confidence level,
// but eta = 6/e (C_eta = 96) is a standard reference point.
void require_eta(double eta) {
  require(eta > 0.0 && eta < constants::kConfidenceLogNumerator,
          "eta must satisfy 0 < eta < 6, got " + std::to_string(eta));
}

void require_schedule_exponents(double b, double c) {
  require(std::isfinite(b) && b > 1.0, "b must satisfy 1 < b < infinity, got " + std::to_string(b));
  require(c >= 1.0 && c <= 2.0, "c must satisfy 1 <= c <= 2, got " + std::to_string(c));
}

void require_positive(double value, const char* name) {
  require(std::isfinite(value) && value > 0.0,
          std::string(name) + " must be positive, got " + std::to_string(value));
}

// 2 C_eta kappa Q
double condition_scale(const spectral::PriorParams& params, double eta) {
  return 2.0 * c_eta(eta) * params.kappa * spectral::q_constant(params.beta, params.b);
}

}  // namespace

double c_eta(double eta) {
  require_eta(eta);
  const double log_term = std::log(constants::kConfidenceLogNumerator / eta);
  return constants::kConfidenceFactor * log_term * log_term;
}

BoundBreakdown risk_bound(const spectral::PriorParams& params, double lambda, double ell, double eta) {
  spectral::validate(params);
  require_positive(lambda, "lambda");
  require(ell >= 1.0, "ell must be at least 1, got " + std::to_string(ell));

  const double c = params.c;
  const double q = spectral::q_constant(params.beta, params.b);
  const double effdim_scale = params.b.is_infinite() ? 1.0 : std::pow(lambda, -1.0 / params.b.value());

  BoundBreakdown out;
  out.term_approx = params.R * std::pow(lambda, c);
  out.term_b = params.kappa * params.kappa * params.R * std::pow(lambda, c - 2.0) / (ell * ell);
  out.term_a = params.kappa * params.R * std::pow(lambda, c - 1.0) / ell;
  out.term_noise_m = params.kappa * params.M * params.M / (lambda * ell * ell);
  out.term_effdim = params.Sigma * params.Sigma * q * effdim_scale / ell;
  out.c_eta = c_eta(eta);
  out.total = out.c_eta * out.sum_of_terms();
  out.required_ell = min_ell_for_condition(params, lambda, eta);
  out.sample_size_ok = ell >= out.required_ell;
  out.lambda_ok = lambda <= params.alpha;
  return out;
}

double min_ell_for_condition(const spectral::PriorParams& params, double lambda, double eta) {
  spectral::validate(params);
  require_positive(lambda, "lambda");
  const double exponent = params.b.is_infinite() ? 1.0 : (params.b.value() + 1.0) / params.b.value();
  return condition_scale(params, eta) * std::pow(lambda, -exponent);
}

double lambda_schedule(double b, double c, double ell) {
  require_schedule_exponents(b, c);
  if (c == 1.0) {
    require(ell >= 2.0, "ell must be at least 2 when c = 1, got " + std::to_string(ell));
    return std::pow(std::log(ell) / ell, b / (b + 1.0));
  }
  require(ell >= 1.0, "ell must be at least 1, got " + std::to_string(ell));
  return std::pow(ell, -b / (b * c + 1.0));
}

double min_sample_size(const spectral::PriorParams& params, double eta) {
  spectral::validate(params);
  const double b = params.b.value();
  const double c = params.c;
  require_schedule_exponents(b, c);
  const double scale = condition_scale(params, eta);
  if (c == 1.0) return std::exp(scale);
  return std::pow(scale, (b * c + 1.0) / (b * (c - 1.0)));
}

double rate_exponent(double b, double c) {
  require_schedule_exponents(b, c);
  return b * c / (b * c + 1.0);
}

DominanceMargins dominance_margins(double b, double c) {
  require_schedule_exponents(b, c);
  const double bc = b * c;
  return DominanceMargins{
      (3.0 * bc - 2.0 * b + 2.0) - bc,
      (2.0 * bc - b + 1.0) - bc,
      (2.0 * bc - b + 2.0) - bc,
  };
}

double eta_tau(double tau, double d_const) {
  require_positive(tau, "tau");
  require_positive(d_const, "D");
  return constants::kConfidenceLogNumerator *
         std::exp(-std::sqrt(tau / (2.0 * constants::kConfidenceFactor * d_const)));
}

double tau_for_eta(double eta, double d_const) {
  require_positive(d_const, "D");
  return 2.0 * c_eta(eta) * d_const;
}

}  // namespace effdim::rates
