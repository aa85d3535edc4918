#include "effdim/spectral.hpp"

#include <cmath>
#include <string>

#include "effdim/constants.hpp"
#include "effdim/errors.hpp"

namespace effdim::spectral {

using detail::require;

namespace {

void require_decay_exponent(double b) {
  require(std::isfinite(b) && b > 1.0,
          "b must satisfy b > 1 (eigenvalue sum diverges otherwise), got " + std::to_string(b));
}

void require_positive(double value, const char* name) {
  require(std::isfinite(value) && value > 0.0,
          std::string(name) + " must be a positive finite number, got " + std::to_string(value));
}

}  // namespace

DecayExponent DecayExponent::finite(double b) {
  require_decay_exponent(b);
  return DecayExponent(b);
}

double DecayExponent::value() const {
  require(value_.has_value(), "this operation requires finite b (b = infinity given)");
  return *value_;
}

double DecayModel::eigenvalue(double n) const { return beta * std::pow(n, -b); }

Spectrum::Spectrum(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  require(!eigenvalues_.empty(), "spectrum must contain at least one eigenvalue");
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    require(std::isfinite(eigenvalues_[i]) && eigenvalues_[i] > 0.0,
            "spectrum eigenvalues must be strictly positive");
    require(i == 0 || eigenvalues_[i] <= eigenvalues_[i - 1], "spectrum eigenvalues must be nonincreasing");
  }
}

Spectrum::Spectrum(std::vector<double> eigenvalues, DecayModel model)
    : eigenvalues_(std::move(eigenvalues)), decay_model_(model) {}

void validate(const PriorParams& params) {
  require(params.c >= 1.0 && params.c <= 2.0,
          "c must satisfy 1 <= c <= 2, got " + std::to_string(params.c));
  require_positive(params.beta, "beta");
  require_positive(params.alpha, "alpha");
  require_positive(params.R, "R");
  require_positive(params.kappa, "kappa");
  require_positive(params.M, "M");
  require_positive(params.Sigma, "Sigma");
}

Spectrum polynomial_spectrum(double beta, double b, std::size_t n_max) {
  require_positive(beta, "beta");
  require_decay_exponent(b);
  require(n_max >= 1, "n_max must be at least 1");
  DecayModel model{beta, b};
  std::vector<double> values(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) values[n - 1] = model.eigenvalue(static_cast<double>(n));
  return Spectrum(std::move(values), model);
}

double pi_over_sin(double b) {
  require_decay_exponent(b);
  const double angle = constants::kPi / b;
  return angle / std::sin(angle);
}

double q_constant(double beta, DecayExponent b) {
  require_positive(beta, "beta");
  if (b.is_infinite()) return beta;
  const double exponent = b.value();
  return std::pow(beta, 1.0 / exponent) * pi_over_sin(exponent);
}

}  // namespace effdim::spectral
