#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace effdim::spectral {

// Polynomial decay exponent b of the operator eigenvalues, t_n <= beta n^{-b}.
// The b = infinity case is an explicit state rather than a large float: the
// constant Q switches formula at b = infinity and is not the finite-b limit.
class DecayExponent {
 public:
  // Requires 1 < b < infinity.
  static DecayExponent finite(double b);
  static DecayExponent infinite() { return DecayExponent(); }

  bool is_infinite() const { return !value_.has_value(); }

  // The finite exponent; throws ValidationError when infinite.
  double value() const;

 private:
  DecayExponent() = default;
  explicit DecayExponent(double b) : value_(b) {}

  std::optional<double> value_;
};

// Generating rule t_n = beta * n^{-b}.
struct DecayModel {
  double beta;
  double b;

  double eigenvalue(double n) const;
};

// Truncated nonincreasing sequence of strictly positive operator eigenvalues.
class Spectrum {
 public:
  // Arbitrary spectrum without a decay model. Throws ValidationError unless
  // the values are strictly positive and nonincreasing.
  explicit Spectrum(std::vector<double> eigenvalues);

  std::span<const double> eigenvalues() const { return eigenvalues_; }
  std::size_t size() const { return eigenvalues_.size(); }
  const std::optional<DecayModel>& decay_model() const { return decay_model_; }

 private:
  Spectrum(std::vector<double> eigenvalues, DecayModel model);

  std::vector<double> eigenvalues_;
  std::optional<DecayModel> decay_model_;

  friend Spectrum polynomial_spectrum(double beta, double b, std::size_t n_max);
};

// Parameters of the prior family P(b, c).
struct PriorParams {
  DecayExponent b = DecayExponent::infinite();
  double c = 1.0;
  double beta = 1.0;
  double alpha = 1.0;  // lower bound on the operator norm of T
  double R = 1.0;      // source-condition radius
  double kappa = 1.0;  // sup of sqrt(k(x, x))
  double M = 1.0;
  double Sigma = 1.0;
};

// Throws ValidationError naming the first field that violates
// 1 <= c <= 2 or positivity.
void validate(const PriorParams& params);

// t_n = beta n^{-b} for n = 1..n_max, with the decay model attached.
Spectrum polynomial_spectrum(double beta, double b, std::size_t n_max);

// (pi / b) / sin(pi / b), the value of the integral of 1 / (1 + u^b) over
// [0, infinity). Requires b > 1.
double pi_over_sin(double b);

// Q = beta^{1/b} (pi/b) / sin(pi/b) for finite b, Q = beta for b = infinity.
double q_constant(double beta, DecayExponent b);

}  // namespace effdim::spectral
