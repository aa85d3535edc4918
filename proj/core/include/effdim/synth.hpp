#pragma once

// A concrete member of the prior family P(b, c) on [0, 1] with uniform inputs.
//
// The kernel is k(x, y) = sum_{n <= N} mu_n phi_n(x) phi_n(y) with
// phi_n(x) = sqrt(2) cos(n pi x) and mu_n = beta n^{-b}. The phi_n are
// orthonormal in L^2 of the uniform distribution, so the integral operator T
// has eigenvalues exactly mu_n (and zero beyond N, which still satisfies the
// decay condition t_n <= beta n^{-b}). Targets are built in the same basis so
// that the source condition and the excess risk are exact finite sums.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "effdim/constants.hpp"
#include "effdim/krr.hpp"

namespace effdim::synth {

// phi_n(x) = sqrt(2) cos(n pi x), n >= 1.
double cosine_basis(std::size_t n, double x);

class SpectralKernelModel {
 public:
  SpectralKernelModel(double beta, double b, std::size_t n_modes);

  double beta() const { return beta_; }
  double b() const { return b_; }
  std::size_t n_modes() const { return mu_.size(); }

  // mu_1, ..., mu_N
  std::span<const double> eigenvalues() const { return mu_; }

  double kernel_value(double x, double y) const;
  krr::KernelFn kernel() const;

  // Feature matrix Phi with Phi(i, n-1) = phi_n(x_i); K = Phi diag(mu) Phi^T.
  krr::Matrix features(std::span<const double> xs) const;

  // Gram matrix via the feature factorization (same values as
  // krr::gram_matrix(kernel(), xs) up to rounding, much faster).
  krr::Matrix gram(std::span<const double> xs) const;

  // 2 beta sum_{n <= N} n^{-b}, the exact sup of k(x, x) (attained at x = 0).
  double kappa_squared_truncated() const;
  // 2 beta zeta(b) >= kappa_squared_truncated().
  double kappa_squared_bound() const;
  double kappa() const;

 private:
  double beta_;
  double b_;
  std::vector<double> mu_;
};

SpectralKernelModel build_model(double beta, double b, std::size_t n_modes = constants::kDefaultModes);

// f_H(x) = sum_n theta_n phi_n(x) with sum_n theta_n^2 mu_n^{-c} = R.
struct TargetFunction {
  std::vector<double> theta;
  double c = 1.0;
  double R = 1.0;

  double operator()(double x) const;
  // sum_n theta_n^2 mu_n^{-c}
  double source_norm(std::span<const double> mu) const;
  // ||f_H||^2 in L^2(uniform) = sum_n theta_n^2
  double l2_norm_squared() const;
};

// theta_n = s mu_n^{c/2} n^{-(1+delta)/2} sigma_n with random signs sigma_n and
// s chosen so the source condition holds with equality at radius R.
TargetFunction make_target(const SpectralKernelModel& model, double c, double R,
                           double delta, std::uint64_t seed);

struct Dataset {
  std::vector<double> xs;
  std::vector<double> ys;
  std::uint64_t seed = 0;
  double noise_bound = 0.0;  // M = sigma sqrt(3)
  double noise_std = 0.0;    // sigma
};

// x_i ~ U[0, 1), y_i = f_H(x_i) + eps_i with eps_i ~ U[-sigma sqrt 3, sigma sqrt 3].
Dataset sample_dataset(const SpectralKernelModel& model, const TargetFunction& target, double sigma,
                       std::size_t ell, std::uint64_t seed);

// Fits KRR on the dataset with the model's kernel.
krr::FittedModel fit_dataset(const SpectralKernelModel& model, const Dataset& data, double lambda);

// ||f_z - f_H||^2 in L^2(uniform), computed exactly in the eigenbasis:
// c_n = mu_n sum_i alpha_i phi_n(x_i), risk = sum_n (c_n - theta_n)^2.
double exact_excess_risk(const SpectralKernelModel& model, const TargetFunction& target,
                         const krr::FittedModel& fitted);

}  // namespace effdim::synth
