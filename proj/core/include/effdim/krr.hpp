#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace effdim::krr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Symmetric positive-semidefinite kernel on scalar inputs, with
// k(x, x) <= sup_diag (= kappa^2) for every x in the domain.
struct KernelFn {
  std::function<double(double, double)> eval;
  double sup_diag = 1.0;

  double operator()(double x, double y) const { return eval(x, y); }
};

struct FittedModel {
  Vector coefficients;
  std::vector<double> training_inputs;
  double lambda = 0.0;
  std::size_t ell = 0;
};

// K[i][j] = k(x_i, x_j). The upper triangle is evaluated and mirrored, so the
// result is exactly symmetric.
Matrix gram_matrix(const KernelFn& kernel, std::span<const double> xs);

// Solves (K + ell lambda I) alpha = y with a Cholesky factorization, ell being
// the number of rows of K. If the factorization fails a jitter of
// 1e-12 trace(K) / ell is added to the diagonal and a warning is logged.
Vector krr_fit(const Matrix& K, const Vector& y, double lambda);

// Convenience wrapper: assembles the Gram matrix and fits.
FittedModel fit(const KernelFn& kernel, std::span<const double> xs, std::span<const double> ys, double lambda);

// sum_i alpha_i k(x_i, x)
double krr_predict(const KernelFn& kernel, std::span<const double> xs, const Vector& alpha, double x);

// Tr[(K/ell) (K/ell + lambda I)^{-1}] from the eigenvalues of K/ell. Negative
// eigenvalues from rounding are clamped to zero.
double empirical_effective_dimension(const Matrix& K, double lambda);

// Eigenvalues of K/ell, ascending, negatives clamped to zero.
Vector normalized_gram_spectrum(const Matrix& K);

// sum_i mu_i / (mu_i + lambda)
double effective_dimension_from_spectrum(const Vector& spectrum, double lambda);

}  // namespace effdim::krr
