#include "effdim/krr.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <string>

#include "effdim/errors.hpp"

namespace effdim::krr {

using detail::require;

namespace {

void require_lambda(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive, got " + std::to_string(lambda));
}

}  // namespace

Matrix gram_matrix(const KernelFn& kernel, std::span<const double> xs) {
  require(!xs.empty(), "gram matrix needs at least one input");
  const auto n = static_cast<Eigen::Index>(xs.size());
  Matrix K(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double v = kernel(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]);
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

Vector krr_fit(const Matrix& K, const Vector& y, double lambda) {
  require_lambda(lambda);
  require(K.rows() == K.cols(), "Gram matrix must be square");
  require(K.rows() >= 1, "Gram matrix must be nonempty");
  require(y.size() == K.rows(), "target vector length must match the Gram matrix");

  const auto ell = static_cast<double>(K.rows());
  Matrix system = K;
  system.diagonal().array() += ell * lambda;

  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) {
    const double jitter = 1e-12 * K.trace() / ell;
    spdlog::warn("krr_fit: Cholesky failed for ell={} lambda={}; retrying with diagonal jitter {}", K.rows(),
                 lambda, jitter);
    system.diagonal().array() += jitter;
    llt.compute(system);
    if (llt.info() != Eigen::Success) {
      throw NumericalError("krr_fit: Cholesky factorization of K + ell*lambda*I failed");
    }
  }
  return llt.solve(y);
}

FittedModel fit(const KernelFn& kernel, std::span<const double> xs, std::span<const double> ys, double lambda) {
  require(xs.size() == ys.size(), "inputs and outputs must have the same length");
  const Matrix K = gram_matrix(kernel, xs);
  const Vector y = Eigen::Map<const Vector>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  FittedModel model;
  model.coefficients = krr_fit(K, y, lambda);
  model.training_inputs.assign(xs.begin(), xs.end());
  model.lambda = lambda;
  model.ell = xs.size();
  return model;
}

double krr_predict(const KernelFn& kernel, std::span<const double> xs, const Vector& alpha, double x) {
  require(alpha.size() == static_cast<Eigen::Index>(xs.size()), "coefficient count must match training inputs");
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) total += alpha[static_cast<Eigen::Index>(i)] * kernel(xs[i], x);
  return total;
}

Vector normalized_gram_spectrum(const Matrix& K) {
  require(K.rows() == K.cols() && K.rows() >= 1, "Gram matrix must be square and nonempty");
  const auto ell = static_cast<double>(K.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(K / ell, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Gram eigendecomposition failed");
  return solver.eigenvalues().cwiseMax(0.0);
}

double effective_dimension_from_spectrum(const Vector& spectrum, double lambda) {
  require_lambda(lambda);
  double total = 0.0;
  for (double mu : spectrum) total += mu / (mu + lambda);
  return total;
}

double empirical_effective_dimension(const Matrix& K, double lambda) {
  require_lambda(lambda);
  return effective_dimension_from_spectrum(normalized_gram_spectrum(K), lambda);
}

}  // namespace effdim::krr
