#include "effdim/synth.hpp"

#include <cmath>
#include <string>

#include "effdim/errors.hpp"
#include "effdim/random.hpp"

namespace effdim::synth {

using detail::require;

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kSqrt3 = 1.73205080756887729353;

}  // namespace

double cosine_basis(std::size_t n, double x) {
  return kSqrt2 * std::cos(static_cast<double>(n) * constants::kPi * x);
}

SpectralKernelModel::SpectralKernelModel(double beta, double b, std::size_t n_modes) : beta_(beta), b_(b) {
  require(std::isfinite(beta) && beta > 0.0, "beta must be positive, got " + std::to_string(beta));
  require(std::isfinite(b) && b > 1.0, "b must satisfy b > 1, got " + std::to_string(b));
  require(n_modes >= 1, "n_modes must be at least 1");
  mu_.resize(n_modes);
  for (std::size_t n = 1; n <= n_modes; ++n) mu_[n - 1] = beta * std::pow(static_cast<double>(n), -b);
}

double SpectralKernelModel::kernel_value(double x, double y) const {
  double total = 0.0;
  for (std::size_t n = 1; n <= mu_.size(); ++n) total += mu_[n - 1] * cosine_basis(n, x) * cosine_basis(n, y);
  return total;
}

krr::KernelFn SpectralKernelModel::kernel() const {
  return krr::KernelFn{[model = *this](double x, double y) { return model.kernel_value(x, y); },
                       kappa_squared_truncated()};
}

krr::Matrix SpectralKernelModel::features(std::span<const double> xs) const {
  const auto rows = static_cast<Eigen::Index>(xs.size());
  const auto cols = static_cast<Eigen::Index>(mu_.size());
  krr::Matrix phi(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      phi(i, j) = cosine_basis(static_cast<std::size_t>(j + 1), xs[static_cast<std::size_t>(i)]);
    }
  }
  return phi;
}

krr::Matrix SpectralKernelModel::gram(std::span<const double> xs) const {
  require(!xs.empty(), "gram matrix needs at least one input");
  const krr::Matrix phi = features(xs);
  const Eigen::Map<const krr::Vector> mu(mu_.data(), static_cast<Eigen::Index>(mu_.size()));
  const krr::Matrix scaled = phi * mu.cwiseSqrt().asDiagonal();
  krr::Matrix K = scaled * scaled.transpose();
  // Exact symmetry, matching krr::gram_matrix.
  K.triangularView<Eigen::StrictlyLower>() = K.transpose().triangularView<Eigen::StrictlyLower>();
  return K;
}

double SpectralKernelModel::kappa_squared_truncated() const {
  double total = 0.0;
  for (double mu : mu_) total += mu;
  return 2.0 * total;
}

double SpectralKernelModel::kappa_squared_bound() const { return 2.0 * beta_ * std::riemann_zeta(b_); }

double SpectralKernelModel::kappa() const { return std::sqrt(kappa_squared_bound()); }

SpectralKernelModel build_model(double beta, double b, std::size_t n_modes) {
  return SpectralKernelModel(beta, b, n_modes);
}

double TargetFunction::operator()(double x) const {
  double total = 0.0;
  for (std::size_t n = 1; n <= theta.size(); ++n) total += theta[n - 1] * cosine_basis(n, x);
  return total;
}

double TargetFunction::source_norm(std::span<const double> mu) const {
  require(mu.size() == theta.size(), "eigenvalue count must match target coefficients");
  double total = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) total += theta[i] * theta[i] * std::pow(mu[i], -c);
  return total;
}

double TargetFunction::l2_norm_squared() const {
  double total = 0.0;
  for (double t : theta) total += t * t;
  return total;
}

TargetFunction make_target(const SpectralKernelModel& model, double c, double R, double delta,
                           std::uint64_t seed) {
  require(c >= 1.0 && c <= 2.0, "c must satisfy 1 <= c <= 2, got " + std::to_string(c));
  require(std::isfinite(R) && R > 0.0, "R must be positive, got " + std::to_string(R));
  require(std::isfinite(delta) && delta > 0.0, "delta must be positive, got " + std::to_string(delta));

  const std::size_t modes = model.n_modes();
  double normalizer = 0.0;
  for (std::size_t n = 1; n <= modes; ++n) normalizer += std::pow(static_cast<double>(n), -(1.0 + delta));
  const double scale = std::sqrt(R / normalizer);

  RandomStream stream(seed);
  TargetFunction target;
  target.c = c;
  target.R = R;
  target.theta.resize(modes);
  const auto mu = model.eigenvalues();
  for (std::size_t n = 1; n <= modes; ++n) {
    target.theta[n - 1] = scale * std::pow(mu[n - 1], 0.5 * c) *
                          std::pow(static_cast<double>(n), -0.5 * (1.0 + delta)) * stream.sign();
  }
  return target;
}

Dataset sample_dataset(const SpectralKernelModel& model, const TargetFunction& target, double sigma,
                       std::size_t ell, std::uint64_t seed) {
  require(std::isfinite(sigma) && sigma >= 0.0, "sigma must be nonnegative, got " + std::to_string(sigma));
  require(ell >= 1, "ell must be at least 1");
  require(target.theta.size() == model.n_modes(), "target does not match the model's mode count");

  Dataset data;
  data.seed = seed;
  data.noise_std = sigma;
  data.noise_bound = sigma * kSqrt3;
  data.xs.resize(ell);
  data.ys.resize(ell);
  RandomStream stream(seed);
  for (std::size_t i = 0; i < ell; ++i) data.xs[i] = stream.uniform01();
  for (std::size_t i = 0; i < ell; ++i) {
    const double noise = sigma > 0.0 ? stream.uniform(-data.noise_bound, data.noise_bound) : 0.0;
    data.ys[i] = target(data.xs[i]) + noise;
  }
  return data;
}

krr::FittedModel fit_dataset(const SpectralKernelModel& model, const Dataset& data, double lambda) {
  require(data.xs.size() == data.ys.size() && !data.xs.empty(), "dataset must be nonempty and consistent");
  const krr::Matrix K = model.gram(data.xs);
  const krr::Vector y = Eigen::Map<const krr::Vector>(data.ys.data(), static_cast<Eigen::Index>(data.ys.size()));
  krr::FittedModel fitted;
  fitted.coefficients = krr::krr_fit(K, y, lambda);
  fitted.training_inputs = data.xs;
  fitted.lambda = lambda;
  fitted.ell = data.xs.size();
  return fitted;
}

double exact_excess_risk(const SpectralKernelModel& model, const TargetFunction& target,
                         const krr::FittedModel& fitted) {
  require(target.theta.size() == model.n_modes(), "target does not match the model's mode count");
  require(fitted.coefficients.size() == static_cast<Eigen::Index>(fitted.training_inputs.size()),
          "fitted coefficients do not match training inputs");
  const krr::Matrix phi = model.features(fitted.training_inputs);
  const krr::Vector projected = phi.transpose() * fitted.coefficients;
  double risk = 0.0;
  const auto mu = model.eigenvalues();
  for (std::size_t n = 0; n < model.n_modes(); ++n) {
    const double diff = mu[n] * projected[static_cast<Eigen::Index>(n)] - target.theta[n];
    risk += diff * diff;
  }
  return risk;
}

}  // namespace effdim::synth
