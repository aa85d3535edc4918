#include "effdim/experiments.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <string>
#include <thread>

#include "effdim/dimension.hpp"
#include "effdim/errors.hpp"
#include "effdim/random.hpp"
#include "effdim/rates.hpp"

namespace effdim::experiments {

using detail::require;

namespace {

// Arbitrary fixed tag separating the target stream from cell streams.
constexpr std::uint64_t kTargetStreamTag = 0x7461726765740000ULL;

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean_of(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

}  // namespace

void validate(const SweepConfig& config) {
  const auto& m = config.model;
  require(std::isfinite(m.b) && m.b > 1.0, "b must satisfy 1 < b < infinity, got " + std::to_string(m.b));
  require(m.c >= 1.0 && m.c <= 2.0, "c must satisfy 1 <= c <= 2, got " + std::to_string(m.c));
  require(std::isfinite(m.beta) && m.beta > 0.0, "beta must be positive, got " + std::to_string(m.beta));
  require(std::isfinite(m.R) && m.R > 0.0, "R must be positive, got " + std::to_string(m.R));
  require(std::isfinite(m.sigma) && m.sigma >= 0.0, "sigma must be nonnegative, got " + std::to_string(m.sigma));
  require(m.n_modes >= 1, "n_modes must be at least 1");
  require(std::isfinite(m.delta) && m.delta > 0.0, "delta must be positive, got " + std::to_string(m.delta));
  require(!config.ell_grid.empty(), "ell_grid must be nonempty");
  for (std::size_t ell : config.ell_grid) {
    require(ell >= (m.c == 1.0 ? 2 : 1), "ell_grid entries must be at least " + std::string(m.c == 1.0 ? "2" : "1") +
                                             ", got " + std::to_string(ell));
  }
  require(config.repetitions >= 1, "repetitions must be at least 1");
}

std::uint64_t target_seed(std::uint64_t master_seed) { return derive_seed(master_seed, {kTargetStreamTag}); }

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t ell, std::size_t repetition) {
  return derive_seed(master_seed, {static_cast<std::uint64_t>(ell), static_cast<std::uint64_t>(repetition)});
}

RateExperimentRecord run_cell(const SweepConfig& config, const synth::SpectralKernelModel& model,
                              const synth::TargetFunction& target, std::size_t ell, std::size_t repetition) {
  const auto& m = config.model;
  RateExperimentRecord record;
  record.ell = ell;
  record.repetition = repetition;
  record.seed = cell_seed(config.seed, ell, repetition);
  record.lambda = rates::lambda_schedule(m.b, m.c, static_cast<double>(ell));
  record.params = RecordParams{m.b, m.c, m.beta, m.sigma, m.n_modes, m.delta};

  const auto data = synth::sample_dataset(model, target, m.sigma, ell, record.seed);
  const auto fitted = synth::fit_dataset(model, data, record.lambda);
  record.excess_risk = synth::exact_excess_risk(model, target, fitted);
  return record;
}

std::vector<RateExperimentRecord> rate_sweep(const SweepConfig& config) {
  validate(config);
  const auto& m = config.model;
  const auto model = synth::build_model(m.beta, m.b, m.n_modes);
  const auto target = synth::make_target(model, m.c, m.R, m.delta, target_seed(config.seed));

  std::vector<std::size_t> grid = config.ell_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  struct Cell {
    std::size_t ell;
    std::size_t repetition;
  };
  std::vector<Cell> cells;
  for (std::size_t ell : grid) {
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) cells.push_back({ell, rep});
  }

  std::vector<RateExperimentRecord> records(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      try {
        records[i] = run_cell(config, model, target, cells[i].ell, cells[i].repetition);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells.size()));
  spdlog::debug("rate_sweep: {} cells on {} thread(s)", cells.size(), threads);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!failures[i]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw NumericalError("sweep cell ell=" + std::to_string(cells[i].ell) +
                         " repetition=" + std::to_string(cells[i].repetition) + " failed: " + what);
  }
  return records;
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  require(points.size() >= 2, "power-law fit needs at least two points");
  const auto n = static_cast<double>(points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [ell, risk] : points) {
    require(std::isfinite(ell) && ell > 0.0 && std::isfinite(risk) && risk > 0.0,
            "power-law fit needs strictly positive values");
    mean_x += std::log(ell);
    mean_y += std::log(risk);
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [ell, risk] : points) {
    const double dx = std::log(ell) - mean_x;
    const double dy = std::log(risk) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  require(sxx > 0.0, "power-law fit needs at least two distinct ell values");

  PowerLawFit fit;
  fit.n_points = points.size();
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  const double residual = std::max(0.0, syy - fit.slope * sxy);
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - residual / syy, 0.0, 1.0) : 1.0;
  fit.slope_stderr = points.size() > 2 ? std::sqrt(residual / (n - 2.0) / sxx) : 0.0;
  return fit;
}

std::string_view to_string(Aggregate aggregate) { return aggregate == Aggregate::median ? "median" : "mean"; }

Aggregate parse_aggregate(std::string_view text) {
  if (text == "median") return Aggregate::median;
  if (text == "mean") return Aggregate::mean;
  throw ValidationError("aggregate must be 'median' or 'mean', got '" + std::string(text) + "'");
}

TheoryComparison compare_with_theory(std::span<const RateExperimentRecord> records, double b, double c,
                                     Aggregate aggregate, std::size_t burn_in) {
  require(!records.empty(), "no records to compare");
  std::map<std::size_t, std::vector<double>> by_ell;
  for (const auto& r : records) by_ell[r.ell].push_back(r.excess_risk);

  TheoryComparison out;
  out.aggregate = aggregate;
  for (const auto& [ell, risks] : by_ell) {
    out.curve.emplace_back(static_cast<double>(ell),
                           aggregate == Aggregate::median ? median_of(risks) : mean_of(risks));
  }
  require(out.curve.size() >= burn_in + 2, "need at least two ell values after excluding the " +
                                               std::to_string(burn_in) + " smallest");
  out.excluded = burn_in;
  out.fit = fit_power_law(std::span(out.curve).subspan(burn_in));
  out.theoretical_slope = -rates::rate_exponent(b, c);
  out.difference = out.fit.slope - out.theoretical_slope;
  out.log_factor_ignored = c == 1.0;
  return out;
}

std::vector<EffDimConvergenceRow> effdim_convergence_experiment(const synth::SpectralKernelModel& model,
                                                                std::span<const double> lambda_grid,
                                                                std::size_t ell, std::size_t reps,
                                                                std::uint64_t seed) {
  require(!lambda_grid.empty(), "lambda grid must be nonempty");
  require(ell >= 1, "ell must be at least 1");
  require(reps >= 1, "reps must be at least 1");

  std::vector<std::vector<double>> samples(lambda_grid.size());
  for (std::size_t rep = 0; rep < reps; ++rep) {
    RandomStream stream(derive_seed(seed, {static_cast<std::uint64_t>(ell), static_cast<std::uint64_t>(rep)}));
    std::vector<double> xs(ell);
    for (double& x : xs) x = stream.uniform01();
    const krr::Vector spectrum = krr::normalized_gram_spectrum(model.gram(xs));
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
      samples[i].push_back(krr::effective_dimension_from_spectrum(spectrum, lambda_grid[i]));
    }
  }

  const auto decay = spectral::polynomial_spectrum(model.beta(), model.b(), 1);
  std::vector<EffDimConvergenceRow> rows;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    EffDimConvergenceRow row;
    row.lambda = lambda_grid[i];
    row.mean_empirical = mean_of(samples[i]);
    row.min_empirical = *std::min_element(samples[i].begin(), samples[i].end());
    row.max_empirical = *std::max_element(samples[i].begin(), samples[i].end());
    row.exact = dimension::effective_dimension_exact(decay, row.lambda).value;
    row.corrected = dimension::corrected_bound(model.beta(), model.b(), row.lambda);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace effdim::experiments
