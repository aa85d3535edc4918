#pragma once

// Monte Carlo harness for the excess-risk rate of KRR under the
// lambda_ell schedule, and for the convergence of the empirical effective
// dimension. Every cell (ell, repetition) draws from its own stream seeded by
// derive_seed(master_seed, {ell, repetition}); results are independent of the
// order or thread on which cells run.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "effdim/constants.hpp"
#include "effdim/synth.hpp"

namespace effdim::experiments {

struct ModelParams {
  double b = 2.0;
  double c = 2.0;
  double beta = 1.0;
  double R = 1.0;
  double sigma = 0.1;
  std::size_t n_modes = constants::kDefaultModes;
  double delta = constants::kDefaultTailMargin;
};

struct SweepConfig {
  ModelParams model;
  std::vector<std::size_t> ell_grid;
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency
};

// Throws ValidationError naming the offending field.
void validate(const SweepConfig& config);

struct RecordParams {
  double b = 0.0;
  double c = 0.0;
  double beta = 0.0;
  double sigma = 0.0;
  std::size_t n_modes = 0;
  double delta = 0.0;

  friend bool operator==(const RecordParams&, const RecordParams&) = default;
};

struct RateExperimentRecord {
  std::size_t ell = 0;
  std::size_t repetition = 0;
  double lambda = 0.0;
  double excess_risk = 0.0;
  std::uint64_t seed = 0;
  RecordParams params;

  friend bool operator==(const RateExperimentRecord&, const RateExperimentRecord&) = default;
};

// Seed of the target function shared by all cells of a sweep.
std::uint64_t target_seed(std::uint64_t master_seed);
// Seed of the dataset drawn for one (ell, repetition) cell.
std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t ell, std::size_t repetition);

// One record per (ell, repetition), sorted by ell then repetition. A failing
// cell aborts the sweep with a NumericalError identifying the cell.
std::vector<RateExperimentRecord> rate_sweep(const SweepConfig& config);

// Single cell of the sweep; exposed for benchmarking and tests.
RateExperimentRecord run_cell(const SweepConfig& config, const synth::SpectralKernelModel& model,
                              const synth::TargetFunction& target, std::size_t ell, std::size_t repetition);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural log of the prefactor
  double r_squared = 0.0;
  std::size_t n_points = 0;
  double slope_stderr = 0.0;  // zero when n_points == 2
};

// Least squares of log(risk) on log(ell).
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

enum class Aggregate { median, mean };

std::string_view to_string(Aggregate aggregate);
Aggregate parse_aggregate(std::string_view text);

struct TheoryComparison {
  Aggregate aggregate = Aggregate::median;
  std::vector<std::pair<double, double>> curve;  // (ell, aggregated risk), all ell
  std::size_t excluded = 0;                      // smallest ell values left out of the fit
  PowerLawFit fit;
  double theoretical_slope = 0.0;  // -bc / (bc + 1)
  double difference = 0.0;         // fit.slope - theoretical_slope
  bool log_factor_ignored = false;  // c = 1: the (log ell)^{b/(b+1)} factor is not modelled
};

inline constexpr std::size_t kDefaultBurnIn = 2;

TheoryComparison compare_with_theory(std::span<const RateExperimentRecord> records, double b, double c,
                                     Aggregate aggregate = Aggregate::median,
                                     std::size_t burn_in = kDefaultBurnIn);

struct EffDimConvergenceRow {
  double lambda = 0.0;
  double mean_empirical = 0.0;
  double min_empirical = 0.0;
  double max_empirical = 0.0;
  double exact = 0.0;
  double corrected = 0.0;
};

// Per lambda: empirical effective dimension of K/ell averaged over reps draws
// of ell uniform inputs, the exact N(lambda) of the untruncated decay, and the
// corrected bound.
std::vector<EffDimConvergenceRow> effdim_convergence_experiment(const synth::SpectralKernelModel& model,
                                                                std::span<const double> lambda_grid,
                                                                std::size_t ell, std::size_t reps,
                                                                std::uint64_t seed);

// Records are stored one JSON object per line with the fixed key order
// ell, repetition, lambda, excess_risk, seed, b, c, beta, sigma, n_modes, delta.
std::string to_record_line(const RateExperimentRecord& record);
RateExperimentRecord parse_record_line(std::string_view line);
void write_records(std::ostream& out, std::span<const RateExperimentRecord> records);
std::vector<RateExperimentRecord> read_records(std::istream& in);

// CSV with a header row; one row per comparison.
void write_report_csv(std::ostream& out, std::span<const TheoryComparison> comparisons);
// CSV with header lambda,mean_empirical,min_empirical,max_empirical,exact,corrected.
void write_convergence_csv(std::ostream& out, std::span<const EffDimConvergenceRow> rows);

}  // namespace effdim::experiments
