#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "effdim/dimension.hpp"
#include "effdim/errors.hpp"
#include "effdim/experiments.hpp"
#include "effdim/format.hpp"
#include "effdim/rates.hpp"
#include "effdim/spectral.hpp"
#include "effdim/synth.hpp"
#include "run_config.hpp"

namespace effdim::cli {

namespace fs = std::filesystem;

namespace {

using effdim::format_double;

// Writes `contents` to `path` via a sibling temporary file and rename, so a
// failed run never leaves a partial output behind.
void write_file_atomically(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    if (!out.flush()) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

spectral::DecayExponent parse_decay_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return spectral::DecayExponent::infinite();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ValidationError("b must be a number or 'inf', got '" + text + "'");
  if (!(value > 1.0)) throw ValidationError("b must satisfy b > 1, got " + text);
  if (std::isinf(value)) return spectral::DecayExponent::infinite();
  return spectral::DecayExponent::finite(value);
}

struct EffdimArgs {
  double beta = 0.1;
  double b = 2.0;
  double lambda = 0.0;
  double tol = constants::kDefaultEffDimTol;
  bool csv = false;
};

int cmd_effdim(const EffdimArgs& a, std::ostream& out) {
  const auto spectrum = spectral::polynomial_spectrum(a.beta, a.b, 1);
  const auto exact = dimension::effective_dimension_exact(spectrum, a.lambda, a.tol);
  const double corrected = dimension::corrected_bound(a.beta, a.b, a.lambda);
  const double claimed = dimension::claimed_bound(a.beta, a.b, a.lambda);
  out << "beta=" << format_double(a.beta) << " b=" << format_double(a.b) << " lambda=" << format_double(a.lambda)
      << " exact=" << format_double(exact.value) << " corrected=" << format_double(corrected)
      << " claimed=" << format_double(claimed) << " corrected_minus_exact=" << format_double(corrected - exact.value)
      << " exact_minus_claimed=" << format_double(exact.value - claimed)
      << " truncation_error_bound=" << format_double(exact.truncation_error_bound) << '\n';
  if (a.csv) {
    out << "lambda,exact,corrected,claimed\n"
        << format_double(a.lambda) << ',' << format_double(exact.value) << ',' << format_double(corrected) << ','
        << format_double(claimed) << '\n';
  }
  return kExitOk;
}

struct FigureArgs {
  double beta = 0.1;
  double b = 2.0;
  double lambda_min = 1e-6;
  double lambda_max = 1.0;
  std::size_t points = 61;
  double tol = constants::kDefaultEffDimTol;
  std::string out;
  bool b_given = false;
};

int cmd_bounds_figure(const FigureArgs& a, std::ostream& out) {
  const auto grid = dimension::log_grid(a.lambda_min, a.lambda_max, a.points);
  const auto rows = dimension::bound_comparison_table(a.beta, a.b, grid, a.tol);
  std::ostringstream csv;
  csv << "lambda,exact,corrected,claimed\n";
  for (const auto& r : rows) {
    csv << format_double(r.lambda) << ',' << format_double(r.exact) << ',' << format_double(r.corrected) << ','
        << format_double(r.claimed) << '\n';
  }
  write_file_atomically(a.out, csv.str());
  out << "wrote " << rows.size() << " rows to " << a.out << " (beta=" << format_double(a.beta)
      << ", b=" << format_double(a.b) << (a.b_given ? "" : ", default b") << ")\n";
  return kExitOk;
}

struct RiskArgs {
  std::string b = "2";
  double c = 1.5;
  double beta = 1.0;
  double alpha = 1.0;
  double R = 1.0;
  double kappa = 1.0;
  double M = 1.0;
  double Sigma = 1.0;
  double lambda = 0.0;
  double ell = 0.0;
  double eta = 0.05;
};

spectral::PriorParams prior_from(const RiskArgs& a) {
  spectral::PriorParams p;
  p.b = parse_decay_exponent(a.b);
  p.c = a.c;
  p.beta = a.beta;
  p.alpha = a.alpha;
  p.R = a.R;
  p.kappa = a.kappa;
  p.M = a.M;
  p.Sigma = a.Sigma;
  spectral::validate(p);
  return p;
}

int cmd_risk_bound(const RiskArgs& a, std::ostream& out) {
  const auto params = prior_from(a);
  const auto r = rates::risk_bound(params, a.lambda, a.ell, a.eta);
  out << "term_approx=" << format_double(r.term_approx) << '\n'
      << "term_b=" << format_double(r.term_b) << '\n'
      << "term_a=" << format_double(r.term_a) << '\n'
      << "term_noise_m=" << format_double(r.term_noise_m) << '\n'
      << "term_effdim=" << format_double(r.term_effdim) << '\n'
      << "c_eta=" << format_double(r.c_eta) << '\n'
      << "total=" << format_double(r.total) << '\n'
      << "required_ell=" << format_double(r.required_ell) << '\n'
      << "sample_size_ok=" << (r.sample_size_ok ? "true" : "false") << '\n'
      << "lambda_ok=" << (r.lambda_ok ? "true" : "false") << '\n';
  return kExitOk;
}

struct ScheduleArgs {
  double b = 2.0;
  double c = 1.5;
  double ell = 0.0;
  double eta = 0.05;
  double kappa = 1.0;
  double beta = 1.0;
};

int cmd_schedule(const ScheduleArgs& a, std::ostream& out) {
  spectral::PriorParams p;
  p.b = spectral::DecayExponent::finite(a.b);
  p.c = a.c;
  p.beta = a.beta;
  p.kappa = a.kappa;
  spectral::validate(p);
  const double lambda = rates::lambda_schedule(a.b, a.c, a.ell);
  const double required = rates::min_ell_for_condition(p, lambda, a.eta);
  const double threshold = rates::min_sample_size(p, a.eta);
  const auto margins = rates::dominance_margins(a.b, a.c);
  out << "lambda_ell=" << format_double(lambda) << '\n'
      << "rate_exponent=" << format_double(rates::rate_exponent(a.b, a.c)) << '\n'
      << "ell_eta=" << format_double(threshold) << '\n'
      << "required_ell_at_lambda=" << format_double(required) << '\n'
      << "condition_ok=" << (a.ell >= required ? "true" : "false") << '\n'
      << "ell_at_least_ell_eta=" << (a.ell >= threshold ? "true" : "false") << '\n'
      << "dominance_margins=" << format_double(margins.kappa_squared_term) << ','
      << format_double(margins.kappa_term) << ',' << format_double(margins.noise_term) << '\n';
  if (a.c == 1.0) out << "note: c = 1 schedule carries a (log ell)^{b/(b+1)} factor in the rate\n";
  return kExitOk;
}

struct SimulateArgs {
  std::string config;
  std::string records_out;
  std::string report_out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  std::optional<std::string> seed_override;
  if (const char* env = std::getenv("EFFDIM_SEED"); env != nullptr && *env != '\0') seed_override = env;
  auto config = load_run_config(a.config, seed_override);
  if (!a.records_out.empty()) config.records_out = a.records_out;
  if (!a.report_out.empty()) config.report_out = a.report_out;

  const auto records = experiments::rate_sweep(config.sweep);
  const auto& m = config.sweep.model;
  std::vector<experiments::TheoryComparison> reports;
  reports.push_back(experiments::compare_with_theory(records, m.b, m.c, config.aggregate, config.burn_in));
  const auto other = config.aggregate == experiments::Aggregate::median ? experiments::Aggregate::mean
                                                                        : experiments::Aggregate::median;
  reports.push_back(experiments::compare_with_theory(records, m.b, m.c, other, config.burn_in));

  std::ostringstream records_text;
  experiments::write_records(records_text, records);
  std::ostringstream report_text;
  experiments::write_report_csv(report_text, reports);
  write_file_atomically(config.records_out, records_text.str());
  write_file_atomically(config.report_out, report_text.str());

  out << "records=" << config.records_out.string() << " (" << records.size() << " records)\n"
      << "report=" << config.report_out.string() << '\n';
  for (const auto& r : reports) {
    out << experiments::to_string(r.aggregate) << ": fitted_slope=" << format_double(r.fit.slope)
        << " theoretical_slope=" << format_double(r.theoretical_slope)
        << " difference=" << format_double(r.difference) << " r_squared=" << format_double(r.fit.r_squared)
        << " slope_stderr=" << format_double(r.fit.slope_stderr) << '\n';
  }
  if (m.c == 1.0) out << "note: c = 1 fit ignores the (log ell)^{b/(b+1)} factor of the rate\n";
  return kExitOk;
}

struct CounterexampleArgs {
  double b = 2.0;
  double witness = 0.1;
};

int cmd_counterexample(const CounterexampleArgs& a, std::ostream& out) {
  const double closed = dimension::counterexample_threshold(a.b);
  const double bisected = dimension::counterexample_threshold_bisection(a.b);
  const double gap = dimension::wrong_inequality_gap(a.witness, a.b);
  out << "b=" << format_double(a.b) << '\n'
      << "threshold_closed_form=" << format_double(closed) << '\n'
      << "threshold_bisection=" << format_double(bisected) << '\n'
      << "relative_difference=" << format_double(std::abs(bisected - closed) / closed) << '\n'
      << "witness_beta=" << format_double(a.witness) << '\n'
      << "witness_gap=" << format_double(gap) << '\n'
      << "witness_violates=" << (gap > 0.0 ? "true" : "false") << '\n';
  return kExitOk;
}

struct ConvergenceArgs {
  double beta = 1.0;
  double b = 2.0;
  double lambda_min = 1e-3;
  double lambda_max = 1e-1;
  std::size_t points = 5;
  std::size_t ell = 1000;
  std::size_t reps = 5;
  std::size_t n_modes = constants::kDefaultModes;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_effdim_convergence(const ConvergenceArgs& a, std::ostream& out) {
  const auto grid = dimension::log_grid(a.lambda_min, a.lambda_max, a.points);
  const auto model = synth::build_model(a.beta, a.b, a.n_modes);
  const auto rows = experiments::effdim_convergence_experiment(model, grid, a.ell, a.reps, a.seed);
  std::ostringstream csv;
  experiments::write_convergence_csv(csv, rows);
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_file_atomically(a.out, csv.str());
    out << "wrote " << rows.size() << " rows to " << a.out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective dimension bounds and KRR rate checks"};
  app.name("effdim");
  app.require_subcommand(1);

  EffdimArgs effdim_args;
  auto* effdim_cmd = app.add_subcommand("effdim", "Exact N(lambda) against the corrected and claimed bounds");
  effdim_cmd->add_option("--beta", effdim_args.beta, "Eigenvalue scale beta")->capture_default_str();
  effdim_cmd->add_option("--b", effdim_args.b, "Decay exponent b > 1")->capture_default_str();
  effdim_cmd->add_option("--lambda", effdim_args.lambda, "Regularization lambda > 0")->required();
  effdim_cmd->add_option("--tol", effdim_args.tol, "Absolute tolerance of the exact sum")->capture_default_str();
  effdim_cmd->add_flag("--csv", effdim_args.csv, "Also print a CSV row");

  FigureArgs figure_args;
  auto* figure_cmd = app.add_subcommand("bounds-figure", "CSV of exact, corrected and claimed curves over lambda");
  figure_cmd->add_option("--beta", figure_args.beta)->capture_default_str();
  auto* figure_b = figure_cmd->add_option("--b", figure_args.b)->capture_default_str();
  figure_cmd->add_option("--lambda-min", figure_args.lambda_min)->capture_default_str();
  figure_cmd->add_option("--lambda-max", figure_args.lambda_max)->capture_default_str();
  figure_cmd->add_option("--points", figure_args.points)->capture_default_str();
  figure_cmd->add_option("--tol", figure_args.tol)->capture_default_str();
  figure_cmd->add_option("--out", figure_args.out, "Output CSV path")->required();

  RiskArgs risk_args;
  auto* risk_cmd = app.add_subcommand("risk-bound", "Terms and validity flags of the excess-risk bound");
  risk_cmd->add_option("--b", risk_args.b, "Decay exponent b > 1 or 'inf'")->capture_default_str();
  risk_cmd->add_option("--c", risk_args.c)->capture_default_str();
  risk_cmd->add_option("--beta", risk_args.beta)->capture_default_str();
  risk_cmd->add_option("--alpha", risk_args.alpha)->capture_default_str();
  risk_cmd->add_option("--R", risk_args.R)->capture_default_str();
  risk_cmd->add_option("--kappa", risk_args.kappa)->capture_default_str();
  risk_cmd->add_option("--M", risk_args.M)->capture_default_str();
  risk_cmd->add_option("--Sigma", risk_args.Sigma)->capture_default_str();
  risk_cmd->add_option("--lambda", risk_args.lambda)->required();
  risk_cmd->add_option("--ell", risk_args.ell)->required();
  risk_cmd->add_option("--eta", risk_args.eta)->capture_default_str();

  ScheduleArgs schedule_args;
  auto* schedule_cmd = app.add_subcommand("schedule", "lambda_ell, rate exponent and sample-size threshold");
  schedule_cmd->add_option("--b", schedule_args.b)->capture_default_str();
  schedule_cmd->add_option("--c", schedule_args.c)->capture_default_str();
  schedule_cmd->add_option("--ell", schedule_args.ell)->required();
  schedule_cmd->add_option("--eta", schedule_args.eta)->capture_default_str();
  schedule_cmd->add_option("--kappa", schedule_args.kappa)->capture_default_str();
  schedule_cmd->add_option("--beta", schedule_args.beta)->capture_default_str();

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the KRR rate sweep described by a config file");
  simulate_cmd->add_option("--config", simulate_args.config, "Run config (key = value)")->required();
  simulate_cmd->add_option("--records-out", simulate_args.records_out, "Override records_out");
  simulate_cmd->add_option("--report-out", simulate_args.report_out, "Override report_out");

  CounterexampleArgs counter_args;
  auto* counter_cmd = app.add_subcommand("counterexample", "Threshold beta* below which integral <= b/(b-1) fails");
  counter_cmd->add_option("--b", counter_args.b)->required();
  counter_cmd->add_option("--witness", counter_args.witness)->capture_default_str();

  ConvergenceArgs conv_args;
  auto* conv_cmd = app.add_subcommand("effdim-convergence", "Empirical vs exact effective dimension");
  conv_cmd->add_option("--beta", conv_args.beta)->capture_default_str();
  conv_cmd->add_option("--b", conv_args.b)->capture_default_str();
  conv_cmd->add_option("--lambda-min", conv_args.lambda_min)->capture_default_str();
  conv_cmd->add_option("--lambda-max", conv_args.lambda_max)->capture_default_str();
  conv_cmd->add_option("--points", conv_args.points)->capture_default_str();
  conv_cmd->add_option("--ell", conv_args.ell)->capture_default_str();
  conv_cmd->add_option("--reps", conv_args.reps)->capture_default_str();
  conv_cmd->add_option("--n-modes", conv_args.n_modes)->capture_default_str();
  conv_cmd->add_option("--seed", conv_args.seed)->capture_default_str();
  conv_cmd->add_option("--out", conv_args.out, "Output CSV path (stdout if omitted)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (effdim_cmd->parsed()) return cmd_effdim(effdim_args, out);
    if (figure_cmd->parsed()) {
      figure_args.b_given = figure_b->count() > 0;
      return cmd_bounds_figure(figure_args, out);
    }
    if (risk_cmd->parsed()) return cmd_risk_bound(risk_args, out);
    if (schedule_cmd->parsed()) return cmd_schedule(schedule_args, out);
    if (simulate_cmd->parsed()) return cmd_simulate(simulate_args, out);
    if (counter_cmd->parsed()) return cmd_counterexample(counter_args, out);
    if (conv_cmd->parsed()) return cmd_effdim_convergence(conv_args, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace effdim::cli
