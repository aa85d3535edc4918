#include <json.hpp>

#include <istream>
#include <ostream>
#include <string>

#include "effdim/errors.hpp"
#include "effdim/experiments.hpp"
#include "effdim/format.hpp"

namespace effdim::experiments {

using json = nlohmann::ordered_json;

std::string to_record_line(const RateExperimentRecord& record) {
  json j;
  j["ell"] = record.ell;
  j["repetition"] = record.repetition;
  j["lambda"] = record.lambda;
  j["excess_risk"] = record.excess_risk;
  j["seed"] = record.seed;
  j["b"] = record.params.b;
  j["c"] = record.params.c;
  j["beta"] = record.params.beta;
  j["sigma"] = record.params.sigma;
  j["n_modes"] = record.params.n_modes;
  j["delta"] = record.params.delta;
  return j.dump();
}

RateExperimentRecord parse_record_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
    RateExperimentRecord r;
    r.ell = j.at("ell").get<std::size_t>();
    r.repetition = j.at("repetition").get<std::size_t>();
    r.lambda = j.at("lambda").get<double>();
    r.excess_risk = j.at("excess_risk").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.params.b = j.at("b").get<double>();
    r.params.c = j.at("c").get<double>();
    r.params.beta = j.at("beta").get<double>();
    r.params.sigma = j.at("sigma").get<double>();
    r.params.n_modes = j.at("n_modes").get<std::size_t>();
    r.params.delta = j.at("delta").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed record line: ") + e.what());
  }
}

void write_records(std::ostream& out, std::span<const RateExperimentRecord> records) {
  for (const auto& r : records) out << to_record_line(r) << '\n';
}

std::vector<RateExperimentRecord> read_records(std::istream& in) {
  std::vector<RateExperimentRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(parse_record_line(line));
  }
  return records;
}

void write_report_csv(std::ostream& out, std::span<const TheoryComparison> comparisons) {
  out << "aggregate,fitted_slope,theoretical_slope,difference,intercept,r_squared,slope_stderr,n_points,"
         "excluded_smallest,log_factor_ignored\n";
  for (const auto& c : comparisons) {
    out << to_string(c.aggregate) << ',' << format_double(c.fit.slope) << ',' << format_double(c.theoretical_slope)
        << ',' << format_double(c.difference) << ',' << format_double(c.fit.intercept) << ','
        << format_double(c.fit.r_squared) << ',' << format_double(c.fit.slope_stderr) << ',' << c.fit.n_points
        << ',' << c.excluded << ',' << (c.log_factor_ignored ? "true" : "false") << '\n';
  }
}

void write_convergence_csv(std::ostream& out, std::span<const EffDimConvergenceRow> rows) {
  out << "lambda,mean_empirical,min_empirical,max_empirical,exact,corrected\n";
  for (const auto& r : rows) {
    out << format_double(r.lambda) << ',' << format_double(r.mean_empirical) << ','
        << format_double(r.min_empirical) << ',' << format_double(r.max_empirical) << ','
        << format_double(r.exact) << ',' << format_double(r.corrected) << '\n';
  }
}

}  // namespace effdim::experiments
