#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string_view>

#include "effdim/errors.hpp"

namespace effdim::cli {

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ValidationError("config key '" + key + "': not a number: '" + value + "'");
  return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("config key '" + key + "': not a nonnegative integer: '" + value + "'");
  }
  return out;
}

std::vector<std::size_t> parse_list(const std::string& key, const std::string& value) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto length = comma == std::string::npos ? std::string::npos : comma - start;
    const auto item = trim(std::string_view(value).substr(start, length));
    if (!item.empty()) out.push_back(static_cast<std::size_t>(parse_unsigned(key, item)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ValidationError("config key '" + key + "': list must be nonempty");
  return out;
}

void check(bool ok, const std::string& key, const std::string& constraint) {
  if (!ok) throw ValidationError("config key '" + key + "': " + constraint);
}

}  // namespace

RunConfig parse_run_config(std::istream& in, std::optional<std::string> seed_override) {
  std::map<std::string, std::string> values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    const auto content = trim(std::string_view(line).substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_number) + ": expected 'key = value'");
    }
    auto key = trim(std::string_view(content).substr(0, eq));
    auto value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ValidationError("config line " + std::to_string(line_number) + ": empty key");
    if (!values.emplace(key, value).second) throw ValidationError("config key '" + key + "' given more than once");
  }
  if (seed_override) values["seed"] = *seed_override;

  static const std::set<std::string> kKnown = {
      "b",           "c",          "beta",      "R",       "sigma",   "n_modes",     "delta",     "ell_grid",
      "repetitions", "seed",       "threads",   "aggregate", "burn_in", "records_out", "report_out",
  };
  for (const auto& [key, value] : values) {
    if (!kKnown.contains(key)) throw ValidationError("config key '" + key + "' is not recognized");
  }

  RunConfig config;
  auto& model = config.sweep.model;
  const auto get = [&](const std::string& key) -> const std::string* {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };
  if (auto v = get("b")) model.b = parse_real("b", *v);
  if (auto v = get("c")) model.c = parse_real("c", *v);
  if (auto v = get("beta")) model.beta = parse_real("beta", *v);
  if (auto v = get("R")) model.R = parse_real("R", *v);
  if (auto v = get("sigma")) model.sigma = parse_real("sigma", *v);
  if (auto v = get("n_modes")) model.n_modes = static_cast<std::size_t>(parse_unsigned("n_modes", *v));
  if (auto v = get("delta")) model.delta = parse_real("delta", *v);
  if (auto v = get("ell_grid")) {
    config.sweep.ell_grid = parse_list("ell_grid", *v);
  } else {
    throw ValidationError("config key 'ell_grid' is required");
  }
  if (auto v = get("repetitions")) {
    config.sweep.repetitions = static_cast<std::size_t>(parse_unsigned("repetitions", *v));
  }
  if (auto v = get("seed")) config.sweep.seed = parse_unsigned("seed", *v);
  if (auto v = get("threads")) config.sweep.threads = static_cast<unsigned>(parse_unsigned("threads", *v));
  if (auto v = get("aggregate")) config.aggregate = experiments::parse_aggregate(*v);
  if (auto v = get("burn_in")) config.burn_in = static_cast<std::size_t>(parse_unsigned("burn_in", *v));
  if (auto v = get("records_out")) config.records_out = *v;
  if (auto v = get("report_out")) config.report_out = *v;

  // Field-level checks first so errors name the config key.
  check(std::isfinite(model.b) && model.b > 1.0, "b", "must satisfy 1 < b < infinity");
  check(model.c >= 1.0 && model.c <= 2.0, "c", "must satisfy 1 <= c <= 2");
  check(std::isfinite(model.beta) && model.beta > 0.0, "beta", "must be positive");
  check(std::isfinite(model.R) && model.R > 0.0, "R", "must be positive");
  check(std::isfinite(model.sigma) && model.sigma >= 0.0, "sigma", "must be nonnegative");
  check(model.n_modes >= 1, "n_modes", "must be at least 1");
  check(std::isfinite(model.delta) && model.delta > 0.0, "delta", "must be positive");
  check(config.sweep.repetitions >= 1, "repetitions", "must be at least 1");
  std::set<std::size_t> distinct(config.sweep.ell_grid.begin(), config.sweep.ell_grid.end());
  check(distinct.size() >= config.burn_in + 2, "burn_in",
        "must leave at least two distinct ell_grid values for the fit");
  check(!config.records_out.empty(), "records_out", "must be a path");
  check(!config.report_out.empty(), "report_out", "must be a path");
  experiments::validate(config.sweep);
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path, std::optional<std::string> seed_override) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  return parse_run_config(in, std::move(seed_override));
}

}  // namespace effdim::cli
