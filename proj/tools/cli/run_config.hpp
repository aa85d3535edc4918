#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "effdim/experiments.hpp"

namespace effdim::cli {

// Flat key = value configuration for `effdim simulate`. Lines starting with
// '#' are comments; trailing '# ...' comments are stripped.
struct RunConfig {
  experiments::SweepConfig sweep;
  experiments::Aggregate aggregate = experiments::Aggregate::median;
  std::size_t burn_in = experiments::kDefaultBurnIn;
  std::filesystem::path records_out = "records.jsonl";
  std::filesystem::path report_out = "report.csv";
};

// Parses and validates. Unknown keys, malformed values and precondition
// violations throw ValidationError naming the key. `seed_override` replaces
// the seed read from the file (EFFDIM_SEED).
RunConfig parse_run_config(std::istream& in, std::optional<std::string> seed_override = std::nullopt);
RunConfig load_run_config(const std::filesystem::path& path,
                          std::optional<std::string> seed_override = std::nullopt);

}  // namespace effdim::cli
