#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ffn/falsifier.hpp"

namespace ffn {

/// One seeded falsification run of a (network, property) pair.
struct RunRecord {
  std::string property_name;
  std::string network_name;
  std::size_t run_index = 0;
  Verdict verdict = Verdict::unknown;
  double wall_time_s = 0.0;
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> counterexample;
  std::optional<std::string> error;  // loader/config failure for this pair
};

/// Per-pair summary; means are computed only over falsified runs.
struct AggregateRecord {
  std::string property_name;
  std::string network_name;
  std::size_t total_runs = 0;
  std::size_t falsified_count = 0;
  std::optional<double> mean_time_over_falsified_s;
  std::optional<double> mean_samples_over_falsified;
};

struct ManifestEntry {
  std::filesystem::path network_path;
  std::filesystem::path property_path;
};

/// Parses a manifest: one "network_path, property_path" pair per line,
/// '#' comments. Throws ParseError.
std::vector<ManifestEntry> parse_manifest(const std::filesystem::path& path);

/// Loads a network by extension: ".nnet" uses the NNet loader, anything
/// else the native JSON loader.
Network load_network_auto(const std::filesystem::path& path);

SafetyProperty load_property_file(const std::filesystem::path& path);

/// Single-run JSON report:
/// {verdict, counterexample:{input,output}, stats:{samples,iterations,
///  restarts,time_s,seed,objective}}.
nlohmann::json single_run_json(const FalsificationOutcome& outcome);

std::string single_run_text(const FalsificationOutcome& outcome);

/// Executes N seeded runs per manifest entry (seeds base..base+N-1), up
/// to `jobs` entries concurrently. Pair-level load failures are recorded
/// in-row and the batch continues.
std::vector<RunRecord> run_batch(const std::vector<ManifestEntry>& entries,
                                 std::size_t runs, std::size_t jobs,
                                 const FalsifierConfig& cfg);

std::vector<AggregateRecord> aggregate(const std::vector<RunRecord>& records);

/// CSV report: a header row plus one row per run, then an aggregate
/// summary block. `with_timing` = false blanks the time column so two
/// seeded batches can be compared byte for byte.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records,
               const std::vector<AggregateRecord>& aggregates,
               bool with_timing);

/// Full-precision vector rendering that round-trips through parsing.
std::string format_vector(std::span<const double> v);

}  // namespace ffn
