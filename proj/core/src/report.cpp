#include "ffn/report.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "ffn/errors.hpp"
#include "ffn/nnet_io.hpp"

namespace ffn {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

/// Runs one manifest entry N times with consecutive seeds.
std::vector<RunRecord> run_entry(const ManifestEntry& entry, std::size_t runs,
                                 const FalsifierConfig& cfg) {
  const std::string net_name = entry.network_path.stem().string();
  std::vector<RunRecord> records;
  records.reserve(runs);

  std::string prop_name = entry.property_path.stem().string();
  try {
    const Network net = load_network_auto(entry.network_path);
    SafetyProperty prop = load_property_file(entry.property_path);
    if (!prop.name.empty()) prop_name = prop.name;
    prop = bind_property(prop, net);
    const ObjectivePlan plan = analyze_spec(*prop.predicate);

    for (std::size_t r = 0; r < runs; ++r) {
      FalsifierConfig run_cfg = cfg;
      run_cfg.base_seed = cfg.base_seed + r;
      const FalsificationOutcome outcome = falsify(net, prop, plan, run_cfg);
      RunRecord rec;
      rec.property_name = prop_name;
      rec.network_name = net_name;
      rec.run_index = r;
      rec.verdict = outcome.verdict;
      rec.wall_time_s = outcome.stats.wall_time_s;
      rec.samples_used = outcome.stats.total_samples;
      rec.seed = run_cfg.base_seed;
      if (outcome.counterexample)
        rec.counterexample = outcome.counterexample->input;
      records.push_back(std::move(rec));
    }
  } catch (const Error& e) {
    RunRecord rec;
    rec.property_name = prop_name;
    rec.network_name = net_name;
    rec.error = e.what();
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

std::string format_vector(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

std::vector<ManifestEntry> parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open manifest");

  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    const std::size_t comma = line.find(',');
    std::string net = comma == std::string::npos ? line : line.substr(0, comma);
    std::string prop = comma == std::string::npos ? "" : line.substr(comma + 1);
    auto strip = [](std::string& s) {
      const std::size_t b = s.find_first_not_of(" \t\r");
      const std::size_t e = s.find_last_not_of(" \t\r");
      s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    };
    strip(net);
    strip(prop);
    if (net.empty() && prop.empty()) continue;
    if (net.empty() || prop.empty())
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 'network_path, property_path'");
    entries.push_back({net, prop});
  }
  return entries;
}

Network load_network_auto(const std::filesystem::path& path) {
  if (path.extension() == ".nnet") return load_nnet(path);
  return load_native(path);
}

SafetyProperty load_property_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open property file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_property(text.str(), path.stem().string());
}

nlohmann::json single_run_json(const FalsificationOutcome& outcome) {
  nlohmann::json j;
  j["verdict"] = verdict_name(outcome.verdict);
  if (outcome.counterexample) {
    j["counterexample"] = {{"input", outcome.counterexample->input},
                           {"output", outcome.counterexample->output}};
  } else {
    j["counterexample"] = nullptr;
  }
  const SearchStats& s = outcome.stats;
  j["stats"] = {
      {"samples", s.total_samples},
      {"iterations", s.iterations},
      {"restarts", s.restarts},
      {"time_s", s.wall_time_s},
      {"seed", s.seed},
      {"objective", std::string(direction_name(s.objective_used.direction)) +
                        " o" + std::to_string(s.objective_used.target + 1)}};
  return j;
}

std::string single_run_text(const FalsificationOutcome& outcome) {
  std::ostringstream out;
  out << "verdict: " << verdict_name(outcome.verdict) << "\n";
  if (outcome.counterexample) {
    out << "counterexample input:  "
        << format_vector(outcome.counterexample->input) << "\n";
    out << "counterexample output: "
        << format_vector(outcome.counterexample->output) << "\n";
    out << "violated predicate:    " << outcome.counterexample->violated
        << "\n";
  }
  const SearchStats& s = outcome.stats;
  out << "samples: " << s.total_samples << "  iterations: " << s.iterations
      << "  restarts: " << s.restarts << "\n";
  out << "time_s: " << s.wall_time_s << "  seed: " << s.seed << "  objective: "
      << direction_name(s.objective_used.direction) << " o"
      << s.objective_used.target + 1 << "\n";
  return out.str();
}

std::vector<RunRecord> run_batch(const std::vector<ManifestEntry>& entries,
                                 std::size_t runs, std::size_t jobs,
                                 const FalsifierConfig& cfg) {
  std::vector<std::vector<RunRecord>> per_entry(entries.size());

  if (jobs <= 1) {
    for (std::size_t i = 0; i < entries.size(); ++i)
      per_entry[i] = run_entry(entries[i], runs, cfg);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < entries.size();
           i = next.fetch_add(1)) {
        per_entry[i] = run_entry(entries[i], runs, cfg);
      }
    };
    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min(jobs, entries.size());
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<RunRecord> records;
  for (auto& chunk : per_entry)
    for (auto& rec : chunk) records.push_back(std::move(rec));
  return records;
}

std::vector<AggregateRecord> aggregate(const std::vector<RunRecord>& records) {
  std::vector<AggregateRecord> aggs;
  auto find = [&aggs](const RunRecord& rec) -> AggregateRecord& {
    for (AggregateRecord& a : aggs) {
      if (a.property_name == rec.property_name &&
          a.network_name == rec.network_name)
        return a;
    }
    aggs.push_back({rec.property_name, rec.network_name, 0, 0, {}, {}});
    return aggs.back();
  };

  for (const RunRecord& rec : records) {
    if (rec.error) continue;
    AggregateRecord& a = find(rec);
    ++a.total_runs;
    if (rec.verdict == Verdict::falsified) {
      ++a.falsified_count;
      a.mean_time_over_falsified_s =
          a.mean_time_over_falsified_s.value_or(0.0) + rec.wall_time_s;
      a.mean_samples_over_falsified =
          a.mean_samples_over_falsified.value_or(0.0) +
          static_cast<double>(rec.samples_used);
    }
  }
  for (AggregateRecord& a : aggs) {
    if (a.falsified_count > 0) {
      *a.mean_time_over_falsified_s /= static_cast<double>(a.falsified_count);
      *a.mean_samples_over_falsified /= static_cast<double>(a.falsified_count);
    }
  }
  return aggs;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records,
               const std::vector<AggregateRecord>& aggregates,
               bool with_timing) {
  out << "property,network,run,verdict,time_s,samples,seed,counterexample\n";
  for (const RunRecord& rec : records) {
    out << csv_quote(rec.property_name) << ',' << csv_quote(rec.network_name)
        << ',' << rec.run_index << ',';
    if (rec.error) {
      out << "error,,,," << csv_quote(*rec.error) << '\n';
      continue;
    }
    out << verdict_name(rec.verdict) << ',';
    if (with_timing) out << format_double(rec.wall_time_s);
    out << ',' << rec.samples_used << ',' << rec.seed << ',';
    if (rec.counterexample) out << csv_quote(format_vector(*rec.counterexample));
    out << '\n';
  }

  out << "\n# aggregate\n";
  out << "property,network,total_runs,falsified_count,mean_time_s,"
         "mean_samples\n";
  for (const AggregateRecord& a : aggregates) {
    out << csv_quote(a.property_name) << ',' << csv_quote(a.network_name) << ','
        << a.total_runs << ',' << a.falsified_count << ',';
    if (a.mean_time_over_falsified_s && with_timing)
      out << format_double(*a.mean_time_over_falsified_s);
    out << ',';
    if (a.mean_samples_over_falsified)
      out << format_double(*a.mean_samples_over_falsified);
    out << '\n';
  }
}

}  // namespace ffn
