#pragma once
#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "rainbow/config.hpp"
#include "rainbow/core.hpp"
#include "rainbow/errors.hpp"

#include <json.hpp>

namespace rainbow {

// Shortest round-trip decimal rendering; the CSV byte stream depends only on
// the config, never on formatting locale or float printf quirks.
inline std::string render(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string render_hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

// CSV fields must not smuggle separators or newlines.
inline std::string csv_sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

inline std::uint64_t permutation_digest(const std::vector<int>& images) {
  std::uint64_t h = 1469598103934665603ULL; // FNV offset basis
  for (int x : images) {
    h ^= static_cast<std::uint64_t>(x) + 1;
    h *= 1099511628211ULL;
  }
  return h;
}

// One pipeline trial. Wall time is measured but deliberately kept out of the
// CSV so reruns of the same config are byte-identical; it lives in the
// JSON-lines mirror.
struct TrialRecord {
  long long trial = 0;
  std::uint64_t root_seed = 0;
  int host_min_degree = 0;
  int host_max_degree = 0;
  int floor_target = 0;
  int thinned_min_degree = 0;
  std::uint64_t pi_digest = 0;
  std::vector<int> pi_images; // kept only under verbose_pi
  long long aux_edges = 0;
  int aux_min_degree = 0;
  std::string outcome = "error:Unknown"; // found | none | exhausted | error:<Code>
  std::string verified = "-";            // pass | fail | -
  std::string note;
  double wall_ms = 0.0;
};

inline const char* trial_csv_header() {
  return "trial,seed,n,m,p,eps,floor,host_min_deg,host_max_deg,"
         "thinned_min_deg,pi_digest,aux_edges,aux_min_deg,outcome,verified,note";
}

inline std::string trial_csv_row(const ExperimentConfig& cfg, int m,
                                 const TrialRecord& r) {
  std::string row;
  row += std::to_string(r.trial);
  row += ',';
  row += std::to_string(r.root_seed);
  row += ',';
  row += std::to_string(cfg.n);
  row += ',';
  row += std::to_string(m);
  row += ',';
  row += render(cfg.p);
  row += ',';
  row += render(cfg.eps);
  row += ',';
  row += std::to_string(r.floor_target);
  row += ',';
  row += std::to_string(r.host_min_degree);
  row += ',';
  row += std::to_string(r.host_max_degree);
  row += ',';
  row += std::to_string(r.thinned_min_degree);
  row += ',';
  row += render_hex64(r.pi_digest);
  row += ',';
  row += std::to_string(r.aux_edges);
  row += ',';
  row += std::to_string(r.aux_min_degree);
  row += ',';
  row += r.outcome;
  row += ',';
  row += r.verified;
  row += ',';
  row += csv_sanitize(r.note);
  return row;
}

inline void write_trial_csv(const std::string& path,
                            const ExperimentConfig& cfg, int m,
                            const std::vector<TrialRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << trial_csv_header() << "\n";
  for (const TrialRecord& r : records) out << trial_csv_row(cfg, m, r) << "\n";
}

inline void write_trial_jsonl(const std::string& path,
                              const ExperimentConfig& cfg, int m,
                              const std::vector<TrialRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const TrialRecord& r : records) {
    nlohmann::json j{{"trial", r.trial},
                     {"seed", r.root_seed},
                     {"n", cfg.n},
                     {"m", m},
                     {"p", cfg.p},
                     {"eps", cfg.eps},
                     {"floor", r.floor_target},
                     {"host_min_deg", r.host_min_degree},
                     {"host_max_deg", r.host_max_degree},
                     {"thinned_min_deg", r.thinned_min_degree},
                     {"pi_digest", render_hex64(r.pi_digest)},
                     {"aux_edges", r.aux_edges},
                     {"aux_min_deg", r.aux_min_degree},
                     {"outcome", r.outcome},
                     {"verified", r.verified},
                     {"note", r.note},
                     {"wall_ms", r.wall_ms}};
    if (!r.pi_images.empty()) {
      nlohmann::json pi = nlohmann::json::array();
      for (int x : r.pi_images) pi.push_back(x + 1);
      j["pi"] = pi;
    }
    out << j.dump() << "\n";
  }
}

struct PipelineSummary {
  long long trials = 0;
  long long found = 0;
  long long verified_pass = 0;
  long long none = 0;
  long long exhausted = 0;
  long long errors = 0;

  double success_fraction() const {
    return trials > 0
               ? static_cast<double>(verified_pass) / static_cast<double>(trials)
               : 0.0;
  }
};

inline PipelineSummary summarize(const std::vector<TrialRecord>& records) {
  PipelineSummary s;
  s.trials = static_cast<long long>(records.size());
  for (const TrialRecord& r : records) {
    if (r.outcome == "found") {
      ++s.found;
      if (r.verified == "pass") ++s.verified_pass;
    } else if (r.outcome == "none") {
      ++s.none;
    } else if (r.outcome == "exhausted") {
      ++s.exhausted;
    } else {
      ++s.errors;
    }
  }
  return s;
}

} // namespace rainbow
