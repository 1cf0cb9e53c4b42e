#pragma once
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "rainbow/adversary.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/solvers.hpp"

namespace rainbow {

// Flat key=value configuration with dotted keys, '#' comments, one pair per
// line. Keys actually read are tracked so typos surface as errors.
class KeyValues {
public:
  static KeyValues parse_string(const std::string& text) {
    KeyValues kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": expected key=value, got: " + line);
      std::string key = trim(line.substr(0, eq));
      std::string val = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) +
                                         ": empty key");
      if (kv.values_.count(key))
        throw ConfigError("config: duplicate key " + key);
      kv.values_[key] = val;
    }
    return kv;
  }

  static KeyValues parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& dflt) const {
    touched_.insert(key);
    auto it = values_.find(key);
    return it == values_.end() ? dflt : it->second;
  }

  long long get_int(const std::string& key, long long dflt) const {
    touched_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    try {
      std::size_t used = 0;
      long long v = std::stoll(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + ": expected integer, got " +
                        it->second);
    }
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const {
    touched_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + ": expected u64, got " + it->second);
    }
  }

  double get_double(const std::string& key, double dflt) const {
    touched_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    try {
      std::size_t used = 0;
      double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + ": expected number, got " +
                        it->second);
    }
  }

  bool get_bool(const std::string& key, bool dflt) const {
    std::string v = get_string(key, dflt ? "true" : "false");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key " + key + ": expected boolean, got " + v);
  }

  void set(const std::string& key, const std::string& val) { values_[key] = val; }

  // After a pipeline has read everything it understands, leftover keys are
  // almost certainly typos.
  void reject_unknown() const {
    for (const auto& [key, val] : values_)
      if (!touched_.count(key))
        throw ConfigError("config: unknown key " + key);
  }

private:
  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> touched_;
};

// Common experiment parameters; kind-specific extras stay in `raw`.
struct ExperimentConfig {
  std::string kind;
  int n = 0;
  double p = 0.0;
  double eps = 0.1;
  int k = 3, d = 2;
  AdversaryStrategy adversary{};
  int floor_override = -1; // -1: derive from (n, p, eps)
  long long trials = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
  SolveBudget budget{};
  double threshold = 0.95;
  std::string out_dir = ".";
  bool jsonl = false;
  bool verbose_pi = false;
  bool assert_threshold = false;
  KeyValues raw;

  static ExperimentConfig from_keyvalues(KeyValues kv) {
    ExperimentConfig cfg;
    cfg.kind = kv.get_string("kind", "");
    cfg.n = static_cast<int>(kv.get_int("n", 0));
    cfg.p = kv.get_double("p", 0.0);
    cfg.eps = kv.get_double("eps", 0.1);
    cfg.k = static_cast<int>(kv.get_int("k", 3));
    cfg.d = static_cast<int>(kv.get_int("d", 2));
    cfg.adversary.kind =
        adversary_kind_from_string(kv.get_string("adversary.kind", "none"));
    cfg.adversary.focus = static_cast<int>(kv.get_int("adversary.focus", 1)) - 1;
    cfg.floor_override = static_cast<int>(kv.get_int("adversary.floor", -1));
    cfg.trials = kv.get_int("trials", 1);
    cfg.seed = kv.get_u64("seed", 0);
    cfg.jobs = static_cast<int>(kv.get_int("jobs", 1));
    cfg.budget.node_limit = kv.get_int("solver.node_limit", 1'000'000);
    cfg.budget.time_ms = kv.get_int("solver.time_ms", 2000);
    cfg.budget.restarts = static_cast<int>(kv.get_int("solver.restarts", 25));
    cfg.threshold = kv.get_double("threshold.success", 0.95);
    cfg.out_dir = kv.get_string("out", ".");
    cfg.jsonl = kv.get_bool("jsonl", false);
    cfg.verbose_pi = kv.get_bool("verbose_pi", false);
    cfg.raw = std::move(kv);
    return cfg;
  }

  void validate_pipeline() const {
    static const std::set<std::string> kinds{"pm", "pm-bip", "hc",
                                             "kpm", "conc", "aux-stats"};
    if (!kinds.count(kind)) throw ConfigError("unknown experiment kind: " + kind);
    if (kind == "conc" || kind == "aux-stats") return;
    if (n < 1) throw ConfigError("n must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("need 0 < p <= 1");
    if (!(eps > 0.0)) throw ConfigError("need eps > 0");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    budget.validate();
    if ((kind == "pm" || kind == "pm-bip") && n % 2 != 0)
      throw ConfigError(kind + ": n must be even");
    if (kind == "kpm") {
      if (k <= d || d < 1) throw ConfigError("kpm: need k > d >= 1");
      if (2 * d < k)
        throw UnknownThreshold(
            "kpm: the codegree threshold is unknown for d < k/2");
      if (n > 10) throw ConfigError("kpm: exact solver is intended for n <= 10");
    }
  }
};

} // namespace rainbow
