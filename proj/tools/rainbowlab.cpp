// rainbowlab: batch experiment runner for rainbow matchings and Hamilton
// cycles in systems of random graphs, driven by flat key=value configs.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rainbow/config.hpp"
#include "rainbow/pipeline.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  std::string seed;
  std::string trials;
  std::string jobs;
  bool assert_threshold = false;
};

int run_kind(const std::string& kind, const CliOverrides& cli) {
  rainbow::KeyValues kv;
  if (!cli.config_path.empty())
    kv = rainbow::KeyValues::parse_file(cli.config_path);
  kv.set("kind", kind);
  if (!cli.out_dir.empty()) kv.set("out", cli.out_dir);
  if (!cli.seed.empty()) kv.set("seed", cli.seed);
  if (!cli.trials.empty()) kv.set("trials", cli.trials);
  if (!cli.jobs.empty()) kv.set("jobs", cli.jobs);

  rainbow::ExperimentConfig cfg = rainbow::ExperimentConfig::from_keyvalues(kv);
  cfg.assert_threshold = cli.assert_threshold;
  return rainbow::run_experiment(cfg, std::cout);
}

void add_common(CLI::App* sub, CliOverrides& cli) {
  sub->add_option("--config", cli.config_path, "key=value config file");
  sub->add_option("--out", cli.out_dir, "output directory");
  sub->add_option("--seed", cli.seed, "root seed (u64)");
  sub->add_option("--trials", cli.trials, "number of trials");
  sub->add_option("--jobs", cli.jobs, "worker threads");
  sub->add_flag("--assert", cli.assert_threshold,
                "exit 2 when the success threshold is missed");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"rainbow structure experiments on systems of random graphs"};
  app.require_subcommand(1);

  CliOverrides cli;
  const char* kinds[] = {"pm", "pm-bip", "hc", "kpm", "conc", "aux-stats"};
  const char* descs[] = {
      "rainbow perfect matching pipeline",
      "rainbow perfect matching, bipartite colors",
      "rainbow Hamilton cycle pipeline",
      "rainbow perfect matching in k-partite k-graphs",
      "concentration window suite",
      "auxiliary degree statistics per vertex"};
  for (int i = 0; i < 6; ++i)
    add_common(app.add_subcommand(kinds[i], descs[i]), cli);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1; // usage problems are config errors
  }

  const std::string kind = app.get_subcommands().front()->get_name();
  try {
    return run_kind(kind, cli);
  } catch (const rainbow::Error& e) {
    std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
