#include <catch2/catch_amalgamated.hpp>

#include "rainbow/pipeline.hpp"

using namespace rainbow;

namespace {

ExperimentConfig make_config(const std::string& text) {
  return ExperimentConfig::from_keyvalues(KeyValues::parse_string(text));
}

void check_record_invariants(const std::vector<TrialRecord>& recs) {
  for (const TrialRecord& r : recs) {
    // verify result present exactly for solver successes
    if (r.outcome == "found")
      CHECK(r.verified != "-");
    else
      CHECK(r.verified == "-");
  }
}

} // namespace

TEST_CASE("complete colors succeed in every pipeline") {
  {
    ExperimentConfig cfg = make_config(
        "kind=pm\nn=12\np=1\neps=0.1\nadversary.kind=none\ntrials=5\nseed=3\n");
    auto recs = run_pm_pipeline(cfg);
    PipelineSummary s = summarize(recs);
    CHECK(s.verified_pass == 5);
    check_record_invariants(recs);
  }
  {
    ExperimentConfig cfg = make_config(
        "kind=hc\nn=8\np=1\neps=0.1\nadversary.kind=none\ntrials=5\nseed=3\n");
    auto recs = run_hc_pipeline(cfg);
    CHECK(summarize(recs).verified_pass == 5);
    check_record_invariants(recs);
  }
  {
    ExperimentConfig cfg = make_config(
        "kind=pm-bip\nn=12\np=1\neps=0.1\nadversary.kind=none\ntrials=5\nseed=3\n");
    auto recs = run_pm_bipartite_pipeline(cfg);
    CHECK(summarize(recs).verified_pass == 5);
    check_record_invariants(recs);
  }
  {
    ExperimentConfig cfg = make_config(
        "kind=kpm\nn=4\nk=3\nd=2\np=1\neps=0.1\ntrials=5\nseed=3\n");
    auto recs = run_kpm_pipeline(cfg);
    CHECK(summarize(recs).verified_pass == 5);
    check_record_invariants(recs);
  }
}

TEST_CASE("rainbow hamilton cycle on three complete colors") {
  ExperimentConfig cfg = make_config(
      "kind=hc\nn=3\np=1\neps=0.01\nadversary.kind=none\ntrials=1\nseed=1\n");
  auto recs = run_hc_pipeline(cfg);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].outcome == "found");
  CHECK(recs[0].verified == "pass");
}

TEST_CASE("records do not depend on the worker count") {
  const std::string base =
      "kind=pm\nn=20\np=0.8\neps=0.1\nadversary.kind=random-thinning\n"
      "trials=12\nseed=77\n";
  ExperimentConfig one = make_config(base + "jobs=1\n");
  ExperimentConfig three = make_config(base + "jobs=3\n");
  auto r1 = run_pm_pipeline(one);
  auto r3 = run_pm_pipeline(three);
  REQUIRE(r1.size() == r3.size());
  for (std::size_t i = 0; i < r1.size(); ++i)
    CHECK(trial_csv_row(one, 10, r1[i]) == trial_csv_row(three, 10, r3[i]));
}

TEST_CASE("one trial's failure never aborts the batch") {
  // a codegree target beyond n^(k-d) is unsatisfiable in every trial
  ExperimentConfig cfg = make_config(
      "kind=kpm\nn=4\nk=3\nd=2\np=0.9\neps=0.1\ntrials=4\nseed=5\n"
      "adversary.floor=9\n");
  auto recs = run_kpm_pipeline(cfg);
  REQUIRE(recs.size() == 4);
  for (const TrialRecord& r : recs) {
    CHECK(r.outcome == "error:UnsatisfiableFloor");
    CHECK(r.verified == "-");
  }
}

TEST_CASE("codegree repair reaches the target and only adds edges") {
  const RandomSeed seed{88, 907, 0, 0};
  for (auto [k, d, n, p] : std::vector<std::tuple<int, int, int, double>>{
           {3, 2, 6, 0.5}, {3, 1, 5, 0.3}, {4, 2, 4, 0.4}, {4, 3, 4, 0.5}}) {
    KPartiteHypergraph before = sample_kpartite_color(k, n, p, seed);
    long long scale = 1;
    for (int i = 0; i < k - d; ++i) scale *= n;
    const long long target = (scale + 1) / 2 + 1;
    KPartiteHypergraph after = before;
    raise_crossing_codegree(after, d, target);
    CHECK(crossing_codegree(after, d) >= target);
    before.for_each_edge([&](const int* t) {
      CHECK(after.has_edge(std::vector<int>(t, t + k)));
    });
    CHECK(after.edge_count() >= before.edge_count());
    CHECK_THROWS_AS(raise_crossing_codegree(after, d, scale + 1),
                    UnsatisfiableFloor);
  }
}

TEST_CASE("run_experiment writes csv and honors --assert") {
  namespace fs = std::filesystem;
  const std::string out =
      (fs::temp_directory_path() / "rainbowlab_pipe_test").string();
  fs::remove_all(out);
  {
    ExperimentConfig cfg = make_config(
        "kind=pm\nn=12\np=1\neps=0.1\ntrials=3\nseed=4\nout=" + out + "\n" +
        "jsonl=true\n");
    std::ostringstream log;
    CHECK(run_experiment(cfg, log) == 0);
    CHECK(fs::exists(out + "/pm.csv"));
    CHECK(fs::exists(out + "/pm.jsonl"));
    CHECK(log.str().find("PASS") != std::string::npos);
  }
  {
    ExperimentConfig cfg = make_config(
        "kind=kpm\nn=4\nk=3\nd=2\np=0.9\neps=0.1\ntrials=2\nseed=5\n"
        "adversary.floor=9\nout=" + out + "\n");
    cfg.assert_threshold = true;
    std::ostringstream log;
    CHECK(run_experiment(cfg, log) == 2);
  }
  {
    ExperimentConfig cfg = make_config("kind=pm\nn=13\np=0.5\ntrials=1\n");
    std::ostringstream log;
    CHECK_THROWS_AS(run_experiment(cfg, log), ConfigError);
  }
  fs::remove_all(out);
}

TEST_CASE("run_experiment writes the concentration csv") {
  namespace fs = std::filesystem;
  const std::string out =
      (fs::temp_directory_path() / "rainbowlab_conc_test").string();
  fs::remove_all(out);
  ExperimentConfig cfg = make_config(
      "kind=conc\nseed=12\nout=" + out + "\n" +
      "conc.degree.n=40\nconc.degree.count=5\nconc.degree.p=1\n"
      "conc.degree.eps=0.1\n"
      "conc.partition.n=12\nconc.partition.p=0.9\nconc.partition.partitions=2\n"
      "conc.partition.eps=0.95\n"
      "conc.aux.n=12\nconc.aux.p=0.9\nconc.aux.perms=6\n"
      "conc.moments.families=3\n");
  std::ostringstream log;
  int rc = run_experiment(cfg, log);
  CHECK(rc == 0);
  CHECK(fs::exists(out + "/conc.csv"));
  std::ifstream in(out + "/conc.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "check,params,total,in_window,fraction,threshold,pass");
  fs::remove_all(out);
}

TEST_CASE("unknown config keys are rejected at run time") {
  namespace fs = std::filesystem;
  const std::string out =
      (fs::temp_directory_path() / "rainbowlab_pipe_test2").string();
  ExperimentConfig cfg = make_config(
      "kind=pm\nn=12\np=1\ntrials=1\nseed=1\ntypo_key=1\nout=" + out + "\n");
  std::ostringstream log;
  CHECK_THROWS_AS(run_experiment(cfg, log), ConfigError);
  fs::remove_all(out);
}

TEST_CASE("concentration suite emits every standard row") {
  ExperimentConfig cfg = make_config(
      "kind=conc\nseed=11\n"
      "conc.degree.n=60\nconc.degree.count=10\nconc.degree.p=1\n"
      "conc.degree.eps=0.1\n"
      "conc.partition.n=16\nconc.partition.p=0.9\nconc.partition.partitions=3\n"
      "conc.partition.eps=0.9\n"
      "conc.aux.n=16\nconc.aux.p=0.9\nconc.aux.perms=10\n"
      "conc.moments.families=4\n");
  auto rows = run_concentration_suite(cfg);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].report.check == "degree-concentration");
  CHECK(rows[1].report.check == "partition-degrees");
  CHECK(rows[2].report.check == "aux-min-degree-bipartite");
  CHECK(rows[3].report.check == "aux-min-degree-digraph");
  CHECK(rows[4].report.check == "exact-moments");
  // p=1 colors concentrate trivially; exact moments always hold
  CHECK(rows[0].report.pass());
  CHECK(rows[4].report.in_window == rows[4].report.total);
}

TEST_CASE("aux stats over a full family, sampled mode") {
  ExperimentConfig cfg = make_config(
      "kind=aux-stats\nn=10\np=0.6\nseed=21\naux.family=full\n"
      "aux.direction=in\naux.mode=sampled\naux.samples=300\naux.targets=3\n");
  auto reps = run_aux_stats(cfg);
  REQUIRE(reps.size() == 3);
  for (const auto& r : reps) {
    CHECK(r.target_kind == "D-in");
    CHECK(r.dist.samples == 300);
    CHECK_FALSE(r.dist.exhaustive);
    CHECK(r.var_bound >= r.mu);
  }
}
