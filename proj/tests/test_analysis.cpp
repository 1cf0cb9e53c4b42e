#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "rainbow/analysis.hpp"

using namespace rainbow;

namespace {
const RandomSeed kSeed{717171, 906, 0, 0};

// independent enumeration of the aux degree of right vertex j over all
// permutations, tracking mean and variance as exact rationals
struct EnumMoments {
  Rational mean, variance;
  int median;
};

EnumMoments enumerate_aux_degree(const BipartiteFamily& fam, int j) {
  const int m = fam.size();
  std::vector<int> values;
  oracle::for_each_permutation(m, [&](const std::vector<int>& pi) {
    int deg = 0;
    for (int i = 0; i < m; ++i)
      if (fam.colors[pi[i]].has_edge(i, j)) ++deg;
    values.push_back(deg);
  });
  long long s1 = 0, s2 = 0;
  for (int v : values) {
    s1 += v;
    s2 += static_cast<long long>(v) * v;
  }
  const long long n = static_cast<long long>(values.size());
  EnumMoments out;
  out.mean = Rational(s1, n);
  out.variance = Rational(s2, n) - out.mean * out.mean;
  std::sort(values.begin(), values.end());
  out.median = values[(n - 1) / 2]; // lower middle
  return out;
}

} // namespace

TEST_CASE("expected aux degree, constant and hand-sized cases") {
  // every color gives j the same degree d -> mu = d
  BipartiteFamily fam = sample_bipartite_family(8, 4, 1.0, kSeed);
  CHECK(expected_aux_degree(fam, 1) == Rational(4));

  BipartiteFamily two;
  two.left_size = two.right_size = 2;
  two.left_labels = {0, 1};
  two.right_labels = {2, 3};
  two.colors.assign(2, BipartiteGraph(2, 2));
  two.colors[0].add_edge(0, 0);            // degree of j=0 in color 1: 1
  two.colors[1].add_edge(0, 0);            // degree of j=0 in color 2: 2
  two.colors[1].add_edge(1, 0);
  CHECK(expected_aux_degree(two, 0) == Rational(3, 2));

  CHECK_THROWS_AS(expected_aux_degree(two, 2), DomainError);
}

TEST_CASE("expected aux degree equals the enumeration mean exactly") {
  for (int t = 0; t < 10; ++t) {
    const int m = 3 + t % 3;
    BipartiteFamily fam =
        sample_bipartite_family(2 * m, m, 0.5, kSeed.with_trial(t));
    for (int j = 0; j < m; ++j) {
      EnumMoments em = enumerate_aux_degree(fam, j);
      CHECK(em.mean == expected_aux_degree(fam, j));
    }
  }
}

TEST_CASE("variance bound formula and domination") {
  CHECK(aux_degree_variance_bound(Rational(0), 5) == Rational(0));
  CHECK(aux_degree_variance_bound(Rational(3), 4) == Rational(6));
  CHECK_THROWS_AS(aux_degree_variance_bound(Rational(1), 1), DomainError);

  for (int t = 0; t < 8; ++t) {
    BipartiteFamily fam =
        sample_bipartite_family(10, 5, 0.6, kSeed.with_trial(50 + t));
    for (int j = 0; j < 5; ++j) {
      EnumMoments em = enumerate_aux_degree(fam, j);
      CHECK(em.variance <= aux_degree_variance_bound(em.mean, 5));
    }
  }
}

TEST_CASE("aux degree distribution: point mass for identical colors") {
  BipartiteGraph color = sample_bnp(4, 4, 0.5, kSeed);
  BipartiteFamily fam;
  fam.left_size = fam.right_size = 4;
  fam.left_labels = {0, 1, 2, 3};
  fam.right_labels = {4, 5, 6, 7};
  fam.colors.assign(4, color);
  DegreeDistribution dist =
      exact_aux_degree_distribution(fam, 2, DistributionMode::Exhaustive());
  CHECK(dist.samples == 24);
  CHECK(dist.variance == Rational(0));
  CHECK(dist.histogram[color.right_degree(2)] == 24);
  CHECK(dist.median == color.right_degree(2));
}

TEST_CASE("aux degree distribution matches hand enumeration at m=3") {
  BipartiteFamily fam = sample_bipartite_family(6, 3, 0.5, kSeed.with_trial(9));
  for (int j = 0; j < 3; ++j) {
    DegreeDistribution dist =
        exact_aux_degree_distribution(fam, j, DistributionMode::Exhaustive());
    EnumMoments em = enumerate_aux_degree(fam, j);
    CHECK(dist.mean == em.mean);
    CHECK(dist.variance == em.variance);
    CHECK(dist.median == em.median);
  }
}

TEST_CASE("sampled mean sits within three standard errors of the exact mean") {
  BipartiteFamily fam = sample_bipartite_family(12, 6, 0.4, kSeed.with_trial(1));
  const int j = 3;
  const long long trials = 4000;
  DegreeDistribution dist = exact_aux_degree_distribution(
      fam, j, DistributionMode::Sampled(trials, kSeed.with_trial(2)));
  double mu = to_double(expected_aux_degree(fam, j));
  double sd = std::sqrt(to_double(dist.variance) / trials);
  CHECK(std::abs(to_double(dist.mean) - mu) <= 3 * sd + 1e-12);
}

TEST_CASE("exhaustive mode rejects large families") {
  BipartiteFamily fam = sample_bipartite_family(18, 9, 0.5, kSeed);
  CHECK_THROWS_AS(
      exact_aux_degree_distribution(fam, 0, DistributionMode::Exhaustive()),
      TooLargeForExhaustive);
}

TEST_CASE("aux semidegree distributions") {
  // identical colors: the in-degree of i is pi-independent
  Graph color = sample_gnp(5, 0.6, kSeed);
  GraphFamily same{5, std::vector<Graph>(5, color)};
  DegreeDistribution din = exact_aux_semidegree_distribution(
      same, 2, Direction::in, DistributionMode::Exhaustive());
  CHECK(din.variance == Rational(0));
  CHECK(din.median == color.degree(2));

  // out-degree is always the degree of i in some color
  GraphFamily fam = sample_family(4, 4, 0.5, kSeed.with_trial(3));
  int dmin = 10;
  for (const Graph& g : fam.colors) dmin = std::min(dmin, min_degree(g));
  DegreeDistribution dout = exact_aux_semidegree_distribution(
      fam, 1, Direction::out, DistributionMode::Exhaustive());
  for (std::size_t v = 0; v < dout.histogram.size(); ++v)
    if (dout.histogram[v] > 0) CHECK(static_cast<int>(v) >= dmin);

  // in-degree mean equals the color-degree average exactly (4! enumeration)
  for (int i = 0; i < 4; ++i) {
    DegreeDistribution d = exact_aux_semidegree_distribution(
        fam, i, Direction::in, DistributionMode::Exhaustive());
    CHECK(d.mean == expected_aux_in_degree(fam, i));
  }
}

TEST_CASE("chernoff tails: closed forms and domains") {
  auto [lo0, hi0] = chernoff_tails(0.0, 0.5);
  CHECK(lo0 == 1.0);
  CHECK(hi0 == 1.0);

  auto [lo, hi] = chernoff_tails(12.0, 0.5);
  CHECK(lo == Catch::Approx(std::exp(-1.5)).epsilon(1e-12));
  CHECK(hi == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));

  CHECK_THROWS_AS(chernoff_lower_tail(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(chernoff_upper_tail(1.0, 1.5), DomainError);
  CHECK_NOTHROW(chernoff_lower_tail(1.0, 2.5)); // lower tail allows a > 3/2
}

TEST_CASE("chernoff bounds dominate binomial tail frequencies") {
  const int n = 100;
  const double p = 0.3, a = 0.3;
  const double mu = n * p;
  const int trials = 100000;
  Stream s(kSeed.with_trial(7));
  int below = 0, above = 0;
  for (int t = 0; t < trials; ++t) {
    int x = 0;
    for (int i = 0; i < n; ++i)
      if (s.bernoulli(p)) ++x;
    if (x < (1 - a) * mu) ++below;
    if (x > (1 + a) * mu) ++above;
  }
  auto [lo, hi] = chernoff_tails(mu, a);
  CHECK(static_cast<double>(below) / trials <= lo);
  CHECK(static_cast<double>(above) / trials <= hi);
}

TEST_CASE("binomial tail bound: closed form and domination") {
  CHECK(binomial_tail_bound(10, 0.0, 3) == 0.0);
  CHECK(binomial_tail_bound(10, 0.1, 10) ==
        Catch::Approx(std::pow(std::exp(1.0) / 10.0, 10.0)).epsilon(1e-12));
  CHECK_THROWS_AS(binomial_tail_bound(10, 0.1, 0), DomainError);

  const int m = 20, k = 10;
  const double q = 0.2;
  const int trials = 100000;
  Stream s(kSeed.with_trial(8));
  int ge = 0;
  for (int t = 0; t < trials; ++t) {
    int x = 0;
    for (int i = 0; i < m; ++i)
      if (s.bernoulli(q)) ++x;
    if (x >= k) ++ge;
  }
  CHECK(static_cast<double>(ge) / trials <= binomial_tail_bound(m, q, k));
}

TEST_CASE("permutation concentration tail: closed form and domination") {
  CHECK(talagrand_tail(100.0, 0.0, 1.0, 1.0) == 2.0);
  CHECK(talagrand_tail(100.0, 20.0, 1.0, 1.0) ==
        Catch::Approx(2.0 * std::exp(-0.25)).epsilon(1e-12));
  CHECK_THROWS_AS(talagrand_tail(0.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(talagrand_tail(1.0, -1.0, 1.0, 1.0), DomainError);

  // aux degree of a fixed right vertex at m=200: empirical lower-tail
  // frequency about the sample median is dominated by the bound with c=r=1
  const int m = 200;
  const double p = 0.3;
  BipartiteFamily fam =
      sample_bipartite_family(2 * m, m, p, kSeed.with_trial(9));
  const int j = 17;
  const int perms = 2000;
  std::vector<int> vals;
  vals.reserve(perms);
  for (int t = 0; t < perms; ++t) {
    Permutation pi = sample_permutation(
        m, kSeed.with_trial(9).with_object(object_id::perm_stream_base + t));
    int deg = 0;
    for (int i = 0; i < m; ++i)
      if (fam.colors[pi(i)].has_edge(i, j)) ++deg;
    vals.push_back(deg);
  }
  std::vector<int> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[(perms - 1) / 2];
  const double eps = 0.5;
  const double t_dev = eps * median / 4.0;
  int below = 0;
  for (int v : vals)
    if (v <= median - t_dev) ++below;
  CHECK(static_cast<double>(below) / perms <=
        talagrand_tail(median, t_dev, 1.0, 1.0));
}

TEST_CASE("bound evaluators are monotone in the deviation") {
  double prev_lo = 2, prev_bin = 1e9, prev_tal = 3;
  for (int i = 1; i <= 30; ++i) {
    double a = 0.05 * i;
    double lo = chernoff_lower_tail(40.0, a);
    CHECK(lo <= prev_lo);
    prev_lo = lo;
    double tal = talagrand_tail(50.0, 2.0 * i, 1.0, 1.0);
    CHECK(tal <= prev_tal);
    prev_tal = tal;
  }
  for (long long k = 30; k <= 60; ++k) { // decreasing once k > e m q
    double b = binomial_tail_bound(100, 0.1, k);
    CHECK(b <= prev_bin);
    prev_bin = b;
  }
}

TEST_CASE("degree concentration window checks") {
  // p=1: all degrees are n-1, inside (1 +- eps) n for eps = 0.1, n = 50
  WindowReport all = check_degree_concentration(50, 20, 1.0, 0.1,
                                                kSeed.with_trial(10), 0.99);
  CHECK(all.in_window == all.total);
  CHECK(all.pass());

  // p=0 is degenerate and flagged out-of-window
  WindowReport none = check_degree_concentration(50, 5, 0.0, 0.5,
                                                 kSeed.with_trial(11), 0.5);
  CHECK(none.in_window == 0);
  CHECK_FALSE(none.pass());
}

TEST_CASE("partition degree window checks") {
  // complete colors: cross degree n/2 vs d/2 = (n-1)/2; inside the window
  // exactly when eps >= 1/(n-1)
  GraphFamily fam = GraphFamily::complete(10, 2);
  BalancedPartition part({0, 1, 2, 3, 4}, {5, 6, 7, 8, 9});
  WindowReport wide = check_partition_degrees(fam, part, 1.0 / 9 + 1e-9, 1.0);
  CHECK(wide.in_window == wide.total);
  WindowReport narrow = check_partition_degrees(fam, part, 1.0 / 9 - 1e-3, 1.0);
  CHECK(narrow.in_window == 0);

  // a perfect-matching color splits its single edge 0/1: flagged
  GraphFamily pm{4, {Graph(4)}};
  pm.colors[0].add_edge(0, 1);
  pm.colors[0].add_edge(2, 3);
  BalancedPartition p2({0, 1}, {2, 3});
  WindowReport flagged = check_partition_degrees(pm, p2, 0.2, 1.0);
  CHECK(flagged.in_window < flagged.total);
}

TEST_CASE("aux min degree check: identical colors and tiny exhaustive case") {
  // identical colors: the aux bipartite graph equals the color for every pi
  BipartiteGraph color = sample_bnp(4, 4, 0.7, kSeed.with_trial(12));
  BipartiteFamily fam;
  fam.left_size = fam.right_size = 4;
  fam.left_labels = {0, 1, 2, 3};
  fam.right_labels = {4, 5, 6, 7};
  fam.colors.assign(4, color);
  WindowReport rep =
      check_aux_min_degree(fam, color.min_degree(), 0, kSeed, 0.95);
  CHECK(rep.total == 24);
  CHECK(rep.in_window == 24);

  // m=2: exact fraction over both permutations matches direct enumeration
  BipartiteFamily two = sample_bipartite_family(4, 2, 0.5, kSeed.with_trial(13));
  int hits = 0;
  for (const auto& pi : {Permutation::identity(2), Permutation({1, 0})})
    if (build_aux_bipartite(two, pi).min_degree() >= 1) ++hits;
  WindowReport rep2 = check_aux_min_degree(two, 1.0, 0, kSeed, 0.5);
  CHECK(rep2.total == 2);
  CHECK(rep2.in_window == hits);
}

TEST_CASE("median window gate skips when the hypothesis is unmet") {
  MedianWindowReport rep =
      check_median_window(16, 0.8, 0.4, 2, 24, kSeed.with_trial(14), 0.99);
  CHECK_FALSE(rep.gate_met);
  CHECK(rep.pass()); // skipped, not failed
  CHECK(rep.gate_requirement == Catch::Approx(200.0 / 0.16));
}

TEST_CASE("median window holds when the hypothesis gate is met") {
  // dense family large enough for min side degree >= 200/alpha^2 = 833
  MedianWindowReport rep =
      check_median_window(860, 0.999, 0.49, 2, 60, kSeed.with_trial(15), 0.99);
  REQUIRE(rep.gate_met);
  CHECK(rep.targets == 2);
  CHECK(rep.in_window == rep.targets);
  CHECK(rep.pass());
}
