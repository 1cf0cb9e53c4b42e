#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "rainbow/sampling.hpp"

using namespace rainbow;

TEST_CASE("gnp degenerate probabilities") {
  RandomSeed seed{1, 902, 0, 0};
  CHECK(sample_gnp(6, 0.0, seed).edge_count() == 0);
  CHECK(sample_gnp(6, 1.0, seed).edge_count() == 15);
  CHECK_THROWS_AS(sample_gnp(6, 1.5, seed), DomainError);
  CHECK_THROWS_AS(sample_gnp(6, -0.1, seed), DomainError);
}

TEST_CASE("identical seeds reproduce identical samples") {
  RandomSeed seed{123456, 902, 3, 0};
  CHECK(sample_gnp(30, 0.37, seed) == sample_gnp(30, 0.37, seed));
  CHECK(sample_permutation(12, seed) == sample_permutation(12, seed));
  CHECK(sample_balanced_partition(10, seed) ==
        sample_balanced_partition(10, seed));
  // distinct object labels behave independently
  CHECK(sample_gnp(30, 0.37, seed) != sample_gnp(30, 0.37, seed.with_object(1)));
}

TEST_CASE("fixed-pair edge frequency matches p") {
  RandomSeed seed{77, 902, 0, 0};
  const int trials = 2000;
  int hits = 0;
  for (int t = 0; t < trials; ++t)
    if (sample_gnp(50, 0.3, seed.with_trial(t)).has_edge(11, 29)) ++hits;
  double freq = static_cast<double>(hits) / trials;
  CHECK(freq > 0.27);
  CHECK(freq < 0.33);
}

TEST_CASE("family sampling") {
  RandomSeed seed{9, 902, 0, 0};
  CHECK(sample_family(5, 0, 0.5, seed).size() == 0);

  GraphFamily f = sample_family(6, 3, 1.0, seed);
  for (const Graph& g : f.colors) CHECK(g.edge_count() == 15);

  CHECK(sample_family(12, 4, 0.5, seed).colors ==
        sample_family(12, 4, 0.5, seed).colors);
}

TEST_CASE("colors of a family are independent (correlation proxy)") {
  RandomSeed seed{31337, 902, 0, 0};
  const int trials = 10000;
  int a = 0, b = 0, both = 0;
  for (int t = 0; t < trials; ++t) {
    GraphFamily f = sample_family(8, 2, 0.5, seed.with_trial(t));
    bool ea = f.colors[0].has_edge(2, 5);
    bool eb = f.colors[1].has_edge(2, 5);
    a += ea;
    b += eb;
    both += ea && eb;
  }
  double pa = static_cast<double>(a) / trials;
  double pb = static_cast<double>(b) / trials;
  double pab = static_cast<double>(both) / trials;
  double corr = (pab - pa * pb) /
                std::sqrt(pa * (1 - pa) * pb * (1 - pb));
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("permutations are uniform") {
  RandomSeed seed{5, 902, 0, 0};
  CHECK(sample_permutation(1, seed) == Permutation::identity(1));

  std::map<std::vector<int>, int> counts;
  const int trials = 6000;
  for (int t = 0; t < trials; ++t)
    ++counts[sample_permutation(3, seed.with_trial(t)).images()];
  CHECK(counts.size() == 6);
  for (const auto& [pi, c] : counts) {
    double freq = static_cast<double>(c) / trials;
    CHECK(freq > 1.0 / 6 - 0.02);
    CHECK(freq < 1.0 / 6 + 0.02);
  }
}

TEST_CASE("balanced partitions are uniform") {
  RandomSeed seed{6, 902, 0, 0};
  CHECK_THROWS_AS(sample_balanced_partition(5, seed), DomainError);

  int first = 0;
  const int trials = 6000;
  for (int t = 0; t < trials; ++t)
    if (sample_balanced_partition(2, seed.with_trial(t)).in_v1(0)) ++first;
  double freq = static_cast<double>(first) / trials;
  CHECK(freq > 0.48);
  CHECK(freq < 0.52);

  std::map<std::vector<int>, int> counts;
  for (int t = 0; t < trials; ++t) {
    BalancedPartition p = sample_balanced_partition(4, seed.with_trial(t));
    CHECK(p.v1().size() == p.v2().size());
    ++counts[p.v1()];
  }
  CHECK(counts.size() == 6);
  for (const auto& [v1, c] : counts) {
    double freq = static_cast<double>(c) / trials;
    CHECK(freq > 1.0 / 6 - 0.02);
    CHECK(freq < 1.0 / 6 + 0.02);
  }
}

TEST_CASE("bipartite family sampling") {
  RandomSeed seed{8, 902, 0, 0};
  BipartiteFamily f = sample_bipartite_family(8, 3, 1.0, seed);
  CHECK(f.left_size == 4);
  CHECK(f.right_size == 4);
  for (const BipartiteGraph& b : f.colors) CHECK(b.edge_count() == 16);
  CHECK(f.left_labels == std::vector<int>{0, 1, 2, 3});
  CHECK(f.right_labels == std::vector<int>{4, 5, 6, 7});

  BalancedPartition part({0, 2, 4, 6}, {1, 3, 5, 7});
  BipartiteFamily g = sample_bipartite_family(8, 2, 0.5, seed, part);
  CHECK(g.left_labels == part.v1());
  CHECK(g.right_labels == part.v2());

  CHECK_THROWS_AS(sample_bipartite_family(7, 2, 0.5, seed), DomainError);
}
