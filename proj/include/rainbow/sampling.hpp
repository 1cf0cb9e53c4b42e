#pragma once
#include <numeric>
#include <optional>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

// An ordered family of "colors": m graphs on a common vertex set [n].
struct GraphFamily {
  int n = 0;
  std::vector<Graph> colors;

  int size() const { return static_cast<int>(colors.size()); }

  static GraphFamily complete(int n, int m) {
    GraphFamily f{n, {}};
    f.colors.assign(m, Graph::complete(n));
    return f;
  }
};

// Bipartite colors on a shared bipartition. left_labels/right_labels map the
// local part indices back to the original vertex ids (identity when the
// family was born bipartite).
struct BipartiteFamily {
  int left_size = 0, right_size = 0;
  std::vector<int> left_labels, right_labels;
  std::vector<BipartiteGraph> colors;

  int size() const { return static_cast<int>(colors.size()); }

  static std::vector<int> iota_labels(int from, int count) {
    std::vector<int> v(count);
    std::iota(v.begin(), v.end(), from);
    return v;
  }

  static BipartiteFamily complete(int left, int right, int m) {
    BipartiteFamily f;
    f.left_size = left;
    f.right_size = right;
    f.left_labels = iota_labels(0, left);
    f.right_labels = iota_labels(left, right);
    f.colors.assign(m, BipartiteGraph::complete(left, right));
    return f;
  }
};

inline void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError("probability must lie in [0,1]");
}

// G(n,p): every unordered pair is an edge independently with probability p.
// Pair order is fixed lexicographic, so (seed -> graph) is a stable contract.
inline Graph sample_gnp(int n, double p, const RandomSeed& seed) {
  check_probability(p);
  Graph g(n);
  Stream s(seed);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (s.bernoulli(p)) g.add_edge(u, v);
  return g;
}

// B(left,right,p) on local indices, pairs in lexicographic order.
inline BipartiteGraph sample_bnp(int left, int right, double p,
                                 const RandomSeed& seed) {
  check_probability(p);
  BipartiteGraph b(left, right);
  Stream s(seed);
  for (int l = 0; l < left; ++l)
    for (int r = 0; r < right; ++r)
      if (s.bernoulli(p)) b.add_edge(l, r);
  return b;
}

// m independent colors; color c draws from the (seed.object = color_base + c)
// stream, so colors are independent of each other and of evaluation order.
inline GraphFamily sample_family(int n, int m, double p,
                                 const RandomSeed& seed) {
  check_probability(p);
  if (m < 0) throw DomainError("sample_family: negative color count");
  GraphFamily f{n, {}};
  f.colors.reserve(m);
  for (int c = 0; c < m; ++c)
    f.colors.push_back(sample_gnp(n, p, seed.with_object(object_id::color_base + c)));
  return f;
}

// Bipartite variant: colors are independent samples on the given bipartition
// (canonical halves of [n] when none is given). n must be even.
inline BipartiteFamily sample_bipartite_family(
    int n, int m, double p, const RandomSeed& seed,
    const std::optional<BalancedPartition>& part = std::nullopt) {
  check_probability(p);
  if (n % 2 != 0) throw DomainError("sample_bipartite_family: n must be even");
  const int half = n / 2;
  BipartiteFamily f;
  f.left_size = f.right_size = half;
  if (part) {
    if (part->total() != n)
      throw DimensionMismatch("sample_bipartite_family: partition size != n");
    f.left_labels = part->v1();
    f.right_labels = part->v2();
  } else {
    f.left_labels = BipartiteFamily::iota_labels(0, half);
    f.right_labels = BipartiteFamily::iota_labels(half, half);
  }
  f.colors.reserve(m);
  for (int c = 0; c < m; ++c)
    f.colors.push_back(
        sample_bnp(half, half, p, seed.with_object(object_id::color_base + c)));
  return f;
}

// Uniform over all m! permutations (Fisher-Yates on the seeded stream).
inline Permutation sample_permutation(int m, const RandomSeed& seed) {
  if (m < 1) throw DomainError("sample_permutation: m must be >= 1");
  std::vector<int> v(m);
  std::iota(v.begin(), v.end(), 0);
  Stream s(seed);
  s.shuffle(v);
  return Permutation(std::move(v));
}

// Uniform over all balanced bipartitions of [n]; rejects odd n.
inline BalancedPartition sample_balanced_partition(int n,
                                                   const RandomSeed& seed) {
  if (n < 0 || n % 2 != 0)
    throw DomainError("sample_balanced_partition: n must be even");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  Stream s(seed);
  s.shuffle(v);
  std::vector<int> v1(v.begin(), v.begin() + n / 2);
  std::vector<int> v2(v.begin() + n / 2, v.end());
  return BalancedPartition(std::move(v1), std::move(v2));
}

} // namespace rainbow
