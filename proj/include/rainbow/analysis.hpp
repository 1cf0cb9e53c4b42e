#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "rainbow/adversary.hpp"
#include "rainbow/core.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/reduction.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/sampling.hpp"

namespace rainbow {

// Moments of auxiliary-graph degrees are exact rationals; floating point only
// enters for the exponential bounds and Monte Carlo summaries.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// ---------------------------------------------------------------------------
// Exact expectation of the auxiliary bipartite degree of right vertex j over
// a uniformly random permutation: sum of the color degrees of j divided by m.
inline Rational expected_aux_degree(const BipartiteFamily& family, int j) {
  const int m = family.size();
  if (family.left_size != m)
    throw SizeMismatch("expected_aux_degree: need |V1| = #colors");
  if (j < 0 || j >= family.right_size)
    throw DomainError("expected_aux_degree: vertex not in V2");
  long long total = 0;
  for (const auto& color : family.colors) total += color.right_degree(j);
  return Rational(total, m);
}

// Exact expectation of the auxiliary in-degree of vertex i for the digraph
// reduction: sum of the color degrees of i divided by n.
inline Rational expected_aux_in_degree(const GraphFamily& family, int i) {
  const int n = family.n;
  if (family.size() != n)
    throw SizeMismatch("expected_aux_in_degree: need #colors = n");
  if (i < 0 || i >= n) throw DomainError("expected_aux_in_degree: bad vertex");
  long long total = 0;
  for (const auto& color : family.colors) total += color.degree(i);
  return Rational(total, n);
}

// Upper bound mu + mu^2/(m-1) on the variance of an auxiliary degree.
inline Rational aux_degree_variance_bound(const Rational& mu, int m) {
  if (m < 2) throw DomainError("aux_degree_variance_bound: need m >= 2");
  return mu + mu * mu / Rational(m - 1);
}

// ---------------------------------------------------------------------------
// Degree distributions over permutations, exhaustive (m <= 8) or sampled.

struct DistributionMode {
  bool exhaustive = true;
  long long trials = 0;
  RandomSeed seed{};

  static DistributionMode Exhaustive() { return {}; }
  static DistributionMode Sampled(long long trials, const RandomSeed& seed) {
    return {false, trials, seed};
  }
};

struct DegreeDistribution {
  std::vector<long long> histogram; // histogram[v] = #permutations with value v
  long long samples = 0;
  Rational mean{0}, variance{0};
  int median = 0;
  bool exhaustive = true;
};

namespace detail {

inline constexpr int kMaxExhaustivePerms = 8;

template <class ValueFn>
DegreeDistribution distribution_over_permutations(int m, int max_value,
                                                  const DistributionMode& mode,
                                                  ValueFn&& value_of) {
  DegreeDistribution out;
  out.histogram.assign(max_value + 1, 0);
  out.exhaustive = mode.exhaustive;
  if (mode.exhaustive) {
    if (m > kMaxExhaustivePerms)
      throw TooLargeForExhaustive(
          "distribution: exhaustive mode supports at most m = " +
          std::to_string(kMaxExhaustivePerms));
    std::vector<int> pi(m);
    std::iota(pi.begin(), pi.end(), 0);
    do {
      ++out.histogram[value_of(pi)];
      ++out.samples;
    } while (std::next_permutation(pi.begin(), pi.end()));
  } else {
    if (mode.trials < 1) throw DomainError("distribution: trials must be >= 1");
    // the exact-rational moment sums live in 64 bits
    if (mode.trials * static_cast<long long>(max_value + 1) > 1'000'000'000LL)
      throw DomainError("distribution: m * trials too large for exact moments");
    for (long long t = 0; t < mode.trials; ++t) {
      Permutation pi = sample_permutation(
          m, mode.seed.with_object(object_id::perm_stream_base +
                              static_cast<std::uint64_t>(t)));
      ++out.histogram[value_of(pi.images())];
      ++out.samples;
    }
  }
  long long s1 = 0, s2 = 0;
  for (int v = 0; v <= max_value; ++v) {
    s1 += v * out.histogram[v];
    s2 += static_cast<long long>(v) * v * out.histogram[v];
  }
  const long long n = out.samples;
  out.mean = Rational(s1, n);
  out.variance = Rational(s2, n) - out.mean * out.mean;
  // median = lower middle order statistic (deterministic for even counts)
  long long target = (n + 1) / 2, cum = 0;
  for (int v = 0; v <= max_value; ++v) {
    cum += out.histogram[v];
    if (cum >= target) {
      out.median = v;
      break;
    }
  }
  return out;
}

} // namespace detail

// Distribution of the auxiliary bipartite degree of right vertex j.
inline DegreeDistribution exact_aux_degree_distribution(
    const BipartiteFamily& family, int j, const DistributionMode& mode) {
  const int m = family.size();
  if (family.left_size != m)
    throw SizeMismatch("aux degree distribution: need |V1| = #colors");
  if (j < 0 || j >= family.right_size)
    throw DomainError("aux degree distribution: vertex not in V2");
  return detail::distribution_over_permutations(
      m, m, mode, [&](const std::vector<int>& pi) {
        int deg = 0;
        for (int i = 0; i < m; ++i)
          if (family.colors[pi[i]].has_edge(i, j)) ++deg;
        return deg;
      });
}

enum class Direction { in, out };

// Distribution of the auxiliary digraph in/out degree of vertex i. The
// out-degree of i is simply the degree of i in color pi(i), so that
// distribution is the color-degree multiset; both run through the same
// permutation enumeration for uniformity of reporting.
inline DegreeDistribution exact_aux_semidegree_distribution(
    const GraphFamily& family, int i, Direction dir,
    const DistributionMode& mode) {
  const int n = family.n;
  if (family.size() != n)
    throw SizeMismatch("aux semidegree distribution: need #colors = n");
  if (i < 0 || i >= n)
    throw DomainError("aux semidegree distribution: bad vertex");
  return detail::distribution_over_permutations(
      n, n, mode, [&](const std::vector<int>& pi) {
        if (dir == Direction::out) return family.colors[pi[i]].degree(i);
        int deg = 0;
        for (int j = 0; j < n; ++j)
          if (j != i && family.colors[pi[j]].has_edge(j, i)) ++deg;
        return deg;
      });
}

// ---------------------------------------------------------------------------
// Closed-form tail bounds.

// (lower, upper) binomial tails at relative deviation a around mean mu:
// lower = exp(-a^2 mu / 2) for a > 0, upper = exp(-a^2 mu / 3) for 0 < a < 3/2.
inline double chernoff_lower_tail(double mu, double a) {
  if (!(mu >= 0)) throw DomainError("chernoff: mean must be >= 0");
  if (!(a > 0)) throw DomainError("chernoff lower tail: need a > 0");
  return std::exp(-a * a * mu / 2.0);
}

inline double chernoff_upper_tail(double mu, double a) {
  if (!(mu >= 0)) throw DomainError("chernoff: mean must be >= 0");
  if (!(a > 0 && a < 1.5)) throw DomainError("chernoff upper tail: need 0 < a < 3/2");
  return std::exp(-a * a * mu / 3.0);
}

inline std::pair<double, double> chernoff_tails(double mu, double a) {
  return {chernoff_lower_tail(mu, a), chernoff_upper_tail(mu, a)};
}

// P[Bin(m,q) >= k] <= (e m q / k)^k
inline double binomial_tail_bound(long long m, double q, long long k) {
  if (k < 1) throw DomainError("binomial_tail_bound: need k >= 1");
  if (m < 0) throw DomainError("binomial_tail_bound: need m >= 0");
  check_probability(q);
  return std::pow(std::exp(1.0) * static_cast<double>(m) * q /
                      static_cast<double>(k),
                  static_cast<double>(k));
}

// McDiarmid permutation concentration: 2 exp(-t^2 / (16 r c^2 M)).
inline double talagrand_tail(double M, double t, double c, double r) {
  if (!(M > 0)) throw DomainError("talagrand_tail: need M > 0");
  if (!(t >= 0)) throw DomainError("talagrand_tail: need t >= 0");
  if (!(c > 0 && r > 0)) throw DomainError("talagrand_tail: need c, r > 0");
  return 2.0 * std::exp(-(t * t) / (16.0 * r * c * c * M));
}

// ---------------------------------------------------------------------------
// Empirical window checks. Each counts how many individual checks landed in
// the prescribed window; pass/fail against a threshold is decided by caller
// configuration, since "with high probability" fixes no finite rate.

struct WindowReport {
  std::string check;
  long long total = 0;
  long long in_window = 0;
  double threshold = 0.0;

  double fraction() const {
    return total > 0 ? static_cast<double>(in_window) / static_cast<double>(total)
                     : 1.0;
  }
  bool pass() const { return fraction() >= threshold - 1e-12; }
};

inline constexpr double kWindowSlack = 1e-9; // integer-vs-real boundary noise

// Fraction of freshly sampled colors with (1-eps) n p <= delta <= Delta <= (1+eps) n p.
inline WindowReport check_degree_concentration(int n, int count, double p,
                                               double eps, const RandomSeed& seed,
                                               double threshold) {
  check_probability(p);
  WindowReport rep{"degree-concentration", 0, 0, threshold};
  const double lo = (1.0 - eps) * n * p - kWindowSlack;
  const double hi = (1.0 + eps) * n * p + kWindowSlack;
  const bool degenerate = n * p <= 0.0; // a zero window says nothing
  for (int c = 0; c < count; ++c) {
    Graph g = sample_gnp(n, p, seed.with_object(object_id::color_base + c));
    ++rep.total;
    if (!degenerate && min_degree(g) >= lo && max_degree(g) <= hi)
      ++rep.in_window;
  }
  return rep;
}

inline WindowReport check_degree_concentration(const GraphFamily& family,
                                               double p, double eps,
                                               double threshold) {
  WindowReport rep{"degree-concentration", 0, 0, threshold};
  const double lo = (1.0 - eps) * family.n * p - kWindowSlack;
  const double hi = (1.0 + eps) * family.n * p + kWindowSlack;
  const bool degenerate = family.n * p <= 0.0;
  for (const Graph& g : family.colors) {
    ++rep.total;
    if (!degenerate && min_degree(g) >= lo && max_degree(g) <= hi)
      ++rep.in_window;
  }
  return rep;
}

// Per (vertex, color, side): cross-degree into each side within
// (1 +- eps) * degree/2.
inline WindowReport check_partition_degrees(const GraphFamily& family,
                                            const BalancedPartition& part,
                                            double eps, double threshold) {
  if (part.total() != family.n)
    throw DimensionMismatch("check_partition_degrees: partition size != n");
  WindowReport rep{"partition-degrees", 0, 0, threshold};
  const int stride = (family.n + 63) / 64;
  std::vector<std::uint64_t> mask1(stride, 0), mask2(stride, 0);
  for (int v : part.v1()) mask1[v >> 6] |= std::uint64_t{1} << (v & 63);
  for (int v : part.v2()) mask2[v >> 6] |= std::uint64_t{1} << (v & 63);
  for (const Graph& g : family.colors) {
    for (int u = 0; u < family.n; ++u) {
      const double half = g.degree(u) / 2.0;
      const double lo = (1.0 - eps) * half - kWindowSlack;
      const double hi = (1.0 + eps) * half + kWindowSlack;
      const int d1 = g.adjacency().row_popcount_masked(u, mask1.data());
      const int d2 = g.adjacency().row_popcount_masked(u, mask2.data());
      rep.total += 2;
      if (d1 >= lo && d1 <= hi) ++rep.in_window;
      if (d2 >= lo && d2 <= hi) ++rep.in_window;
    }
  }
  return rep;
}

// Fraction of permutations with min degree of the auxiliary bipartite graph
// at least `floor`. trials == 0 enumerates all permutations (m <= 8).
inline WindowReport check_aux_min_degree(const BipartiteFamily& family,
                                         double floor, long long trials,
                                         const RandomSeed& seed,
                                         double threshold) {
  WindowReport rep{"aux-min-degree-bipartite", 0, 0, threshold};
  const int m = family.size();
  auto probe = [&](const Permutation& pi) {
    BipartiteGraph aux = build_aux_bipartite(family, pi);
    ++rep.total;
    if (aux.min_degree() >= floor - kWindowSlack) ++rep.in_window;
  };
  if (trials == 0) {
    if (m > detail::kMaxExhaustivePerms)
      throw TooLargeForExhaustive("check_aux_min_degree: m too large");
    std::vector<int> pi(m);
    std::iota(pi.begin(), pi.end(), 0);
    do {
      probe(Permutation(pi));
    } while (std::next_permutation(pi.begin(), pi.end()));
  } else {
    for (long long t = 0; t < trials; ++t)
      probe(sample_permutation(
          m, seed.with_object(object_id::perm_stream_base +
                              static_cast<std::uint64_t>(t))));
  }
  return rep;
}

// Digraph analog: fraction of permutations with min semidegree of the
// auxiliary digraph at least `floor`.
inline WindowReport check_aux_min_degree(const GraphFamily& family,
                                         double floor, long long trials,
                                         const RandomSeed& seed,
                                         double threshold) {
  WindowReport rep{"aux-min-degree-digraph", 0, 0, threshold};
  const int n = family.n;
  auto probe = [&](const Permutation& pi) {
    Digraph aux = build_aux_digraph(family, pi);
    ++rep.total;
    if (min_semidegree(aux) >= floor - kWindowSlack) ++rep.in_window;
  };
  if (trials == 0) {
    if (n > detail::kMaxExhaustivePerms)
      throw TooLargeForExhaustive("check_aux_min_degree: n too large");
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    do {
      probe(Permutation(pi));
    } while (std::next_permutation(pi.begin(), pi.end()));
  } else {
    for (long long t = 0; t < trials; ++t)
      probe(sample_permutation(
          n, seed.with_object(object_id::perm_stream_base +
                              static_cast<std::uint64_t>(t))));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Median-vs-mean window for auxiliary degrees, with the hypothesis gate
// min side-degree >= 200 / alpha^2. When the gate fails the check is
// reported as skipped rather than failed. Streaming: only the bit columns of
// the target vertices are kept, so desk-scale m is cheap.

struct MedianWindowReport {
  bool gate_met = false;
  long long min_side_degree = 0;
  double gate_requirement = 0.0;
  long long targets = 0;
  long long in_window = 0;
  double threshold = 0.0;

  bool pass() const {
    if (!gate_met) return true; // skipped, not failed
    return targets == 0 ||
           static_cast<double>(in_window) / static_cast<double>(targets) >=
               threshold - 1e-12;
  }
};

inline MedianWindowReport check_median_window(int m, double p, double alpha,
                                              int target_count, long long perms,
                                              const RandomSeed& seed,
                                              double threshold) {
  check_probability(p);
  if (!(alpha > 0 && alpha < 0.5))
    throw DomainError("check_median_window: need 0 < alpha < 1/2");
  if (target_count < 1 || target_count > m)
    throw DomainError("check_median_window: bad target count");
  MedianWindowReport rep;
  rep.threshold = threshold;
  rep.gate_requirement = 200.0 / (alpha * alpha);

  const int stride = (m + 63) / 64;
  // column bits of each target j: col[j][c * stride + w]
  std::vector<std::vector<std::uint64_t>> col(
      target_count, std::vector<std::uint64_t>(static_cast<std::size_t>(m) * stride, 0));
  std::vector<long long> degree_sum(target_count, 0);
  long long min_side_degree = -1;

  std::vector<int> left_deg(m), right_deg(m);
  for (int c = 0; c < m; ++c) {
    Stream s(seed.with_object(object_id::color_base + c));
    std::fill(left_deg.begin(), left_deg.end(), 0);
    std::fill(right_deg.begin(), right_deg.end(), 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (s.bernoulli(p)) {
          ++left_deg[i];
          ++right_deg[j];
          if (j < target_count)
            col[j][static_cast<std::size_t>(c) * stride + (i >> 6)] |=
                std::uint64_t{1} << (i & 63);
        }
    for (int i = 0; i < m; ++i) {
      if (min_side_degree < 0 || left_deg[i] < min_side_degree)
        min_side_degree = left_deg[i];
      if (right_deg[i] < min_side_degree) min_side_degree = right_deg[i];
    }
    for (int j = 0; j < target_count; ++j) degree_sum[j] += right_deg[j];
  }
  rep.min_side_degree = min_side_degree;
  rep.gate_met = static_cast<double>(min_side_degree) >= rep.gate_requirement;

  std::vector<std::vector<long long>> hist(
      target_count, std::vector<long long>(m + 1, 0));
  for (long long t = 0; t < perms; ++t) {
    Permutation pi = sample_permutation(
        m, seed.with_object(object_id::perm_stream_base +
                           static_cast<std::uint64_t>(t)));
    for (int j = 0; j < target_count; ++j) {
      int deg = 0;
      for (int i = 0; i < m; ++i) {
        const std::uint64_t* w =
            col[j].data() + static_cast<std::size_t>(pi(i)) * stride;
        if ((w[i >> 6] >> (i & 63)) & 1u) ++deg;
      }
      ++hist[j][deg];
    }
  }
  for (int j = 0; j < target_count; ++j) {
    long long target = (perms + 1) / 2, cum = 0;
    int median = 0;
    for (int v = 0; v <= m; ++v) {
      cum += hist[j][v];
      if (cum >= target) {
        median = v;
        break;
      }
    }
    const double mu = static_cast<double>(degree_sum[j]) / m;
    ++rep.targets;
    if (std::abs(median - mu) <= alpha * mu + kWindowSlack) ++rep.in_window;
  }
  return rep;
}

} // namespace rainbow
