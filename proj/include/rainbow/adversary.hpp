#pragma once
#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/sampling.hpp"

namespace rainbow {

enum class AdversaryKind { none, random_thinning, greedy_global, bipartite_bias, star_cut };

struct AdversaryStrategy {
  AdversaryKind kind = AdversaryKind::none;
  int focus = 0; // star-cut target, unified 0-based vertex id
};

inline AdversaryKind adversary_kind_from_string(const std::string& s) {
  if (s == "none") return AdversaryKind::none;
  if (s == "random-thinning") return AdversaryKind::random_thinning;
  if (s == "greedy-global") return AdversaryKind::greedy_global;
  if (s == "bipartite-bias") return AdversaryKind::bipartite_bias;
  if (s == "star-cut") return AdversaryKind::star_cut;
  throw ConfigError("unknown adversary strategy: " + s);
}

inline const char* to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::none: return "none";
    case AdversaryKind::random_thinning: return "random-thinning";
    case AdversaryKind::greedy_global: return "greedy-global";
    case AdversaryKind::bipartite_bias: return "bipartite-bias";
    case AdversaryKind::star_cut: return "star-cut";
  }
  return "?";
}

// Degree floors. ceil() with a small nudge so products that are exactly
// integral do not round up off floating-point noise.
inline int degree_floor_full(int n, double p, double eps) {
  return static_cast<int>(std::ceil((0.5 + eps) * n * p - 1e-9));
}
inline int degree_floor_bipartite(int n, double p, double eps) {
  return static_cast<int>(std::ceil((0.5 + eps) * n * p / 2.0 - 1e-9));
}

namespace detail {

// Uniform vertex-id view over Graph and BipartiteGraph so the strategies are
// written once. Bipartite vertices are numbered left first, then right.
struct GraphOps {
  using G = Graph;
  static int vertex_count(const G& g) { return g.order(); }
  static int degree(const G& g, int v) { return g.degree(v); }
  static bool has(const G& g, int u, int v) { return g.has_edge(u, v); }
  static std::vector<std::pair<int, int>> edges(const G& g) { return g.edges(); }
  static void remove(G& g, int u, int v) { g.remove_edge(u, v); }
  static void add(G& g, int u, int v) { g.add_edge(u, v); }
};

struct BipartiteOps {
  using G = BipartiteGraph;
  static int vertex_count(const G& g) { return g.left_size() + g.right_size(); }
  static int degree(const G& g, int v) {
    return v < g.left_size() ? g.left_degree(v) : g.right_degree(v - g.left_size());
  }
  static bool has(const G& g, int u, int v) {
    return g.has_edge(u, v - g.left_size());
  }
  static std::vector<std::pair<int, int>> edges(const G& g) {
    auto raw = g.edges();
    std::vector<std::pair<int, int>> out;
    out.reserve(raw.size());
    for (auto [l, r] : raw) out.emplace_back(l, g.left_size() + r);
    return out;
  }
  static void remove(G& g, int u, int v) { g.remove_edge(u, v - g.left_size()); }
  static void add(G& g, int u, int v) { g.add_edge(u, v - g.left_size()); }
};

template <class Ops>
int graph_min_degree(const typename Ops::G& g) {
  const int nv = Ops::vertex_count(g);
  int best = nv > 0 ? Ops::degree(g, 0) : 0;
  for (int v = 1; v < nv; ++v) best = std::min(best, Ops::degree(g, v));
  return best;
}

// Delete each edge independently with the largest probability that keeps
// every endpoint's floor in expectation: edge (u,v) dies with probability
// min(q_u, q_v) where q_v = 1 - floor/deg(v). Vertices that the binomial dip
// pushed below the floor are repaired by re-adding their deleted edges
// (ascending vertex, then ascending neighbor).
template <class Ops>
void thin_random(typename Ops::G& g, int floor, Stream& s) {
  const int nv = Ops::vertex_count(g);
  std::vector<double> qv(nv, 0.0);
  for (int v = 0; v < nv; ++v) {
    const int d = Ops::degree(g, v);
    qv[v] = d > 0 ? std::max(0.0, 1.0 - static_cast<double>(floor) / d) : 0.0;
  }
  std::vector<std::vector<int>> deleted_at(nv);
  for (auto [u, v] : Ops::edges(g)) {
    if (s.bernoulli(std::min(qv[u], qv[v]))) {
      Ops::remove(g, u, v);
      deleted_at[u].push_back(v);
      deleted_at[v].push_back(u);
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (Ops::degree(g, v) >= floor) continue;
    std::sort(deleted_at[v].begin(), deleted_at[v].end());
    for (int u : deleted_at[v]) {
      if (Ops::degree(g, v) >= floor) break;
      Ops::add(g, std::min(u, v), std::max(u, v));
    }
  }
}

// Repeatedly remove the edge of maximum degree-slack (sum of endpoint slack
// over the floor) while both endpoints stay above the floor. Ties resolve to
// the lexicographically smallest pair.
template <class Ops>
void thin_greedy_global(typename Ops::G& g, int floor) {
  using Entry = std::tuple<long long, int, int>; // (slack, u, v)
  auto cmp = [](const Entry& a, const Entry& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::make_pair(std::get<1>(a), std::get<2>(a)) >
           std::make_pair(std::get<1>(b), std::get<2>(b));
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  auto slack_of = [&](int u, int v) {
    return static_cast<long long>(Ops::degree(g, u)) + Ops::degree(g, v) -
           2LL * floor;
  };
  for (auto [u, v] : Ops::edges(g)) heap.emplace(slack_of(u, v), u, v);
  while (!heap.empty()) {
    auto [slack, u, v] = heap.top();
    heap.pop();
    if (!Ops::has(g, u, v)) continue; // duplicate entry of a removed edge
    if (Ops::degree(g, u) <= floor || Ops::degree(g, v) <= floor) continue;
    long long cur = slack_of(u, v);
    if (cur != slack) { // stale entry; degrees only shrink, so re-rank
      heap.emplace(cur, u, v);
      continue;
    }
    Ops::remove(g, u, v);
  }
}

// Delete edges inside the low half of a fixed vertex split, the classical
// extremal obstruction direction; degrees never drop below the floor.
template <class Ops>
void thin_bipartite_bias(typename Ops::G& g, int floor) {
  const int half = Ops::vertex_count(g) / 2;
  for (auto [u, v] : Ops::edges(g)) {
    if (v >= half) continue; // u < v, so both inside the low half iff v < half
    if (Ops::degree(g, u) > floor && Ops::degree(g, v) > floor)
      Ops::remove(g, u, v);
  }
}

// Strip the focus vertex down to the floor, always taking the neighbor with
// the most slack (ties to the smallest label).
template <class Ops>
void thin_star_cut(typename Ops::G& g, int floor, int focus) {
  const int nv = Ops::vertex_count(g);
  if (focus < 0 || focus >= nv) throw DomainError("star-cut: focus out of range");
  std::vector<int> nbrs;
  for (auto [u, v] : Ops::edges(g)) {
    if (u == focus) nbrs.push_back(v);
    else if (v == focus) nbrs.push_back(u);
  }
  std::sort(nbrs.begin(), nbrs.end());
  std::vector<char> cut(nbrs.size(), 0);
  while (Ops::degree(g, focus) > floor) {
    int pick = -1, pick_deg = -1;
    for (std::size_t t = 0; t < nbrs.size(); ++t) {
      if (cut[t]) continue;
      int d = Ops::degree(g, nbrs[t]);
      if (d > floor && d > pick_deg) {
        pick = static_cast<int>(t);
        pick_deg = d;
      }
    }
    if (pick < 0) break;
    cut[pick] = 1;
    int other = nbrs[pick];
    Ops::remove(g, std::min(focus, other), std::max(focus, other));
  }
}

template <class Ops, class FamilyT>
void apply_to_family(FamilyT& fam, const AdversaryStrategy& strategy, int floor,
                     const RandomSeed& seed) {
  if (floor < 0) throw DomainError("adversary floor must be >= 0");
  for (int c = 0; c < fam.size(); ++c) {
    const int dmin = graph_min_degree<Ops>(fam.colors[c]);
    if (dmin < floor) {
      int v = 0;
      for (; v < Ops::vertex_count(fam.colors[c]); ++v)
        if (Ops::degree(fam.colors[c], v) < floor) break;
      throw UnsatisfiableFloor("floor " + std::to_string(floor) +
                               " exceeds host degree at color " +
                               std::to_string(c + 1) + ", vertex " +
                               std::to_string(v + 1));
    }
  }
  for (int c = 0; c < fam.size(); ++c) {
    auto& g = fam.colors[c];
    Stream s(seed.with_object(object_id::adversary_base + c));
    switch (strategy.kind) {
      case AdversaryKind::none:
        break;
      case AdversaryKind::random_thinning:
        thin_random<Ops>(g, floor, s);
        break;
      case AdversaryKind::greedy_global:
        thin_greedy_global<Ops>(g, floor);
        break;
      case AdversaryKind::bipartite_bias:
        thin_bipartite_bias<Ops>(g, floor);
        break;
      case AdversaryKind::star_cut:
        thin_star_cut<Ops>(g, floor, strategy.focus);
        break;
    }
    if (graph_min_degree<Ops>(g) < floor)
      throw Error("adversary broke the floor invariant (internal)");
  }
}

} // namespace detail

inline GraphFamily apply_adversary(const GraphFamily& family,
                                   const AdversaryStrategy& strategy, int floor,
                                   const RandomSeed& seed) {
  GraphFamily out = family;
  detail::apply_to_family<detail::GraphOps>(out, strategy, floor, seed);
  return out;
}

inline BipartiteFamily apply_adversary(const BipartiteFamily& family,
                                       const AdversaryStrategy& strategy,
                                       int floor, const RandomSeed& seed) {
  BipartiteFamily out = family;
  detail::apply_to_family<detail::BipartiteOps>(out, strategy, floor, seed);
  return out;
}

// Re-check: every color of sub is a spanning subgraph of its host color and
// meets the degree floor. Lists violations instead of throwing.
inline Report verify_subfamily(const GraphFamily& host, const GraphFamily& sub,
                               int floor) {
  if (host.n != sub.n || host.size() != sub.size())
    throw DimensionMismatch("verify_subfamily: host/sub dimensions differ");
  Report rep;
  for (int c = 0; c < host.size(); ++c) {
    for (auto [u, v] : sub.colors[c].edges())
      if (!host.colors[c].has_edge(u, v))
        rep.fail("color " + std::to_string(c + 1) + ": edge (" +
                 std::to_string(u + 1) + "," + std::to_string(v + 1) +
                 ") not in host");
    for (int v = 0; v < sub.n; ++v)
      if (sub.colors[c].degree(v) < floor)
        rep.fail("color " + std::to_string(c + 1) + ": vertex " +
                 std::to_string(v + 1) + " degree " +
                 std::to_string(sub.colors[c].degree(v)) + " < floor " +
                 std::to_string(floor));
  }
  return rep;
}

inline Report verify_subfamily(const BipartiteFamily& host,
                               const BipartiteFamily& sub, int floor) {
  if (host.left_size != sub.left_size || host.right_size != sub.right_size ||
      host.size() != sub.size())
    throw DimensionMismatch("verify_subfamily: host/sub dimensions differ");
  Report rep;
  for (int c = 0; c < host.size(); ++c) {
    for (auto [l, r] : sub.colors[c].edges())
      if (!host.colors[c].has_edge(l, r))
        rep.fail("color " + std::to_string(c + 1) + ": edge (" +
                 std::to_string(l + 1) + "," +
                 std::to_string(host.left_size + r + 1) + ") not in host");
    if (sub.colors[c].min_degree() < floor)
      rep.fail("color " + std::to_string(c + 1) + ": min degree " +
               std::to_string(sub.colors[c].min_degree()) + " < floor " +
               std::to_string(floor));
  }
  return rep;
}

} // namespace rainbow
