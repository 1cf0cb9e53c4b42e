#pragma once
#include <algorithm>
#include <string>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/sampling.hpp"

namespace rainbow {

// A structure (matching / Hamilton cycle / hypergraph matching) together with
// a color assignment taking exactly one edge from each color of a family.
// Edge vertices are original vertex ids; for hyper edges they are the global
// ids part*n + local. Colors are 0-based indices into the family.
enum class RainbowKind { matching, hamilton_cycle, hyper_matching };

struct RainbowStructure {
  RainbowKind kind = RainbowKind::matching;
  std::vector<std::pair<std::vector<int>, int>> elements; // (edge, color)
};

// ---------------------------------------------------------------------------
// Restrict every color of a family of full graphs to the cross edges of a
// balanced partition. Color i becomes the bipartite graph on (V1, V2) whose
// edges are exactly the host edges crossing the parts.
inline BipartiteFamily induce_bipartite(const GraphFamily& family,
                                        const BalancedPartition& part) {
  if (part.total() != family.n)
    throw DimensionMismatch("induce_bipartite: partition size != n");
  BipartiteFamily out;
  out.left_size = static_cast<int>(part.v1().size());
  out.right_size = static_cast<int>(part.v2().size());
  out.left_labels = part.v1();
  out.right_labels = part.v2();
  out.colors.reserve(family.size());
  for (const Graph& g : family.colors) {
    BipartiteGraph b(out.left_size, out.right_size);
    for (int l = 0; l < out.left_size; ++l) {
      const int u = out.left_labels[l];
      for (int r = 0; r < out.right_size; ++r)
        if (g.has_edge(u, out.right_labels[r])) b.add_edge(l, r);
    }
    out.colors.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Auxiliary bipartite graph of a bipartite family and a permutation of the
// left part: (i,j) is an edge iff ij is an edge of color pi(i).
inline BipartiteGraph build_aux_bipartite(const BipartiteFamily& family,
                                          const Permutation& pi) {
  const int m = family.size();
  if (family.left_size != m || pi.size() != m)
    throw SizeMismatch("build_aux_bipartite: need |V1| = #colors = |pi|");
  BipartiteGraph aux(family.left_size, family.right_size);
  for (int i = 0; i < family.left_size; ++i) {
    const BipartiteGraph& color = family.colors[pi(i)];
    color.left_rows().for_each_in_row(i, [&](int j) { aux.add_edge(i, j); });
  }
  return aux;
}

// Auxiliary digraph of a family of full graphs and a permutation of [n]:
// arc (i,j) present iff ij is an (undirected) edge of color pi(i). Note
// (i,j) and (j,i) are decided by different colors.
inline Digraph build_aux_digraph(const GraphFamily& family,
                                 const Permutation& pi) {
  const int n = family.n;
  if (family.size() != n || pi.size() != n)
    throw SizeMismatch("build_aux_digraph: need #colors = n = |pi|");
  Digraph aux(n);
  for (int i = 0; i < n; ++i) {
    const Graph& color = family.colors[pi(i)];
    color.adjacency().for_each_in_row(i, [&](int j) { aux.add_arc(i, j); });
  }
  return aux;
}

// Auxiliary k-partite k-graph of a family of n colors on a shared
// k-partition: crossing set S with first-part vertex a1 is an edge iff
// S is an edge of color pi(a1).
inline KPartiteHypergraph build_aux_kpartite(
    const std::vector<KPartiteHypergraph>& family, const Permutation& pi) {
  if (family.empty()) throw SizeMismatch("build_aux_kpartite: empty family");
  const int k = family[0].uniformity();
  const int n = family[0].part_size();
  for (const auto& h : family)
    if (h.uniformity() != k || h.part_size() != n)
      throw SizeMismatch("build_aux_kpartite: colors disagree on (k, n)");
  if (static_cast<int>(family.size()) != n || pi.size() != n)
    throw SizeMismatch("build_aux_kpartite: need #colors = part size = |pi|");
  KPartiteHypergraph aux(k, n);
  std::vector<int> tuple(k);
  for (int c = 0; c < n; ++c) {
    family[c].for_each_edge([&](const int* t) {
      if (pi(t[0]) != c) return; // edge is drawn from color pi(a1) only
      tuple.assign(t, t + k);
      aux.add_edge(tuple);
    });
  }
  aux.finalize();
  return aux;
}

// ---------------------------------------------------------------------------
// Lifts: translate a plain structure found in an auxiliary graph back into a
// rainbow structure of the family, reporting original vertex labels.

// pm[i] = right partner of left vertex i (local indices), -1 if unmatched.
inline RainbowStructure lift_matching(const std::vector<int>& pm,
                                      const Permutation& pi,
                                      const BipartiteFamily& family) {
  const int m = family.size();
  if (static_cast<int>(pm.size()) != family.left_size || pi.size() != m ||
      family.left_size != m)
    throw SizeMismatch("lift_matching: sizes disagree");
  std::vector<char> right_used(family.right_size, 0);
  RainbowStructure rs;
  rs.kind = RainbowKind::matching;
  for (int i = 0; i < m; ++i) {
    const int j = pm[i];
    if (j < 0 || j >= family.right_size)
      throw NotPerfect("lift_matching: left vertex " + std::to_string(i + 1) +
                       " unmatched");
    if (right_used[j])
      throw NotPerfect("lift_matching: right vertex matched twice");
    right_used[j] = 1;
    rs.elements.push_back(
        {{family.left_labels[i], family.right_labels[j]}, pi(i)});
  }
  return rs;
}

// cycle = vertex order v0 v1 ... v_{n-1}; arcs v_t -> v_{t+1}, wrapping.
inline RainbowStructure lift_cycle(const std::vector<int>& cycle,
                                   const Permutation& pi,
                                   const GraphFamily& family) {
  const int n = family.n;
  if (n < 3 || static_cast<int>(cycle.size()) != n)
    throw NotHamiltonian("lift_cycle: cycle must visit all n >= 3 vertices");
  if (pi.size() != n || family.size() != n)
    throw SizeMismatch("lift_cycle: sizes disagree");
  std::vector<char> seen(n, 0);
  for (int v : cycle) {
    if (v < 0 || v >= n || seen[v])
      throw NotHamiltonian("lift_cycle: not a single spanning cycle");
    seen[v] = 1;
  }
  RainbowStructure rs;
  rs.kind = RainbowKind::hamilton_cycle;
  for (int t = 0; t < n; ++t) {
    const int i = cycle[t];
    const int j = cycle[(t + 1) % n];
    rs.elements.push_back({{i, j}, pi(i)});
  }
  return rs;
}

// edges: one crossing tuple (local indices) per left vertex, disjoint.
inline RainbowStructure lift_hyper_matching(
    const std::vector<std::vector<int>>& edges, const Permutation& pi,
    const std::vector<KPartiteHypergraph>& family) {
  if (family.empty()) throw SizeMismatch("lift_hyper_matching: empty family");
  const int k = family[0].uniformity();
  const int n = family[0].part_size();
  if (static_cast<int>(family.size()) != n || pi.size() != n)
    throw SizeMismatch("lift_hyper_matching: sizes disagree");
  if (static_cast<int>(edges.size()) != n)
    throw NotPerfect("lift_hyper_matching: need one edge per first-part vertex");
  std::vector<std::vector<char>> used(k, std::vector<char>(n, 0));
  RainbowStructure rs;
  rs.kind = RainbowKind::hyper_matching;
  for (const auto& t : edges) {
    if (static_cast<int>(t.size()) != k)
      throw PartSizeMismatch("lift_hyper_matching: tuple arity != k");
    std::vector<int> global(k);
    for (int i = 0; i < k; ++i) {
      if (t[i] < 0 || t[i] >= n || used[i][t[i]])
        throw NotPerfect("lift_hyper_matching: edges not a perfect matching");
      used[i][t[i]] = 1;
      global[i] = i * n + t[i];
    }
    rs.elements.push_back({std::move(global), pi(t[0])});
  }
  return rs;
}

// ---------------------------------------------------------------------------
// The single trust anchor: check a claimed rainbow structure against the
// family it is claimed for. Never throws; reports every violation found.

namespace detail {

inline bool check_colors_exhaust(const RainbowStructure& rs, int m,
                                 Report& rep) {
  if (static_cast<int>(rs.elements.size()) != m) {
    rep.fail("structure has " + std::to_string(rs.elements.size()) +
             " elements, family has " + std::to_string(m) + " colors");
    return false;
  }
  std::vector<int> count(m, 0);
  for (const auto& [edge, color] : rs.elements) {
    if (color < 0 || color >= m) {
      rep.fail("color index " + std::to_string(color + 1) + " out of range");
      return false;
    }
    ++count[color];
  }
  bool ok = true;
  for (int c = 0; c < m; ++c) {
    if (count[c] > 1) {
      rep.fail("color " + std::to_string(c + 1) + " used " +
               std::to_string(count[c]) + " times");
      ok = false;
    } else if (count[c] == 0) {
      rep.fail("color " + std::to_string(c + 1) + " unused");
      ok = false;
    }
  }
  return ok;
}

} // namespace detail

inline Report verify_rainbow(const RainbowStructure& rs,
                             const GraphFamily& family) {
  Report rep;
  detail::check_colors_exhaust(rs, family.size(), rep);
  for (const auto& [edge, color] : rs.elements) {
    if (edge.size() != 2 || edge[0] < 0 || edge[1] < 0 || edge[0] >= family.n ||
        edge[1] >= family.n || edge[0] == edge[1]) {
      rep.fail("malformed graph edge in structure");
      continue;
    }
    if (color >= 0 && color < family.size() &&
        !family.colors[color].has_edge(edge[0], edge[1]))
      rep.fail("edge (" + std::to_string(edge[0] + 1) + "," +
               std::to_string(edge[1] + 1) + ") not in color " +
               std::to_string(color + 1));
  }
  if (rs.kind == RainbowKind::matching) {
    std::vector<int> hits(family.n, 0);
    for (const auto& [edge, color] : rs.elements)
      for (int v : edge)
        if (v >= 0 && v < family.n) ++hits[v];
    for (int v = 0; v < family.n; ++v)
      if (hits[v] > 1)
        rep.fail("vertex " + std::to_string(v + 1) + " covered " +
                 std::to_string(hits[v]) + " times");
  } else if (rs.kind == RainbowKind::hamilton_cycle) {
    // order-independent cycle test: every vertex incident to exactly two
    // elements and the incidence graph is a single connected cycle
    std::vector<std::vector<int>> at(family.n);
    bool shape_ok = true;
    for (const auto& [edge, color] : rs.elements) {
      if (edge.size() != 2) { shape_ok = false; continue; }
      for (int v : edge)
        if (v >= 0 && v < family.n) at[v].push_back(edge[0] ^ edge[1] ^ v);
    }
    for (int v = 0; v < family.n && shape_ok; ++v)
      if (at[v].size() != 2) {
        rep.fail("vertex " + std::to_string(v + 1) + " has cycle degree " +
                 std::to_string(at[v].size()));
        shape_ok = false;
      }
    if (shape_ok && family.n >= 3) {
      int seen = 1, prev = 0, cur = at[0][0];
      while (cur != 0 && seen <= family.n) {
        int nxt = (at[cur][0] == prev) ? at[cur][1] : at[cur][0];
        prev = cur;
        cur = nxt;
        ++seen;
      }
      if (seen != family.n)
        rep.fail("elements do not form a single spanning cycle");
    }
  }
  return rep;
}

inline Report verify_rainbow(const RainbowStructure& rs,
                             const BipartiteFamily& family) {
  Report rep;
  detail::check_colors_exhaust(rs, family.size(), rep);
  // translate original labels back to local part indices
  std::vector<int> local(family.left_size + family.right_size + 1, -1);
  auto slot = [&](int label) -> int& {
    if (label < 0) throw DomainError("negative label");
    if (label >= static_cast<int>(local.size())) local.resize(label + 1, -1);
    return local[label];
  };
  for (int l = 0; l < family.left_size; ++l) slot(family.left_labels[l]) = l;
  for (int r = 0; r < family.right_size; ++r)
    slot(family.right_labels[r]) = family.left_size + r;
  std::vector<int> hits(family.left_size + family.right_size, 0);
  for (const auto& [edge, color] : rs.elements) {
    if (edge.size() != 2) {
      rep.fail("malformed edge in structure");
      continue;
    }
    int a = edge[0] < static_cast<int>(local.size()) && edge[0] >= 0 ? local[edge[0]] : -1;
    int b = edge[1] < static_cast<int>(local.size()) && edge[1] >= 0 ? local[edge[1]] : -1;
    if (a > b) std::swap(a, b);
    if (a < 0 || a >= family.left_size || b < family.left_size) {
      rep.fail("edge does not cross the bipartition");
      continue;
    }
    ++hits[a];
    ++hits[b];
    if (color >= 0 && color < family.size() &&
        !family.colors[color].has_edge(a, b - family.left_size))
      rep.fail("edge (" + std::to_string(edge[0] + 1) + "," +
               std::to_string(edge[1] + 1) + ") not in color " +
               std::to_string(color + 1));
  }
  for (std::size_t v = 0; v < hits.size(); ++v)
    if (hits[v] > 1) rep.fail("a vertex is covered more than once");
  return rep;
}

inline Report verify_rainbow(const RainbowStructure& rs,
                             const std::vector<KPartiteHypergraph>& family) {
  Report rep;
  detail::check_colors_exhaust(rs, static_cast<int>(family.size()), rep);
  if (family.empty()) return rep;
  const int k = family[0].uniformity();
  const int n = family[0].part_size();
  std::vector<std::vector<int>> hits(k, std::vector<int>(n, 0));
  for (const auto& [edge, color] : rs.elements) {
    if (static_cast<int>(edge.size()) != k) {
      rep.fail("hyperedge arity != k");
      continue;
    }
    std::vector<int> tuple(k);
    bool ok = true;
    for (int i = 0; i < k; ++i) {
      int local = edge[i] - i * n;
      if (local < 0 || local >= n) {
        rep.fail("hyperedge vertex outside its part");
        ok = false;
        break;
      }
      tuple[i] = local;
      ++hits[i][local];
    }
    if (!ok) continue;
    if (color >= 0 && color < static_cast<int>(family.size()) &&
        !family[color].has_edge(tuple))
      rep.fail("hyperedge not in color " + std::to_string(color + 1));
  }
  for (int i = 0; i < k; ++i)
    for (int v = 0; v < n; ++v)
      if (hits[i][v] > 1)
        rep.fail("part " + std::to_string(i + 1) + " vertex " +
                 std::to_string(v + 1) + " covered more than once");
  return rep;
}

} // namespace rainbow
