#pragma once
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

enum class SolveStatus { found, none, exhausted };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::found: return "found";
    case SolveStatus::none: return "none";
    case SolveStatus::exhausted: return "exhausted";
  }
  return "?";
}

struct SolveBudget {
  long long node_limit = 1'000'000;
  long long time_ms = 2000;
  int restarts = 25;

  void validate() const {
    if (node_limit <= 0 || time_ms <= 0 || restarts <= 0)
      throw DomainError("SolveBudget: all limits must be positive");
  }
};

// ---------------------------------------------------------------------------
// Bipartite perfect matching, exact (Hopcroft-Karp). When no perfect matching
// exists the result carries a Hall violator: a left set S with |N(S)| < |S|.
struct BipartitePMResult {
  std::optional<std::vector<int>> matching; // left local index -> right
  std::vector<int> hall_violator;           // left local indices, sorted

  bool found() const { return matching.has_value(); }
};

inline BipartitePMResult find_bipartite_pm(const BipartiteGraph& b) {
  const int nl = b.left_size(), nr = b.right_size();
  if (nl != nr) throw UnbalancedParts("find_bipartite_pm: |V1| != |V2|");

  constexpr int INF = 1 << 30;
  std::vector<int> match_l(nl, -1), match_r(nr, -1), dist(nl, INF), queue(nl);

  auto bfs = [&]() {
    int qn = 0;
    for (int u = 0; u < nl; ++u) {
      if (match_l[u] < 0) {
        dist[u] = 0;
        queue[qn++] = u;
      } else {
        dist[u] = INF;
      }
    }
    bool reachable_free = false;
    for (int qi = 0; qi < qn; ++qi) {
      int u = queue[qi];
      b.left_rows().for_each_in_row(u, [&](int r) {
        int w = match_r[r];
        if (w < 0) {
          reachable_free = true;
        } else if (dist[w] == INF) {
          dist[w] = dist[u] + 1;
          queue[qn++] = w;
        }
      });
    }
    return reachable_free;
  };

  // iterative would be noise here; depth is bounded by nl
  auto dfs = [&](auto&& self, int u) -> bool {
    int found_r = -1;
    b.left_rows().for_each_in_row(u, [&](int r) {
      if (found_r >= 0) return;
      int w = match_r[r];
      if (w < 0 || (dist[w] == dist[u] + 1 && self(self, w))) found_r = r;
    });
    if (found_r < 0) {
      dist[u] = INF;
      return false;
    }
    match_r[found_r] = u;
    match_l[u] = found_r;
    return true;
  };

  int matched = 0;
  while (bfs()) {
    for (int u = 0; u < nl; ++u)
      if (match_l[u] < 0 && dfs(dfs, u)) ++matched;
  }

  BipartitePMResult out;
  if (matched == nl) {
    out.matching = match_l;
    return out;
  }

  // Hall violator: alternating reachability from any unmatched left vertex.
  int u0 = 0;
  while (match_l[u0] >= 0) ++u0;
  std::vector<char> in_s(nl, 0), seen_r(nr, 0);
  std::vector<int> stack{u0};
  in_s[u0] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    b.left_rows().for_each_in_row(u, [&](int r) {
      if (seen_r[r]) return;
      seen_r[r] = 1;
      int w = match_r[r]; // matched, else an augmenting path would exist
      if (w >= 0 && !in_s[w]) {
        in_s[w] = 1;
        stack.push_back(w);
      }
    });
  }
  for (int u = 0; u < nl; ++u)
    if (in_s[u]) out.hall_violator.push_back(u);
  return out;
}

// ---------------------------------------------------------------------------
// Directed Hamilton cycle.
struct HamiltonResult {
  SolveStatus status = SolveStatus::exhausted;
  std::vector<int> cycle; // vertex order; arcs v[t] -> v[t+1], wrapping
};

namespace detail {

inline bool validate_cycle(const Digraph& d, const std::vector<int>& cycle) {
  const int n = d.order();
  if (static_cast<int>(cycle.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : cycle) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (int t = 0; t < n; ++t)
    if (!d.has_arc(cycle[t], cycle[(t + 1) % n])) return false;
  return true;
}

inline bool strongly_connected(const Digraph& d,
                               const std::vector<std::vector<int>>& out_adj,
                               const std::vector<std::vector<int>>& in_adj) {
  const int n = d.order();
  auto covers = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++cnt;
          stack.push_back(v);
        }
    }
    return cnt == n;
  };
  return covers(out_adj) && covers(in_adj);
}

// Exact backtracking for small n: fixed start 0, bitmask pruning on the
// availability of in/out moves for every unvisited vertex.
inline SolveStatus exact_hamilton(const Digraph& d, const SolveBudget& budget,
                                  std::vector<int>& cycle_out) {
  const int n = d.order();
  std::vector<std::uint32_t> out_mask(n, 0), in_mask(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (d.has_arc(u, v)) {
        out_mask[u] |= 1u << v;
        in_mask[v] |= 1u << u;
      }

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<int> path{0};
  path.reserve(n);
  long long nodes = 0;

  auto prune_fails = [&](std::uint32_t used, int head) {
    const std::uint32_t unused = full & ~used;
    std::uint32_t rest = unused;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      // v must be enterable from the unused region or the current head,
      // and leavable into the unused region or back to the start
      if (!(in_mask[v] & (unused | (1u << head)))) return true;
      if (!(out_mask[v] & ((unused & ~(1u << v)) | 1u))) return true;
    }
    return false;
  };

  auto rec = [&](auto&& self, std::uint32_t used, int head) -> SolveStatus {
    if (++nodes > budget.node_limit) return SolveStatus::exhausted;
    if (used == full)
      return (out_mask[head] & 1u) ? SolveStatus::found : SolveStatus::none;
    if (prune_fails(used, head)) return SolveStatus::none;
    std::uint32_t cand = out_mask[head] & ~used;
    while (cand) {
      int v = std::countr_zero(cand);
      cand &= cand - 1;
      path.push_back(v);
      SolveStatus s = self(self, used | (1u << v), v);
      if (s != SolveStatus::none) return s;
      path.pop_back();
    }
    return SolveStatus::none;
  };

  SolveStatus s = rec(rec, 1u, 0);
  if (s == SolveStatus::found) cycle_out = path;
  return s;
}

// Rotation-extension heuristic state: a simple path stored as a sequence with
// positions, grown at both ends, rearranged by rotations when stuck.
struct PathState {
  std::vector<int> seq;
  std::vector<int> pos; // pos[v] = index in seq, or -1

  void reset(int n, int start) {
    seq.clear();
    seq.push_back(start);
    pos.assign(n, -1);
    pos[start] = 0;
  }
  int size() const { return static_cast<int>(seq.size()); }
  int head() const { return seq.back(); }
  int tail() const { return seq.front(); }
  bool on_path(int v) const { return pos[v] >= 0; }

  void push_head(int v) {
    pos[v] = size();
    seq.push_back(v);
  }
  void push_tail(int v) {
    seq.insert(seq.begin(), v);
    for (int t = 0; t < size(); ++t) pos[seq[t]] = t;
  }

  void replace(std::vector<int>&& next) {
    seq = std::move(next);
    for (int t = 0; t < size(); ++t) pos[seq[t]] = t;
  }

  // chord (head -> seq[i]), arc (seq[i-1] -> seq[p]), i <= p-1, p <= k-1:
  // new sequence seq[0..i-1] seq[p..k-1] seq[i..p-1]; head becomes seq[p-1]
  void rotate_head(int i, int p) {
    std::vector<int> next;
    next.reserve(seq.size());
    next.insert(next.end(), seq.begin(), seq.begin() + i);
    next.insert(next.end(), seq.begin() + p, seq.end());
    next.insert(next.end(), seq.begin() + i, seq.begin() + p);
    replace(std::move(next));
  }

  // chord (seq[a] -> tail), arc (seq[c] -> seq[a+1]), c <= a-1:
  // new sequence seq[c+1..a] seq[0..c] seq[a+1..k-1]; tail becomes seq[c+1]
  void rotate_tail(int a, int c) {
    std::vector<int> next;
    next.reserve(seq.size());
    next.insert(next.end(), seq.begin() + c + 1, seq.begin() + a + 1);
    next.insert(next.end(), seq.begin(), seq.begin() + c + 1);
    next.insert(next.end(), seq.begin() + a + 1, seq.end());
    replace(std::move(next));
  }

  // the path closes into a cycle; reopen it so that seq[j] becomes the head
  void reopen(int j) {
    std::vector<int> next;
    next.reserve(seq.size());
    next.insert(next.end(), seq.begin() + j + 1, seq.end());
    next.insert(next.end(), seq.begin(), seq.begin() + j + 1);
    replace(std::move(next));
  }
};

} // namespace detail

// Exact for n <= 12 (complete search, so "none" is definitive); otherwise a
// seeded rotation-extension heuristic with restarts, where failure only ever
// means "exhausted".
inline HamiltonResult find_directed_hamilton(const Digraph& d,
                                             const SolveBudget& budget,
                                             const RandomSeed& seed) {
  const int n = d.order();
  if (n < 3) throw TooSmall("find_directed_hamilton: need n >= 3");
  budget.validate();

  std::vector<std::vector<int>> out_adj(n), in_adj(n);
  for (int u = 0; u < n; ++u)
    d.out_adjacency().for_each_in_row(u, [&](int v) {
      out_adj[u].push_back(v);
      in_adj[v].push_back(u);
    });
  for (int v = 0; v < n; ++v)
    if (out_adj[v].empty() || in_adj[v].empty())
      return {SolveStatus::none, {}}; // degree certificate
  if (!detail::strongly_connected(d, out_adj, in_adj))
    return {SolveStatus::none, {}};

  if (n <= 12) {
    std::vector<int> cycle;
    SolveStatus s = detail::exact_hamilton(d, budget, cycle);
    return {s, std::move(cycle)};
  }

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(budget.time_ms);
  long long nodes = 0;
  auto out_of_budget = [&]() {
    if (nodes > budget.node_limit) return true;
    if ((nodes & 0xff) == 0 &&
        std::chrono::steady_clock::now() > deadline)
      return true;
    return false;
  };

  detail::PathState ps;
  for (int restart = 0; restart < budget.restarts; ++restart) {
    Stream rng(seed.with_object(object_id::solver_restart_base + restart));
    ps.reset(n, static_cast<int>(rng.next_below(n)));
    int stalls = 0;
    const int max_stalls = 4 * n;

    auto has_unused_out = [&](int v) {
      for (int w : out_adj[v])
        if (!ps.on_path(w)) return true;
      return false;
    };
    auto has_unused_in = [&](int v) {
      for (int w : in_adj[v])
        if (!ps.on_path(w)) return true;
      return false;
    };

    auto extend_head = [&]() {
      int h = ps.head();
      const auto& cand = out_adj[h];
      if (cand.empty()) return false;
      std::size_t off = rng.next_below(cand.size());
      for (std::size_t t = 0; t < cand.size(); ++t) {
        int v = cand[(t + off) % cand.size()];
        if (!ps.on_path(v)) {
          ps.push_head(v);
          return true;
        }
      }
      return false;
    };
    auto extend_tail = [&]() {
      int h = ps.tail();
      const auto& cand = in_adj[h];
      if (cand.empty()) return false;
      std::size_t off = rng.next_below(cand.size());
      for (std::size_t t = 0; t < cand.size(); ++t) {
        int v = cand[(t + off) % cand.size()];
        if (!ps.on_path(v)) {
          ps.push_tail(v);
          return true;
        }
      }
      return false;
    };

    // Enumerate head rotations; apply the first whose new head satisfies
    // `good`, or (fallback = true) a seeded random candidate.
    auto rotate_head_where = [&](auto&& good, bool fallback) {
      const int k = ps.size();
      const int head = ps.head();
      int fb_i = -1, fb_p = -1;
      const auto& chords = out_adj[head];
      std::size_t off = chords.empty() ? 0 : rng.next_below(chords.size());
      for (std::size_t t = 0; t < chords.size(); ++t) {
        int vi = chords[(t + off) % chords.size()];
        int i = ps.pos[vi];
        if (i < 1 || i > k - 2) continue;
        const auto& hops = out_adj[ps.seq[i - 1]];
        if (hops.empty()) continue;
        std::size_t off2 = rng.next_below(hops.size());
        for (std::size_t t2 = 0; t2 < hops.size(); ++t2) {
          int vp = hops[(t2 + off2) % hops.size()];
          int p = ps.pos[vp];
          if (p < i + 1 || p > k - 1) continue;
          int new_head = ps.seq[p - 1];
          if (good(new_head)) {
            ps.rotate_head(i, p);
            return true;
          }
          if (fb_i < 0) {
            fb_i = i;
            fb_p = p;
          }
        }
      }
      if (fallback && fb_i >= 0) {
        ps.rotate_head(fb_i, fb_p);
        return true;
      }
      return false;
    };
    auto rotate_tail_where = [&](auto&& good, bool fallback) {
      const int k = ps.size();
      const int tail = ps.tail();
      int fb_a = -1, fb_c = -1;
      const auto& chords = in_adj[tail];
      std::size_t off = chords.empty() ? 0 : rng.next_below(chords.size());
      for (std::size_t t = 0; t < chords.size(); ++t) {
        int va = chords[(t + off) % chords.size()];
        int a = ps.pos[va];
        if (a < 1 || a > k - 2) continue;
        const auto& hops = in_adj[ps.seq[a + 1]];
        if (hops.empty()) continue;
        std::size_t off2 = rng.next_below(hops.size());
        for (std::size_t t2 = 0; t2 < hops.size(); ++t2) {
          int vc = hops[(t2 + off2) % hops.size()];
          int c = ps.pos[vc];
          if (c < 0 || c > a - 1) continue;
          int new_tail = ps.seq[c + 1];
          if (good(new_tail)) {
            ps.rotate_tail(a, c);
            return true;
          }
          if (fb_a < 0) {
            fb_a = a;
            fb_c = c;
          }
        }
      }
      if (fallback && fb_a >= 0) {
        ps.rotate_tail(fb_a, fb_c);
        return true;
      }
      return false;
    };

    while (!out_of_budget()) {
      ++nodes;
      const int k = ps.size();
      if (k == n) {
        if (d.has_arc(ps.head(), ps.tail())) break; // spanning cycle closed
        bool closed = false;
        if (rotate_head_where(
                [&](int nh) { return d.has_arc(nh, ps.tail()); }, false))
          closed = true;
        else if (rotate_tail_where(
                     [&](int nt) { return d.has_arc(ps.head(), nt); }, false))
          closed = true;
        if (closed) break;
        // perturb and retry the closure
        bool moved = rotate_head_where([](int) { return false; }, true) ||
                     rotate_tail_where([](int) { return false; }, true);
        if (!moved || ++stalls > max_stalls) break;
        continue;
      }
      if (extend_head() || extend_tail()) continue;
      if (d.has_arc(ps.head(), ps.tail())) {
        // non-spanning cycle: reopen where the new endpoint can grow
        int pick = -1;
        std::size_t off = rng.next_below(static_cast<std::uint64_t>(k));
        for (int t = 0; t < k && pick < 0; ++t) {
          int j = static_cast<int>((t + off) % k);
          int nh = ps.seq[j];
          int nt = ps.seq[(j + 1) % k];
          if (has_unused_out(nh) || has_unused_in(nt)) pick = j;
        }
        if (pick >= 0) {
          if (pick != k - 1) ps.reopen(pick);
          continue;
        }
      }
      if (rotate_head_where(has_unused_out, false)) continue;
      if (rotate_tail_where(has_unused_in, false)) continue;
      bool moved = rotate_head_where([](int) { return false; }, true) ||
                   rotate_tail_where([](int) { return false; }, true);
      if (!moved || ++stalls > max_stalls) break;
    }

    if (ps.size() == n && d.has_arc(ps.head(), ps.tail())) {
      if (!detail::validate_cycle(d, ps.seq))
        throw Error("hamilton heuristic produced an invalid cycle (internal)");
      return {SolveStatus::found, ps.seq};
    }
    if (out_of_budget()) break;
  }
  return {SolveStatus::exhausted, {}};
}

// ---------------------------------------------------------------------------
// Perfect matching in a k-partite k-graph: exact backtracking over the first
// part in vertex order, forward-checking that every later first-part vertex
// still has a fully-unused candidate edge.
struct KPartitePMResult {
  SolveStatus status = SolveStatus::exhausted;
  std::vector<std::vector<int>> edges; // local tuples, one per V1 vertex
};

inline KPartitePMResult find_kpartite_pm(const KPartiteHypergraph& h,
                                         const SolveBudget& budget) {
  budget.validate();
  const int k = h.uniformity(), n = h.part_size();
  std::vector<std::vector<std::vector<int>>> cand(n);
  h.for_each_edge([&](const int* t) {
    cand[t[0]].push_back(std::vector<int>(t, t + k));
  });
  for (int i = 0; i < n; ++i)
    if (cand[i].empty()) return {SolveStatus::none, {}};

  std::vector<std::vector<char>> used(k, std::vector<char>(n, 0));
  std::vector<std::vector<int>> chosen;
  long long nodes = 0;

  auto tuple_free = [&](const std::vector<int>& t) {
    for (int part = 1; part < k; ++part)
      if (used[part][t[part]]) return false;
    return true;
  };
  auto feasible_later = [&](int next) {
    for (int j = next; j < n; ++j) {
      bool any = false;
      for (const auto& t : cand[j])
        if (tuple_free(t)) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, int i) -> SolveStatus {
    if (++nodes > budget.node_limit) return SolveStatus::exhausted;
    if (i == n) return SolveStatus::found;
    for (const auto& t : cand[i]) {
      if (!tuple_free(t)) continue;
      for (int part = 1; part < k; ++part) used[part][t[part]] = 1;
      chosen.push_back(t);
      if (feasible_later(i + 1)) {
        SolveStatus s = self(self, i + 1);
        if (s != SolveStatus::none) return s;
      }
      chosen.pop_back();
      for (int part = 1; part < k; ++part) used[part][t[part]] = 0;
    }
    return SolveStatus::none;
  };

  SolveStatus s = rec(rec, 0);
  if (s == SolveStatus::found) return {s, chosen};
  return {s, {}};
}

} // namespace rainbow
