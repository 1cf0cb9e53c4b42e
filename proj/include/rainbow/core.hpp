#pragma once
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/bitrows.hpp"
#include "rainbow/errors.hpp"

namespace rainbow {

// Vertices are 0-indexed everywhere inside the library; text I/O converts to
// 1-indexed labels exactly once (see io.hpp).

// ---------------------------------------------------------------------------
// Graph: simple undirected graph on [n], dense bit rows, no self-loops.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n, n) {
    if (n < 0) throw DomainError("Graph: negative vertex count");
  }

  int order() const { return n_; }
  long long edge_count() const { return edges_; }

  bool has_edge(int u, int v) const {
    return u != v && adj_.get(u, v);
  }

  void add_edge(int u, int v) {
    check_pair(u, v);
    if (adj_.get(u, v)) return;
    adj_.set(u, v);
    adj_.set(v, u);
    ++edges_;
  }

  void remove_edge(int u, int v) {
    check_pair(u, v);
    if (!adj_.get(u, v)) return;
    adj_.reset(u, v);
    adj_.reset(v, u);
    --edges_;
  }

  int degree(int v) const { return adj_.row_popcount(v); }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    adj_.for_each_in_row(v, [&](int u) { out.push_back(u); });
    return out;
  }

  // Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edges_));
    for (int u = 0; u < n_; ++u)
      adj_.for_each_in_row(u, [&](int v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  const BitRows& adjacency() const { return adj_; }

  bool operator==(const Graph&) const = default;

  static Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }

private:
  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw DomainError("Graph: vertex out of range");
    if (u == v) throw DomainError("Graph: self-loop rejected");
  }

  int n_ = 0;
  long long edges_ = 0;
  BitRows adj_;
};

inline int min_degree(const Graph& g) {
  if (g.order() < 1) throw DomainError("min_degree: empty graph");
  int best = g.degree(0);
  for (int v = 1; v < g.order(); ++v) best = std::min(best, g.degree(v));
  return best;
}

inline int max_degree(const Graph& g) {
  if (g.order() < 1) throw DomainError("max_degree: empty graph");
  int best = g.degree(0);
  for (int v = 1; v < g.order(); ++v) best = std::max(best, g.degree(v));
  return best;
}

// ---------------------------------------------------------------------------
// Digraph: ordered arcs, no loops; (u,v) and (v,u) are independent.
class Digraph {
public:
  Digraph() = default;
  explicit Digraph(int n) : n_(n), out_(n, n) {
    if (n < 0) throw DomainError("Digraph: negative vertex count");
  }

  int order() const { return n_; }
  long long arc_count() const { return arcs_; }

  bool has_arc(int u, int v) const { return u != v && out_.get(u, v); }

  void add_arc(int u, int v) {
    check_pair(u, v);
    if (out_.get(u, v)) return;
    out_.set(u, v);
    ++arcs_;
  }

  void remove_arc(int u, int v) {
    check_pair(u, v);
    if (!out_.get(u, v)) return;
    out_.reset(u, v);
    --arcs_;
  }

  int out_degree(int v) const { return out_.row_popcount(v); }

  std::vector<int> in_degrees() const {
    std::vector<int> in(n_, 0);
    for (int u = 0; u < n_; ++u)
      out_.for_each_in_row(u, [&](int v) { ++in[v]; });
    return in;
  }

  std::vector<int> out_neighbors(int v) const {
    std::vector<int> out;
    out_.for_each_in_row(v, [&](int u) { out.push_back(u); });
    return out;
  }

  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(arcs_));
    for (int u = 0; u < n_; ++u)
      out_.for_each_in_row(u, [&](int v) { out.emplace_back(u, v); });
    return out;
  }

  const BitRows& out_adjacency() const { return out_; }

  bool operator==(const Digraph&) const = default;

  static Digraph complete(int n) {
    Digraph d(n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v) d.add_arc(u, v);
    return d;
  }

private:
  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw DomainError("Digraph: vertex out of range");
    if (u == v) throw DomainError("Digraph: self-arc rejected");
  }

  int n_ = 0;
  long long arcs_ = 0;
  BitRows out_;
};

inline int min_semidegree(const Digraph& d) {
  if (d.order() < 1) throw DomainError("min_semidegree: empty digraph");
  int best = d.out_degree(0);
  for (int v = 1; v < d.order(); ++v) best = std::min(best, d.out_degree(v));
  for (int deg : d.in_degrees()) best = std::min(best, deg);
  return best;
}

// ---------------------------------------------------------------------------
// BipartiteGraph: parts of fixed sizes, edges cross only. Vertices are local
// indices 0..left_size-1 and 0..right_size-1; callers that care about global
// labels carry their own label maps (see BipartiteFamily).
class BipartiteGraph {
public:
  BipartiteGraph() = default;
  BipartiteGraph(int left, int right)
      : nl_(left), nr_(right), rows_(left, right), right_deg_(right, 0) {
    if (left < 0 || right < 0)
      throw DomainError("BipartiteGraph: negative part size");
  }

  int left_size() const { return nl_; }
  int right_size() const { return nr_; }
  long long edge_count() const { return edges_; }

  bool has_edge(int l, int r) const { return rows_.get(l, r); }

  void add_edge(int l, int r) {
    check_pair(l, r);
    if (rows_.get(l, r)) return;
    rows_.set(l, r);
    ++right_deg_[r];
    ++edges_;
  }

  void remove_edge(int l, int r) {
    check_pair(l, r);
    if (!rows_.get(l, r)) return;
    rows_.reset(l, r);
    --right_deg_[r];
    --edges_;
  }

  int left_degree(int l) const { return rows_.row_popcount(l); }
  int right_degree(int r) const { return right_deg_[r]; }

  std::vector<int> left_neighbors(int l) const {
    std::vector<int> out;
    rows_.for_each_in_row(l, [&](int r) { out.push_back(r); });
    return out;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edges_));
    for (int l = 0; l < nl_; ++l)
      rows_.for_each_in_row(l, [&](int r) { out.emplace_back(l, r); });
    return out;
  }

  const BitRows& left_rows() const { return rows_; }

  // min over both sides; the side minima are also useful on their own
  int min_degree() const {
    int best = nl_ > 0 ? left_degree(0) : 0;
    for (int l = 1; l < nl_; ++l) best = std::min(best, left_degree(l));
    for (int r = 0; r < nr_; ++r) best = std::min(best, right_deg_[r]);
    return best;
  }

  bool operator==(const BipartiteGraph& o) const {
    return nl_ == o.nl_ && nr_ == o.nr_ && rows_ == o.rows_;
  }

  static BipartiteGraph complete(int left, int right) {
    BipartiteGraph b(left, right);
    for (int l = 0; l < left; ++l)
      for (int r = 0; r < right; ++r) b.add_edge(l, r);
    return b;
  }

private:
  void check_pair(int l, int r) const {
    if (l < 0 || r < 0 || l >= nl_ || r >= nr_)
      throw DomainError("BipartiteGraph: vertex out of range");
  }

  int nl_ = 0, nr_ = 0;
  long long edges_ = 0;
  BitRows rows_;
  std::vector<int> right_deg_;
};

// ---------------------------------------------------------------------------
// KPartiteHypergraph: k parts of size n each; edges are crossing k-sets with
// exactly one vertex per part, stored as canonical (part-ordered) tuples of
// local indices, kept sorted for binary-search membership.
class KPartiteHypergraph {
public:
  KPartiteHypergraph() = default;
  KPartiteHypergraph(int k, int n) : k_(k), n_(n) {
    if (k < 2) throw PartSizeMismatch("KPartiteHypergraph: need k >= 2");
    if (n < 1) throw PartSizeMismatch("KPartiteHypergraph: need n >= 1");
  }

  int uniformity() const { return k_; }
  int part_size() const { return n_; }
  long long edge_count() const {
    return static_cast<long long>(flat_.size()) / k_;
  }

  // tuple[t] = local index in part t
  void add_edge(const std::vector<int>& tuple) {
    check_tuple(tuple);
    if (sorted_ && has_edge(tuple)) return;
    flat_.insert(flat_.end(), tuple.begin(), tuple.end());
    sorted_ = false;
  }

  void finalize() const {
    if (sorted_) return;
    long long cnt = edge_count();
    std::vector<int> order(cnt);
    std::iota(order.begin(), order.end(), 0);
    auto tup = [&](long long e) { return flat_.data() + e * k_; };
    std::sort(order.begin(), order.end(), [&](long long a, long long b) {
      return std::lexicographical_compare(tup(a), tup(a) + k_, tup(b), tup(b) + k_);
    });
    std::vector<int> next;
    next.reserve(flat_.size());
    const int* prev = nullptr;
    for (long long e : order) {
      const int* t = tup(e);
      if (prev && std::equal(t, t + k_, prev)) continue;
      next.insert(next.end(), t, t + k_);
      prev = next.data() + next.size() - k_;
    }
    flat_ = std::move(next);
    sorted_ = true;
  }

  bool has_edge(const std::vector<int>& tuple) const {
    check_tuple(tuple);
    finalize();
    long long lo = 0, hi = edge_count();
    while (lo < hi) {
      long long mid = (lo + hi) / 2;
      const int* t = flat_.data() + mid * k_;
      if (std::lexicographical_compare(t, t + k_, tuple.data(), tuple.data() + k_))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == edge_count()) return false;
    const int* t = flat_.data() + lo * k_;
    return std::equal(t, t + k_, tuple.data());
  }

  // Visit each edge as a pointer to k local indices.
  template <class Fn>
  void for_each_edge(Fn&& fn) const {
    finalize();
    for (long long e = 0; e < edge_count(); ++e) fn(flat_.data() + e * k_);
  }

  bool operator==(const KPartiteHypergraph& o) const {
    finalize();
    o.finalize();
    return k_ == o.k_ && n_ == o.n_ && flat_ == o.flat_;
  }

  static KPartiteHypergraph complete(int k, int n) {
    KPartiteHypergraph h(k, n);
    std::vector<int> t(k, 0);
    for (;;) {
      h.add_edge(t);
      int pos = k - 1;
      while (pos >= 0 && t[pos] == n - 1) t[pos--] = 0;
      if (pos < 0) break;
      ++t[pos];
    }
    h.finalize();
    return h;
  }

private:
  void check_tuple(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != k_)
      throw PartSizeMismatch("KPartiteHypergraph: tuple arity != k");
    for (int x : tuple)
      if (x < 0 || x >= n_)
        throw DomainError("KPartiteHypergraph: local index out of range");
  }

  int k_ = 0, n_ = 0;
  mutable bool sorted_ = true;
  mutable std::vector<int> flat_; // stride k_, canonical part order
};

// Minimum, over all crossing d-sets S, of the number of edges containing S.
// A crossing d-set picks d distinct parts and one vertex in each.
inline long long crossing_codegree(const KPartiteHypergraph& h, int d) {
  const int k = h.uniformity();
  const int n = h.part_size();
  if (d <= 0 || d >= k)
    throw DomainError("crossing_codegree: need 0 < d < k");

  // enumerate part subsets of size d
  std::vector<int> parts(d);
  std::iota(parts.begin(), parts.end(), 0);
  long long best = -1;
  for (;;) {
    // enumerate vertex choices for the chosen parts
    std::vector<int> choice(d, 0);
    for (;;) {
      long long cnt = 0;
      h.for_each_edge([&](const int* t) {
        for (int i = 0; i < d; ++i)
          if (t[parts[i]] != choice[i]) return;
        ++cnt;
      });
      if (best < 0 || cnt < best) best = cnt;
      int pos = d - 1;
      while (pos >= 0 && choice[pos] == n - 1) choice[pos--] = 0;
      if (pos < 0) break;
      ++choice[pos];
    }
    int pos = d - 1;
    while (pos >= 0 && parts[pos] == k - d + pos) --pos;
    if (pos < 0) break;
    ++parts[pos];
    for (int i = pos + 1; i < d; ++i) parts[i] = parts[i - 1] + 1;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Permutation of {0..m-1}.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int x : images_) {
      if (x < 0 || x >= static_cast<int>(images_.size()) || seen[x])
        throw DomainError("Permutation: mapping is not a bijection");
      seen[x] = 1;
    }
  }

  static Permutation identity(int m) {
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  bool operator==(const Permutation&) const = default;

private:
  std::vector<int> images_;
};

// ---------------------------------------------------------------------------
// BalancedPartition of [n] into halves V1, V2 (sorted).
class BalancedPartition {
public:
  BalancedPartition() = default;
  BalancedPartition(std::vector<int> v1, std::vector<int> v2)
      : v1_(std::move(v1)), v2_(std::move(v2)) {
    if (v1_.size() != v2_.size())
      throw DomainError("BalancedPartition: halves differ in size");
    std::sort(v1_.begin(), v1_.end());
    std::sort(v2_.begin(), v2_.end());
    const int n = static_cast<int>(v1_.size() + v2_.size());
    std::vector<char> seen(n, 0);
    for (int x : v1_) mark(seen, x);
    for (int x : v2_) mark(seen, x);
    side_.assign(n, 1);
    for (int x : v1_) side_[x] = 0;
  }

  int total() const { return static_cast<int>(v1_.size() + v2_.size()); }
  const std::vector<int>& v1() const { return v1_; }
  const std::vector<int>& v2() const { return v2_; }
  bool in_v1(int v) const { return side_[v] == 0; }

  bool operator==(const BalancedPartition& o) const {
    return v1_ == o.v1_ && v2_ == o.v2_;
  }

private:
  static void mark(std::vector<char>& seen, int x) {
    if (x < 0 || x >= static_cast<int>(seen.size()) || seen[x])
      throw DomainError("BalancedPartition: not a partition of [n]");
    seen[x] = 1;
  }

  std::vector<int> v1_, v2_;
  std::vector<char> side_;
};

// ---------------------------------------------------------------------------
// Plain violation report shared by the verify_* entry points. Verification
// never throws; it enumerates what is wrong.
struct Report {
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
  void fail(std::string what) { violations.push_back(std::move(what)); }
};

} // namespace rainbow
