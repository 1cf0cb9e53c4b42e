#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rainbow/sampling.hpp"
#include "rainbow/solvers.hpp"

using namespace rainbow;

namespace {
const RandomSeed kSeed{606060, 905, 0, 0};
const SolveBudget kBudget{};

bool matching_is_valid(const BipartiteGraph& b, const std::vector<int>& m) {
  std::vector<char> used(b.right_size(), 0);
  for (int l = 0; l < b.left_size(); ++l) {
    int r = m[l];
    if (r < 0 || r >= b.right_size() || used[r] || !b.has_edge(l, r))
      return false;
    used[r] = 1;
  }
  return true;
}

} // namespace

TEST_CASE("bipartite pm on complete graphs") {
  BipartitePMResult res = find_bipartite_pm(BipartiteGraph::complete(5, 5));
  REQUIRE(res.found());
  CHECK(matching_is_valid(BipartiteGraph::complete(5, 5), *res.matching));
}

TEST_CASE("isolated left vertex certifies itself") {
  BipartiteGraph b = BipartiteGraph::complete(4, 4);
  for (int r = 0; r < 4; ++r) b.remove_edge(2, r);
  BipartitePMResult res = find_bipartite_pm(b);
  CHECK_FALSE(res.found());
  CHECK(res.hall_violator == std::vector<int>{2});
}

TEST_CASE("unbalanced parts are rejected") {
  CHECK_THROWS_AS(find_bipartite_pm(BipartiteGraph(3, 4)), UnbalancedParts);
}

TEST_CASE("all 3x3 bipartite graphs agree with brute force") {
  for (int mask = 0; mask < 512; ++mask) {
    BipartiteGraph b(3, 3);
    for (int bit = 0; bit < 9; ++bit)
      if (mask & (1 << bit)) b.add_edge(bit / 3, bit % 3);
    BipartitePMResult res = find_bipartite_pm(b);
    bool expect = oracle::bipartite_pm_exists(b);
    CHECK(res.found() == expect);
    if (res.found()) {
      CHECK(matching_is_valid(b, *res.matching));
    } else {
      // the certificate must be a genuine Hall violator
      std::vector<char> nbr(3, 0);
      for (int l : res.hall_violator)
        for (int r : b.left_neighbors(l)) nbr[r] = 1;
      int neighborhood = nbr[0] + nbr[1] + nbr[2];
      CHECK(neighborhood < static_cast<int>(res.hall_violator.size()));
    }
  }
}

TEST_CASE("hamilton solver basics") {
  CHECK_THROWS_AS(
      find_directed_hamilton(Digraph(2), kBudget, kSeed), TooSmall);

  HamiltonResult res =
      find_directed_hamilton(Digraph::complete(10), kBudget, kSeed);
  CHECK(res.status == SolveStatus::found);

  Digraph stuck = Digraph::complete(6);
  for (int v = 0; v < 6; ++v)
    if (v != 3) stuck.remove_arc(3, v); // out-degree 0 at vertex 3
  CHECK(find_directed_hamilton(stuck, kBudget, kSeed).status ==
        SolveStatus::none);
}

TEST_CASE("exact mode agrees with brute force on all 5-vertex tournaments") {
  // a tournament orients each of the 10 edges of K5
  for (int mask = 0; mask < 1024; ++mask) {
    Digraph d(5);
    int bit = 0;
    for (int u = 0; u < 5; ++u)
      for (int v = u + 1; v < 5; ++v, ++bit) {
        if (mask & (1 << bit))
          d.add_arc(u, v);
        else
          d.add_arc(v, u);
      }
    HamiltonResult res = find_directed_hamilton(d, kBudget, kSeed);
    bool expect = oracle::directed_hamilton_exists(d);
    REQUIRE(res.status != SolveStatus::exhausted);
    CHECK((res.status == SolveStatus::found) == expect);
    if (res.status == SolveStatus::found) {
      CHECK(res.cycle.size() == 5);
      for (int t = 0; t < 5; ++t)
        CHECK(d.has_arc(res.cycle[t], res.cycle[(t + 1) % 5]));
    }
  }
}

TEST_CASE("exact mode agrees with brute force on sparse random digraphs") {
  for (int t = 0; t < 60; ++t) {
    Digraph d(7);
    Stream s(kSeed.with_trial(t));
    for (int u = 0; u < 7; ++u)
      for (int v = 0; v < 7; ++v)
        if (u != v && s.bernoulli(0.35)) d.add_arc(u, v);
    HamiltonResult res = find_directed_hamilton(d, kBudget, kSeed);
    REQUIRE(res.status != SolveStatus::exhausted);
    CHECK((res.status == SolveStatus::found) ==
          oracle::directed_hamilton_exists(d));
  }
}

TEST_CASE("heuristic mode finds cycles in dense digraphs and validates them") {
  for (int t = 0; t < 10; ++t) {
    Digraph d(30);
    Stream s(kSeed.with_trial(100 + t));
    for (int u = 0; u < 30; ++u)
      for (int v = 0; v < 30; ++v)
        if (u != v && s.bernoulli(0.3)) d.add_arc(u, v);
    HamiltonResult res = find_directed_hamilton(d, kBudget, kSeed.with_trial(t));
    REQUIRE(res.status == SolveStatus::found);
    std::vector<char> seen(30, 0);
    for (int v : res.cycle) {
      CHECK_FALSE(seen[v]);
      seen[v] = 1;
    }
    for (std::size_t i = 0; i < res.cycle.size(); ++i)
      CHECK(d.has_arc(res.cycle[i], res.cycle[(i + 1) % res.cycle.size()]));
  }
}

TEST_CASE("budget exhaustion is reported as exhausted, never as none") {
  SolveBudget tiny{1, 2000, 1};
  HamiltonResult res =
      find_directed_hamilton(Digraph::complete(20), tiny, kSeed);
  CHECK(res.status == SolveStatus::exhausted);
}

TEST_CASE("kpartite pm on complete hosts") {
  KPartitePMResult res =
      find_kpartite_pm(KPartiteHypergraph::complete(3, 4), kBudget);
  REQUIRE(res.status == SolveStatus::found);
  CHECK(res.edges.size() == 4);
}

TEST_CASE("first-part vertex with no edge gives none") {
  KPartiteHypergraph h(3, 2);
  h.add_edge({0, 0, 0});
  h.add_edge({0, 1, 1});
  h.finalize(); // vertex 1 of part 1 in no edge
  CHECK(find_kpartite_pm(h, kBudget).status == SolveStatus::none);
}

TEST_CASE("kpartite solver agrees with brute force at k=3, n=3") {
  for (int t = 0; t < 60; ++t) {
    KPartiteHypergraph h(3, 3);
    Stream s(kSeed.with_trial(200 + t));
    std::vector<int> tup(3);
    for (tup[0] = 0; tup[0] < 3; ++tup[0])
      for (tup[1] = 0; tup[1] < 3; ++tup[1])
        for (tup[2] = 0; tup[2] < 3; ++tup[2])
          if (s.bernoulli(0.4)) h.add_edge(tup);
    h.finalize();
    KPartitePMResult res = find_kpartite_pm(h, kBudget);
    REQUIRE(res.status != SolveStatus::exhausted);
    CHECK((res.status == SolveStatus::found) ==
          oracle::kpartite3_pm_exists(h));
    if (res.status == SolveStatus::found) {
      std::vector<std::vector<char>> used(3, std::vector<char>(3, 0));
      for (const auto& e : res.edges) {
        CHECK(h.has_edge(e));
        for (int part = 0; part < 3; ++part) {
          CHECK_FALSE(used[part][e[part]]);
          used[part][e[part]] = 1;
        }
      }
    }
  }
}

TEST_CASE("kpartite budget exhaustion is reported as exhausted") {
  SolveBudget tiny{1, 2000, 1};
  CHECK(find_kpartite_pm(KPartiteHypergraph::complete(3, 4), tiny).status ==
        SolveStatus::exhausted);
}

TEST_CASE("solve budget validates") {
  SolveBudget bad{0, 1000, 5};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("path rotations splice correctly") {
  // pure sequence algebra: every rotation must permute the vertex set,
  // keep only old-consecutive pairs plus the two chords, and move the
  // advertised endpoint
  const int n = 11;
  Stream s(RandomSeed{4242, 905, 1, 0});
  for (int trial = 0; trial < 200; ++trial) {
    detail::PathState ps;
    ps.reset(n, 0);
    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    s.shuffle(rest);
    for (int v : rest) ps.push_head(v);
    const std::vector<int> old = ps.seq;
    auto old_pair = [&](int a, int b) {
      for (int t = 0; t + 1 < n; ++t)
        if (old[t] == a && old[t + 1] == b) return true;
      return false;
    };

    const int kind = static_cast<int>(s.next_below(3));
    int expect_head = old.back(), expect_tail = old.front();
    std::pair<int, int> chord1{-1, -1}, chord2{-1, -1};
    if (kind == 0) {
      int i = 1 + static_cast<int>(s.next_below(n - 2));       // 1..n-2
      int p = i + 1 + static_cast<int>(s.next_below(n - 1 - i)); // i+1..n-1
      chord1 = {old[n - 1], old[i]};
      chord2 = {old[i - 1], old[p]};
      ps.rotate_head(i, p);
      expect_head = old[p - 1];
    } else if (kind == 1) {
      int a = 1 + static_cast<int>(s.next_below(n - 2)); // 1..n-2
      int c = static_cast<int>(s.next_below(a));         // 0..a-1
      chord1 = {old[a], old[0]};
      chord2 = {old[c], old[a + 1]};
      ps.rotate_tail(a, c);
      expect_tail = old[c + 1];
    } else {
      int j = static_cast<int>(s.next_below(n - 1)); // break (j, j+1)
      chord1 = {old[n - 1], old[0]};                 // the closing arc
      ps.reopen(j);
      expect_head = old[j];
      expect_tail = old[j + 1];
    }

    std::vector<int> sorted_new = ps.seq, sorted_old = old;
    std::sort(sorted_new.begin(), sorted_new.end());
    std::sort(sorted_old.begin(), sorted_old.end());
    REQUIRE(sorted_new == sorted_old);
    CHECK(ps.head() == expect_head);
    CHECK(ps.tail() == expect_tail);
    for (int t = 0; t < n; ++t) CHECK(ps.pos[ps.seq[t]] == t);
    for (int t = 0; t + 1 < n; ++t) {
      int a = ps.seq[t], b = ps.seq[t + 1];
      bool fine = old_pair(a, b) || std::make_pair(a, b) == chord1 ||
                  std::make_pair(a, b) == chord2;
      CHECK(fine);
    }
  }
}
