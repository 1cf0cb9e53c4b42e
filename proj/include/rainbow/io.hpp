#pragma once
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/errors.hpp"

// Edge-list text format. One edge per line: "u v" for graphs, "u > v" for
// arcs, "a1 a2 ... ak" for hyperedges; header "#kind n [m|k]". Labels are
// 1-indexed in text, 0-indexed in memory; this is the one conversion point.
// Auxiliary graphs may carry a provenance line "#aux kind=B|D|H seed=... pi=..."
// ahead of the header; readers skip it.

namespace rainbow {
namespace io {

inline void write_aux_header(std::ostream& os, char kind, std::uint64_t seed,
                             std::uint64_t pi_digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(pi_digest));
  os << "#aux kind=" << kind << " seed=" << seed << " pi=" << buf << "\n";
}

namespace detail {

inline std::string next_content_line(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("#aux", 0) == 0) continue; // provenance, not payload
    return line;
  }
  return {};
}

inline std::vector<long long> parse_ints(const std::string& line,
                                         bool allow_gt) {
  std::vector<long long> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    if (tok == ">") {
      if (!allow_gt) throw IoError("unexpected '>' in edge line");
      continue;
    }
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw IoError("bad token in edge line: " + tok);
    }
  }
  return out;
}

inline void expect_header(const std::string& line, const std::string& kind,
                          std::vector<long long>& args) {
  if (line.rfind("#" + kind, 0) != 0)
    throw IoError("expected '#" + kind + "' header, got: " + line);
  args = parse_ints(line.substr(kind.size() + 1), false);
}

} // namespace detail

// ---- Graph ----------------------------------------------------------------

inline void write_graph(std::ostream& os, const Graph& g) {
  os << "#graph " << g.order() << "\n";
  for (auto [u, v] : g.edges()) os << u + 1 << " " << v + 1 << "\n";
}

inline Graph read_graph(std::istream& is) {
  std::vector<long long> args;
  detail::expect_header(detail::next_content_line(is), "graph", args);
  if (args.size() != 1 || args[0] < 0) throw IoError("bad graph header");
  Graph g(static_cast<int>(args[0]));
  std::string line;
  while (!(line = detail::next_content_line(is)).empty()) {
    auto e = detail::parse_ints(line, false);
    if (e.size() != 2) throw IoError("graph edge line needs two labels");
    g.add_edge(static_cast<int>(e[0] - 1), static_cast<int>(e[1] - 1));
  }
  return g;
}

// ---- Digraph ----------------------------------------------------------------

inline void write_digraph(std::ostream& os, const Digraph& d) {
  os << "#digraph " << d.order() << "\n";
  for (auto [u, v] : d.arcs()) os << u + 1 << " > " << v + 1 << "\n";
}

inline Digraph read_digraph(std::istream& is) {
  std::vector<long long> args;
  detail::expect_header(detail::next_content_line(is), "digraph", args);
  if (args.size() != 1 || args[0] < 0) throw IoError("bad digraph header");
  Digraph d(static_cast<int>(args[0]));
  std::string line;
  while (!(line = detail::next_content_line(is)).empty()) {
    auto e = detail::parse_ints(line, true);
    if (e.size() != 2) throw IoError("arc line needs two labels");
    d.add_arc(static_cast<int>(e[0] - 1), static_cast<int>(e[1] - 1));
  }
  return d;
}

// ---- BipartiteGraph ---------------------------------------------------------
// Header "#bipartite n m": n total vertices, m of them in the left part.
// Left vertices are labels 1..m, right vertices m+1..n.

inline void write_bipartite(std::ostream& os, const BipartiteGraph& b) {
  os << "#bipartite " << b.left_size() + b.right_size() << " " << b.left_size()
     << "\n";
  for (auto [l, r] : b.edges())
    os << l + 1 << " " << b.left_size() + r + 1 << "\n";
}

inline BipartiteGraph read_bipartite(std::istream& is) {
  std::vector<long long> args;
  detail::expect_header(detail::next_content_line(is), "bipartite", args);
  if (args.size() != 2 || args[1] < 0 || args[1] > args[0])
    throw IoError("bad bipartite header");
  const int m = static_cast<int>(args[1]);
  const int nr = static_cast<int>(args[0] - args[1]);
  BipartiteGraph b(m, nr);
  std::string line;
  while (!(line = detail::next_content_line(is)).empty()) {
    auto e = detail::parse_ints(line, false);
    if (e.size() != 2) throw IoError("bipartite edge line needs two labels");
    long long u = e[0], v = e[1];
    if (u > v) std::swap(u, v);
    if (u < 1 || u > m || v <= m || v > args[0])
      throw IoError("bipartite edge does not cross the parts");
    b.add_edge(static_cast<int>(u - 1), static_cast<int>(v - m - 1));
  }
  return b;
}

// ---- KPartiteHypergraph -----------------------------------------------------
// Header "#hypergraph n k": k parts of n vertices each; part t holds global
// labels (t-1)*n+1 .. t*n.

inline void write_hypergraph(std::ostream& os, const KPartiteHypergraph& h) {
  const int k = h.uniformity(), n = h.part_size();
  os << "#hypergraph " << n << " " << k << "\n";
  h.for_each_edge([&](const int* t) {
    for (int i = 0; i < k; ++i) {
      if (i) os << " ";
      os << i * n + t[i] + 1;
    }
    os << "\n";
  });
}

inline KPartiteHypergraph read_hypergraph(std::istream& is) {
  std::vector<long long> args;
  detail::expect_header(detail::next_content_line(is), "hypergraph", args);
  if (args.size() != 2 || args[0] < 1 || args[1] < 2)
    throw IoError("bad hypergraph header");
  const int n = static_cast<int>(args[0]);
  const int k = static_cast<int>(args[1]);
  KPartiteHypergraph h(k, n);
  std::string line;
  while (!(line = detail::next_content_line(is)).empty()) {
    auto e = detail::parse_ints(line, false);
    if (static_cast<int>(e.size()) != k)
      throw IoError("hyperedge line needs k labels");
    std::vector<int> tuple(k);
    for (int i = 0; i < k; ++i) {
      long long lo = static_cast<long long>(i) * n + 1;
      if (e[i] < lo || e[i] >= lo + n)
        throw IoError("hyperedge label outside its part");
      tuple[i] = static_cast<int>(e[i] - lo);
    }
    h.add_edge(tuple);
  }
  h.finalize();
  return h;
}

// ---- convenience ------------------------------------------------------------

template <class T, class WriteFn>
std::string to_string(const T& x, WriteFn&& fn) {
  std::ostringstream os;
  fn(os, x);
  return os.str();
}

} // namespace io
} // namespace rainbow
