#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncc/cluster.hpp"
#include "ncc/cube_core.hpp"
#include "ncc/graph_builders.hpp"
#include "ncc/routing.hpp"

using namespace ncc;

namespace {

// Walks the trace edge by edge on the actual graph, checking adjacency and
// kind per step, and returns per-kind step counts.
std::map<EdgeKind, int> replay(const TypedGraph& g, const PathTrace& trace) {
  REQUIRE(trace.vertices.size() == trace.kinds.size() + 1);
  std::map<EdgeKind, int> by_kind;
  for (std::size_t step = 0; step < trace.kinds.size(); ++step) {
    VertexId a = g.id_of(trace.vertices[step]);
    VertexId b = g.id_of(trace.vertices[step + 1]);
    auto e = g.find_edge(a, b);
    REQUIRE(e.has_value());
    REQUIRE(g.edges[*e].kind == trace.kinds[step]);
    by_kind[trace.kinds[step]]++;
  }
  return by_kind;
}

// Structural facts that pin the three phases without reimplementing them:
// long steps flip exactly the differing coordinates in cyclic direction
// order, and the medium count is the number of cycle rotations performed.
void check_phase_structure(const TypedGraph& g, VertexLabel s, VertexLabel t,
                           const PathTrace& trace) {
  const int m = g.m;
  std::map<EdgeKind, int> by_kind = replay(g, trace);
  CHECK(trace.vertices.front() == s);
  CHECK(trace.vertices.back() == t);
  CHECK(by_kind[EdgeKind::Extra] == 0);
  CHECK(by_kind[EdgeKind::Long] == std::popcount(s.v ^ t.v));
  if (!(s == t))
    CHECK(by_kind[EdgeKind::Medium] == m + ((int(t.i) - int(s.i)) % m + m) % m);

  // Long steps appear on strictly advancing directions of the cycle
  // (s.i, s.i+1, ..., wrapping once).
  int sweep = 0;
  for (std::size_t step = 0; step < trace.kinds.size(); ++step) {
    if (trace.kinds[step] != EdgeKind::Long) continue;
    int direction = 0;
    std::uint32_t diff = trace.vertices[step].v ^ trace.vertices[step + 1].v;
    CHECK(std::popcount(diff) == 1);
    direction = std::countr_zero(diff) + 1;
    // Advance the sweep pointer until it reaches this direction.
    while ((int(s.i) - 1 + sweep) % m + 1 != direction) {
      ++sweep;
      REQUIRE(sweep <= m);
    }
  }

  // Short runs ride the shorter arc, so each stays below half a cycle.
  int run = 0;
  for (EdgeKind k : trace.kinds) {
    run = k == EdgeKind::Short ? run + 1 : 0;
    CHECK(run <= (m - 1) / 2);
  }

  CHECK(trace.length() <= std::size_t(m * m + 2 * m));
}

}  // namespace

TEST_CASE("canonical path: frozen nine-step example") {
  auto s = double_fan_strategy(4);
  TypedGraph g = build_cg_doubleprime(4, s);
  VertexLabel from = parse_vertex_label(Stage::DoublePrime, "b0000:d1:p2", 4);
  VertexLabel to = parse_vertex_label(Stage::DoublePrime, "b0001:d1:p2", 4);
  PathTrace trace = canonical_path(g, from, to);
  REQUIRE(trace.length() == 9);
  const std::vector<EdgeKind> kinds{EdgeKind::Long,   EdgeKind::Medium, EdgeKind::Short,
                                    EdgeKind::Medium, EdgeKind::Short,  EdgeKind::Medium,
                                    EdgeKind::Short,  EdgeKind::Medium, EdgeKind::Short};
  CHECK(trace.kinds == kinds);
  const std::vector<std::string> want{
      "b0000:d1:p2", "b0001:d1:p2", "b0001:d2:p1", "b0001:d2:p3", "b0001:d3:p2",
      "b0001:d3:p4", "b0001:d4:p3", "b0001:d4:p1", "b0001:d1:p4", "b0001:d1:p2"};
  REQUIRE(trace.vertices.size() == want.size());
  for (std::size_t idx = 0; idx < want.size(); ++idx)
    CHECK(format_vertex_label(Stage::DoublePrime, trace.vertices[idx], 4) ==
          want[idx]);
  replay(g, trace);
}

TEST_CASE("canonical path: equal endpoints give the empty path") {
  TypedGraph g = build_cg_doubleprime(4, double_fan_strategy(4));
  VertexLabel s{9, 3, 4};
  PathTrace trace = canonical_path(g, s, s);
  CHECK(trace.length() == 0);
  CHECK(trace.vertices == std::vector<VertexLabel>{s});
}

TEST_CASE("canonical path: random pairs stay on the graph with phase structure") {
  for (int m = 4; m <= 6; ++m) {
    CAPTURE(m);
    TypedGraph g = build_cg_doubleprime(m, double_fan_strategy(m));
    std::mt19937_64 rng(987654321);
    std::uniform_int_distribution<VertexId> pick(0, VertexId(g.vertex_count() - 1));
    for (int trial = 0; trial < 70; ++trial) {
      VertexLabel s = g.labels[pick(rng)];
      VertexLabel t = g.labels[pick(rng)];
      CAPTURE(trial);
      PathTrace trace = canonical_path(g, s, t);
      check_phase_structure(g, s, t, trace);
    }
  }
}

TEST_CASE("canonical path: every ordered pair reaches its target at m=4") {
  TypedGraph g = build_cg_doubleprime(4, double_fan_strategy(4));
  // phi_exact routes all pairs and throws on any adjacency or terminus
  // violation, so a clean run certifies the whole table.
  PhiTable phi = phi_exact_serial(g);
  CHECK(phi.total_pairs == 192 * 192);
}

TEST_CASE("canonical path rejects wrong stages and unknown labels") {
  TypedGraph ccc = build_ccc(4);
  CHECK_THROWS_AS(canonical_path(ccc, {0, 1, 0}, {1, 1, 0}), std::invalid_argument);
  TypedGraph g = build_cg_doubleprime(4, double_fan_strategy(4));
  CHECK_THROWS_AS(canonical_path(g, {0, 1, 1}, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(canonical_path(g, {0, 1, 2}, {99, 1, 2}), std::invalid_argument);
}

TEST_CASE("exact load table at m=4: totals and caps") {
  TypedGraph g = build_cg_doubleprime(4, double_fan_strategy(4));
  PhiTable phi = phi_exact(g);
  const std::uint64_t n = g.vertex_count();
  REQUIRE(n == 192);
  CHECK(phi.n == n);
  CHECK(phi.total_pairs == n * n);
  CHECK_FALSE(phi.mode.sampled);

  // No path ever uses a diagonal-pair edge.
  CHECK(phi.max_by_kind[std::size_t(EdgeKind::Extra)] == 0);

  // Every direction carries exactly n^2/2 long traversals in total.
  std::vector<std::uint64_t> per_direction(5, 0);
  for (EdgeId e = 0; e < g.edges.size(); ++e)
    if (g.edges[e].kind == EdgeKind::Long)
      per_direction[g.edges[e].direction] += phi.counts[e];
  for (int dir = 1; dir <= 4; ++dir) {
    CAPTURE(dir);
    CHECK(per_direction[std::size_t(dir)] == n * n / 2);
  }

  // Each prism class carries exactly n^2/2^m and no edge exceeds the caps.
  for (const auto& pc : prism_classes(g)) {
    std::uint64_t class_total = 0;
    for (EdgeId e : pc.edges) class_total += phi.counts[e];
    CHECK(class_total == n * n / 16);
  }
  CHECK(phi.max_by_kind[std::size_t(EdgeKind::Long)] <= n * n / 16);
  CHECK(phi.max_by_kind[std::size_t(EdgeKind::Short)] <= 2 * n * n / 16);
  CHECK(phi.max_by_kind[std::size_t(EdgeKind::Medium)] <= 2 * n * n / 16);

  // Total steps is the sum of the table.
  std::uint64_t sum = 0;
  for (std::uint64_t c : phi.counts) sum += c;
  CHECK(phi.total_steps == sum);

  // Exact tables report raw counts as their own estimates.
  CHECK(phi.estimate(7) == Rational(7));
  CHECK(phi.max_estimate() == Rational(std::int64_t(phi.max_count())));
}

TEST_CASE("parallel and serial load tables agree exactly") {
  for (int m = 4; m <= 5; ++m) {
    CAPTURE(m);
    TypedGraph g = build_cg_doubleprime(m, double_fan_strategy(m));
    PhiTable par = phi_exact(g);
    PhiTable ser = phi_exact_serial(g);
    CHECK(par.counts == ser.counts);
    CHECK(par.total_steps == ser.total_steps);
    CHECK(par.max_by_kind == ser.max_by_kind);

    PhiTable spar = phi_sampled(g, 20000, 77);
    PhiTable sser = phi_sampled_serial(g, 20000, 77);
    CHECK(spar.counts == sser.counts);
    CHECK(spar.total_steps == sser.total_steps);
  }
}

TEST_CASE("sampling every ordered pair reproduces the exact table") {
  TypedGraph g = build_cg_doubleprime(4, double_fan_strategy(4));
  const std::uint64_t n = g.vertex_count();
  PhiTable exact = phi_exact(g);
  PhiTable full = phi_sampled(g, n * n, 12345);
  CHECK(full.mode.sampled);
  CHECK(full.counts == exact.counts);
  // With N = n^2 the estimator is the identity.
  CHECK(full.max_estimate() == Rational(std::int64_t(exact.max_count())));
}

TEST_CASE("sampled estimates are deterministic per seed and close to exact") {
  TypedGraph g = build_cg_doubleprime(4, double_fan_strategy(4));
  PhiTable a = phi_sampled(g, 100000, 2024);
  PhiTable b = phi_sampled(g, 100000, 2024);
  CHECK(a.counts == b.counts);
  CHECK(a.mode.sample_size == 100000);
  CHECK(a.mode.seed == 2024);

  PhiTable exact = phi_exact(g);
  Rational est = a.max_estimate();
  Rational truth(std::int64_t(exact.max_count()));
  Rational ratio = est / truth;
  CHECK(ratio >= Rational(17, 20));
  CHECK(ratio <= Rational(23, 20));
}

TEST_CASE("load table guards its inputs") {
  TypedGraph ccc = build_ccc(4);
  CHECK_THROWS_AS(phi_exact(ccc), std::invalid_argument);
  CHECK_THROWS_AS(phi_sampled(ccc, 10, 1), std::invalid_argument);
  TypedGraph g = build_cg_doubleprime(4, double_fan_strategy(4));
  CHECK_THROWS_AS(phi_sampled(g, 0, 1), std::invalid_argument);
  TypedGraph big = build_cg_doubleprime(8, double_fan_strategy(8));
  CHECK_THROWS_AS(phi_exact(big), std::invalid_argument);
  CHECK_THROWS_AS(phi_exact_serial(big), std::invalid_argument);
}

TEST_CASE("load table CSV lists every edge in id order") {
  TypedGraph g = build_cg_doubleprime(4, double_fan_strategy(4));
  PhiTable phi = phi_sampled(g, 500, 3);
  std::ostringstream out;
  write_phi_csv(out, g, phi);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "edge_id,kind,label_u,label_v,count");
  std::size_t rows = 0;
  std::uint64_t total = 0;
  while (std::getline(in, line)) {
    auto last_comma = line.rfind(',');
    REQUIRE(line.substr(0, line.find(',')) == std::to_string(rows));
    total += std::stoull(line.substr(last_comma + 1));
    ++rows;
  }
  CHECK(rows == g.edge_count());
  CHECK(total == phi.total_steps);
}
