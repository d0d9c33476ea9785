// Acceptance suite for the truncated-hypercube pipeline. Each criterion
// exercises one end-to-end guarantee and prints a single PASS/FAIL line;
// the process exits 0 only when every criterion passes. All tolerances and
// seeds are pinned here in code.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncc/cluster.hpp"
#include "ncc/cube_core.hpp"
#include "ncc/expansion.hpp"
#include "ncc/graph_builders.hpp"
#include "ncc/rational.hpp"
#include "ncc/routing.hpp"
#include "ncc/typed_graph.hpp"

#include "fixtures.hpp"

using namespace ncc;

namespace {

constexpr std::uint64_t kSubsetSeed = 20260817;  // criterion 6 random cuts
constexpr std::uint64_t kSampleSeed = 1;         // criterion 6 sampled table
constexpr std::uint64_t kSampleSize = 100000;
constexpr double kCheegerSlack = 1e-6;

// Collects failure messages for one criterion; empty == pass.
struct Checker {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string u64(std::uint64_t x) { return std::to_string(x); }

// Graphs and exact load tables are shared across criteria.
std::map<int, TypedGraph> g_gpp;
std::map<int, PhiTable> g_phi;

const TypedGraph& edge_truncated(int m) {
  auto it = g_gpp.find(m);
  if (it == g_gpp.end())
    it = g_gpp.emplace(m, build_cg_doubleprime(m, double_fan_strategy(m))).first;
  return it->second;
}

const PhiTable& exact_phi(int m) {
  auto it = g_phi.find(m);
  if (it == g_phi.end()) it = g_phi.emplace(m, phi_exact(edge_truncated(m))).first;
  return it->second;
}

bool accept_m7() {
  const char* v = std::getenv("NCC_ACCEPT_M7");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

std::vector<int> phi_dims() {
  std::vector<int> dims{4, 5, 6};
  if (accept_m7()) dims.push_back(7);
  return dims;
}

// --- criterion 1: vertex/edge census of all three stages + face counts ----

void criterion_census(Checker& c) {
  for (int m = 4; m <= 7; ++m) {
    const std::string tag = "m=" + std::to_string(m) + ": ";
    const std::uint64_t two_m = 1ull << m;
    const std::uint64_t cube_edges = std::uint64_t(m) << (m - 1);
    const std::uint64_t n = std::uint64_t(6 * m - 12) << m;

    TypedGraph cube = build_hypercube(m);
    c.require(cube.vertex_count() == two_m, tag + "cube vertex count");
    c.require(cube.edge_count() == cube_edges, tag + "cube edge count");
    c.require(is_connected(cube), tag + "cube connectivity");

    TypedGraph gp = build_cg_prime(m, double_fan_strategy(m));
    GraphStats sp = stats(gp);
    c.require(sp.vertices == std::uint64_t(m) << m, tag + "vertex-truncation vertex count");
    c.require(sp.by_kind[std::size_t(EdgeKind::Long)] == cube_edges,
              tag + "vertex-truncation long count");
    c.require(sp.by_kind[std::size_t(EdgeKind::Medium)] == (std::uint64_t(m) << m),
              tag + "vertex-truncation medium count");
    c.require(sp.by_kind[std::size_t(EdgeKind::Extra)] == (std::uint64_t(2 * m - 6) << m),
              tag + "vertex-truncation extra count");
    c.require(sp.by_kind[std::size_t(EdgeKind::Short)] == 0,
              tag + "vertex truncation has no short edges");
    c.require(is_connected(gp), tag + "vertex-truncation connectivity");

    const TypedGraph& g2 = edge_truncated(m);
    GraphStats s2 = stats(g2);
    c.require(s2.vertices == n, tag + "edge-truncation vertex count");
    c.require(s2.edges_total == 2 * n, tag + "edge-truncation edge count");
    c.require(s2.degree_histogram.size() == 1 && s2.degree_histogram.count(4) == 1 &&
                  s2.degree_histogram.at(4) == n,
              tag + "edge truncation is 4-regular");
    c.require(s2.by_kind[std::size_t(EdgeKind::Short)] == n, tag + "short edge count");
    c.require(s2.by_kind[std::size_t(EdgeKind::Medium)] == (std::uint64_t(m) << m),
              tag + "medium edge count");
    c.require(s2.by_kind[std::size_t(EdgeKind::Extra)] == (std::uint64_t(2 * m - 6) << m),
              tag + "extra edge count");
    c.require(s2.by_kind[std::size_t(EdgeKind::Long)] == n / 2, tag + "long edge count");
    c.require(is_connected(g2), tag + "edge-truncation connectivity");

    // Per cube vertex: m medium edges, 2m-6 extra edges, m short cycles.
    std::vector<std::uint64_t> medium_at(two_m, 0), extra_at(two_m, 0);
    for (const Edge& e : g2.edges) {
      if (e.kind == EdgeKind::Medium || e.kind == EdgeKind::Extra) {
        c.require(g2.labels[e.u].v == g2.labels[e.v].v,
                  tag + "medium/extra edge stays inside one cluster");
        (e.kind == EdgeKind::Medium ? medium_at : extra_at)[g2.labels[e.u].v] += 1;
      }
    }
    bool medium_ok = true, extra_ok = true;
    for (std::uint64_t v = 0; v < two_m; ++v) {
      medium_ok = medium_ok && medium_at[v] == std::uint64_t(m);
      extra_ok = extra_ok && extra_at[v] == std::uint64_t(2 * m - 6);
    }
    c.require(medium_ok, tag + "every cluster has m medium edges");
    c.require(extra_ok, tag + "every cluster has 2m-6 extra edges");

    auto short_neighbors = [&](VertexId u) {
      std::vector<VertexId> out;
      for (std::uint64_t idx = g2.adj_off[u]; idx < g2.adj_off[u + 1]; ++idx)
        if (g2.edges[g2.adj_edge[idx]].kind == EdgeKind::Short) out.push_back(g2.adj_vtx[idx]);
      return out;
    };
    std::vector<std::uint64_t> rings_at(two_m, 0);
    bool rings_ok = true;
    std::size_t u = 0;
    while (u < g2.vertex_count()) {
      const VertexLabel head = g2.labels[u];
      std::size_t end = u;
      while (end < g2.vertex_count() && g2.labels[end].v == head.v && g2.labels[end].i == head.i)
        ++end;
      const std::size_t ring = end - u;  // ports of cluster vertex (v,i)
      // One closed short cycle through all ports, never leaving the group.
      VertexId start = VertexId(u), prev = start;
      std::vector<VertexId> sn = short_neighbors(start);
      rings_ok = rings_ok && sn.size() == 2;
      if (sn.size() == 2) {
        VertexId cur = sn[0];
        std::size_t steps = 1;
        while (cur != start && steps <= ring + 1) {
          rings_ok = rings_ok && g2.labels[cur].v == head.v && g2.labels[cur].i == head.i;
          std::vector<VertexId> nb = short_neighbors(cur);
          if (nb.size() != 2) {
            rings_ok = false;
            break;
          }
          VertexId nxt = (nb[0] == prev) ? nb[1] : nb[0];
          prev = cur;
          cur = nxt;
          ++steps;
        }
        rings_ok = rings_ok && cur == start && steps == ring;
      }
      rings_at[head.v] += 1;
      u = end;
    }
    c.require(rings_ok, tag + "each port group forms one short cycle");
    bool ring_count_ok = true;
    for (std::uint64_t v = 0; v < two_m; ++v)
      ring_count_ok = ring_count_ok && rings_at[v] == std::uint64_t(m);
    c.require(ring_count_ok, tag + "every cluster has m short cycles");

    FVector fv = f_vector_ncc(m);
    c.require(fv.f0 == two_m, tag + "f0 equals cube vertex count");
    c.require(fv.f1 == cube_edges, tag + "f1 equals cube edge count");
    c.require(fv.f2 == (std::uint64_t(3 * m - 6) << (m - 2)), tag + "f2 closed form");
    c.require(fv.f3 == (std::uint64_t(m - 2) << (m - 2)), tag + "f3 closed form");
    c.require(fv.f0 + fv.f2 == fv.f1 + fv.f3, tag + "Euler relation f0-f1+f2-f3=0");
  }
}

// --- criterion 2: exact per-edge load table under the canonical paths ------

void criterion_exact_loads(Checker& c) {
  for (int m : phi_dims()) {
    const std::string tag = "m=" + std::to_string(m) + ": ";
    const TypedGraph& g = edge_truncated(m);
    const PhiTable& t = exact_phi(m);
    const std::uint64_t n = g.vertex_count();
    const std::uint64_t pairs = n * n;

    c.require(!t.mode.sampled && t.total_pairs == pairs, tag + "table covers all ordered pairs");
    c.require(t.max_by_kind[std::size_t(EdgeKind::Extra)] == 0, tag + "extra edges carry zero load");

    std::vector<std::uint64_t> per_direction(std::size_t(m), 0);
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      const Edge& e = g.edges[id];
      if (e.kind == EdgeKind::Long) per_direction[std::size_t(e.direction - 1)] += t.counts[id];
    }
    bool dir_ok = true;
    for (int d = 0; d < m; ++d) dir_ok = dir_ok && per_direction[std::size_t(d)] == pairs / 2;
    c.require(dir_ok, tag + "each direction carries exactly n^2/2 long steps");

    std::vector<PrismClass> classes = prism_classes(g);
    c.require(classes.size() == (std::size_t(m) << (m - 1)), tag + "prism class count");
    const std::uint64_t per_class = pairs >> m;  // (n^2/2) / 2^(m-1)
    bool class_ok = true;
    for (const PrismClass& cls : classes) {
      std::uint64_t total = 0;
      for (EdgeId id : cls.edges) total += t.counts[id];
      class_ok = class_ok && total == per_class;
    }
    c.require(class_ok, tag + "each prism class carries exactly n^2/2^m long steps");

    c.require(t.max_by_kind[std::size_t(EdgeKind::Long)] <= per_class,
              tag + "long load cap n^2/2^m");
    c.require(t.max_by_kind[std::size_t(EdgeKind::Short)] <= 2 * per_class,
              tag + "short load cap 2n^2/2^m");
    c.require(t.max_by_kind[std::size_t(EdgeKind::Medium)] <= 2 * per_class,
              tag + "medium load cap 2n^2/2^m");
  }
}

// --- criterion 3: flow-congestion expansion bound meets the safe target ----

void criterion_congestion_bound(Checker& c) {
  for (int m : phi_dims()) {
    const std::string tag = "m=" + std::to_string(m) + ": ";
    Rational bound = sinclair_bound(exact_phi(m));
    Rational nominal(1, 12 * (m - 2));
    Rational safe(1, 24 * (m - 2));
    c.require(bound >= safe, tag + "congestion bound " + bound.str() +
                                 " >= safe target " + safe.str() +
                                 " (nominal target " + nominal.str() + ")");
  }
}

// --- criterion 4: separator witness vs. the expansion lower bound ----------

void criterion_separator(Checker& c) {
  std::vector<Rational> lower_ratio, size_ratio;
  for (int m = 4; m <= 10; ++m) {
    const std::string tag = "m=" + std::to_string(m) + ": ";
    const TypedGraph& g = edge_truncated(m);
    const int dir = ClusterGraph::double_fan(m).min_degree_direction();
    SeparatorCertificate cert = direction_separator(g, dir, false, Rational(1, 3));
    c.require(verify_separator(g, cert), tag + "separator certificate verifies");
    c.require(cert.c_set.size() == (std::size_t(3) << (m - 1)),
              tag + "separator size is 3*2^(m-1), got " + u64(cert.c_set.size()));

    if (m <= 6) {
      const std::uint64_t n = g.vertex_count();
      Rational lower = separator_lower_bound(sinclair_bound(exact_phi(m)), n, Rational(1, 3), 4);
      Rational witness(std::int64_t(cert.c_set.size()));
      c.require(lower <= witness, tag + "lower bound " + lower.str() +
                                      " <= witness size " + witness.str());
      Rational scale(std::int64_t(1) << m);
      lower_ratio.push_back(lower / scale);
      size_ratio.push_back(witness / scale);
    }
  }
  // Both quantities grow like 2^m: each ratio family stays within factor 10.
  auto band_ok = [](const std::vector<Rational>& r) {
    Rational lo = r.front(), hi = r.front();
    for (const Rational& x : r) {
      if (x < lo) lo = x;
      if (hi < x) hi = x;
    }
    return hi <= Rational(10) * lo;
  };
  c.require(band_ok(lower_ratio), "lower-bound/2^m stays within a factor-10 band");
  c.require(band_ok(size_ratio), "witness-size/2^m stays within a factor-10 band");
}

// --- criterion 5: contractions reproduce the coarser stages exactly --------

void criterion_contractions(Checker& c) {
  for (int m = 4; m <= 8; ++m) {
    const std::string tag = "m=" + std::to_string(m) + ": ";
    const TypedGraph& g2 = edge_truncated(m);
    TypedGraph gp = build_cg_prime(m, double_fan_strategy(m));
    c.require(graphs_equal(contract_to_prime(g2), gp),
              tag + "short-cycle contraction equals the vertex truncation");
    c.require(graphs_equal(contract_to_cube(gp), build_hypercube(m)),
              tag + "cluster contraction equals the cube");
  }
}

// --- criterion 6: cross-checks between independent estimators --------------

void criterion_cross_checks(Checker& c) {
  // (a) Any cut must carry every path that crosses it: summed loads on the
  // boundary of S dominate |S| * (n - |S|).
  const TypedGraph& g4 = edge_truncated(4);
  const PhiTable& t4 = exact_phi(4);
  const std::uint64_t n = g4.vertex_count();
  std::mt19937_64 rng(kSubsetSeed);
  bool cuts_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::uint8_t> in_s(n, 0);
    std::uint64_t size_s = 0;
    for (std::uint64_t v = 0; v < n; ++v) {
      in_s[v] = std::uint8_t(rng() & 1);
      size_s += in_s[v];
    }
    std::uint64_t crossing = 0;
    for (EdgeId id : edge_boundary(g4, in_s)) crossing += t4.counts[id];
    cuts_ok = cuts_ok && crossing >= size_s * (n - size_s);
  }
  c.require(cuts_ok, "boundary loads dominate |S|(n-|S|) on 100 seeded subsets");

  // (b) The spectral lower bound never exceeds the brute-force optimum.
  std::vector<std::pair<std::string, TypedGraph>> calibration;
  for (std::uint32_t k = 4; k <= 12; ++k)
    calibration.emplace_back("C_" + std::to_string(k), ncc_test::make_cycle(k));
  for (std::uint32_t k = 3; k <= 6; ++k)
    calibration.emplace_back("K_" + std::to_string(k), ncc_test::make_complete(k));
  calibration.emplace_back("CCC_3", build_ccc(3));
  for (const auto& [name, g] : calibration) {
    CheegerResult spectral = cheeger_lower(g);
    ExpansionResult brute = expansion_bruteforce(g);
    c.require(spectral.bound <= brute.value.to_double() + kCheegerSlack,
              name + ": spectral bound exceeds brute-force expansion");
  }

  // (c) The sampled load estimator lands within 15% of the exact maximum.
  PhiTable sampled = phi_sampled(g4, kSampleSize, kSampleSeed);
  Rational est = sampled.max_estimate();
  Rational exact(std::int64_t(t4.max_count()));
  c.require(est >= Rational(17, 20) * exact && est <= Rational(23, 20) * exact,
            "sampled max " + est.str() + " within 15% of exact max " + exact.str());
}

struct CriterionEntry {
  std::string label;
  void (*run)(Checker&);
};

}  // namespace

int main() {
  const CriterionEntry criteria[] = {
      {"stage census", criterion_census},
      {"exact load table", criterion_exact_loads},
      {"congestion bound", criterion_congestion_bound},
      {"separator witness", criterion_separator},
      {"contraction round-trip", criterion_contractions},
      {"cross-checks", criterion_cross_checks},
  };

  int passed = 0;
  int number = 0;
  for (const CriterionEntry& entry : criteria) {
    ++number;
    Checker checker;
    auto begin = std::chrono::steady_clock::now();
    try {
      entry.run(checker);
    } catch (const std::exception& e) {
      checker.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    std::ostringstream line;
    line << "criterion " << number << " (" << entry.label << "): "
         << (checker.failures.empty() ? "PASS" : "FAIL");
    line.setf(std::ios::fixed);
    line.precision(1);
    line << " [" << secs << "s]";
    std::cout << line.str() << "\n";
    for (const std::string& f : checker.failures) std::cout << "  - " << f << "\n";
    if (checker.failures.empty()) ++passed;
  }
  std::cout << "acceptance: " << passed << "/6 criteria passed\n";
  return passed == 6 ? 0 : 1;
}
