#include "ncc/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ncc/cube_core.hpp"
#include "ncc/expansion.hpp"
#include "ncc/graph_builders.hpp"
#include "ncc/io.hpp"
#include "ncc/routing.hpp"
#include "ncc/typed_graph.hpp"

namespace ncc {

namespace {

void add(std::vector<CheckResult>& out, std::string name, bool pass, std::string detail) {
  out.push_back({std::move(name), pass, std::move(detail)});
}

std::string counts_detail(const GraphStats& st) {
  std::ostringstream os;
  os << "vertices=" << st.vertices << " long=" << st.by_kind[0] << " medium=" << st.by_kind[1]
     << " extra=" << st.by_kind[2] << " short=" << st.by_kind[3];
  return os.str();
}

// Walks the short edges of one cycle (v,i) and returns the number of
// vertices on the ring through its first port, or 0 on any irregularity.
std::uint64_t ring_length(const TypedGraph& gpp, std::uint32_t v, int i,
                          const ClusterGraph& c) {
  const VertexId none = VertexId(gpp.vertex_count());
  const VertexId start = gpp.id_of({v, std::uint8_t(i), std::uint8_t(c.rotation(i)[0])});
  VertexId prev = none, cur = start;
  std::uint64_t len = 0;
  do {
    VertexId a = none, b = none;
    for (std::uint64_t k = gpp.adj_off[cur]; k < gpp.adj_off[cur + 1]; ++k) {
      if (gpp.edges[gpp.adj_edge[k]].kind != EdgeKind::Short) continue;
      const VertexId w = gpp.adj_vtx[k];
      if (gpp.labels[w].v != v || gpp.labels[w].i != i) return 0;
      if (a == none)
        a = w;
      else if (b == none)
        b = w;
      else
        return 0;
    }
    if (a == none || b == none) return 0;
    const VertexId next = a == prev ? b : b == prev ? a : a;
    prev = cur;
    cur = next;
    ++len;
  } while (cur != start && len <= gpp.vertex_count());
  return cur == start ? len : 0;
}

// Connectivity of one cluster subgraph (short+medium+extra edges of a fixed
// cube vertex) after deleting two ports. Ports of cube vertex v occupy the
// contiguous id block [v*P, (v+1)*P).
bool cluster_connected_minus_two(const TypedGraph& gpp, std::uint32_t v, std::size_t drop_a,
                                 std::size_t drop_b) {
  const std::size_t P = gpp.strategy->at(v).total_ports();
  const VertexId base = VertexId(v * P);
  std::vector<std::uint8_t> seen(P, 0);
  seen[drop_a] = seen[drop_b] = 1;
  std::size_t first = 0;
  while (first < P && seen[first]) ++first;
  if (first == P) return true;
  std::vector<std::size_t> stack{first};
  seen[first] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    const VertexId uid = base + VertexId(u);
    for (std::uint64_t k = gpp.adj_off[uid]; k < gpp.adj_off[uid + 1]; ++k) {
      if (gpp.edges[gpp.adj_edge[k]].kind == EdgeKind::Long) continue;
      const std::size_t w = gpp.adj_vtx[k] - base;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == P - 2;
}

}  // namespace

std::vector<CheckResult> run_verification(int m, std::shared_ptr<const ClusterStrategy> s,
                                          bool with_phi) {
  std::vector<CheckResult> out;
  const std::uint64_t cubes = std::uint64_t(1) << m;

  TypedGraph cube, gp, ccc, gpp;
  try {
    cube = build_hypercube(m);
    gp = build_cg_prime(m, s);
    ccc = build_ccc(m);
    gpp = build_cg_doubleprime(m, s);
  } catch (const std::exception& ex) {
    add(out, "build", false, ex.what());
    return out;
  }
  add(out, "build", true, "all four stages constructed");

  {
    const GraphStats st = stats(cube);
    const bool pass = st.vertices == cubes && st.edges_total == std::uint64_t(m) * (cubes / 2);
    add(out, "cube-census", pass, counts_detail(st));

    bool dirs = true;
    for (int i = 1; i <= m; ++i)
      dirs = dirs && st.long_per_direction[std::size_t(i - 1)] == cubes / 2;
    add(out, "cube-direction-counts", dirs, "expected 2^(m-1) per direction");
  }

  {
    const FVector f = f_vector_ncc(m);
    const bool euler = f.f0 + f.f2 == f.f1 + f.f3;
    const bool graph_match = f.f0 == cubes && f.f1 == std::uint64_t(m) * (cubes / 2);
    std::ostringstream os;
    os << "f=(" << f.f0 << ',' << f.f1 << ',' << f.f2 << ',' << f.f3 << ')';
    add(out, "f-vector", euler && graph_match, os.str());
  }

  {
    bool pass = true;
    std::string detail = "every adjacent direction pair yields a valid facet";
    for (int i = 1; i <= m && pass; ++i) {
      try {
        const FaceVector w = two_face_witness(m, i, succ_dir(i, m));
        if (!is_first_star_facet(w)) {
          pass = false;
          detail = "witness rejected at direction " + std::to_string(i);
        }
      } catch (const std::exception& ex) {
        pass = false;
        detail = ex.what();
      }
    }
    if (pass && m >= 5) {
      FaceVector bad;
      bad.m = m;
      bad.stars = dir_bit(1) | dir_bit(2) | dir_bit(4);
      if (is_first_star_facet(bad)) {
        pass = false;
        detail = "non-adjacent star pair accepted";
      }
    }
    add(out, "facet-witnesses", pass, detail);
  }

  if (m <= 12) {
    std::uint64_t found = 0;
    for (int p = 2; p <= m; ++p)
      for (int q = p + 1; q <= m; ++q) {
        FaceVector f;
        f.m = m;
        f.stars = dir_bit(1) | dir_bit(p) | dir_bit(q);
        // Sign patterns on the m-3 non-star coordinates are enumerated; the
        // facet criterion ignores signs, so multiply instead of looping.
        if (is_first_star_facet(f)) found += std::uint64_t(1) << (m - 3);
      }
    const std::uint64_t expect = std::uint64_t(m - 1) * (std::uint64_t(1) << (m - 3));
    add(out, "facet-count", found == expect,
        "found " + std::to_string(found) + ", expected " + std::to_string(expect));
  }

  {
    const auto issues = s->at(0).invariant_failures();
    add(out, "cluster-invariants", issues.empty(),
        issues.empty() ? "representative cluster passes" : issues.front());
  }

  {
    const ValidationReport rep = validate_strategy(*s);
    std::string detail = "clusters=" + std::to_string(rep.clusters_checked) +
                         " glued-pairs=" + std::to_string(rep.pairs_checked);
    if (!rep.pass()) detail = rep.issues.front().where + ": " + rep.issues.front().invariant;
    add(out, "strategy-link-condition", rep.pass(), detail);
  }

  {
    const GraphStats st = stats(gp);
    const bool pass = st.vertices == std::uint64_t(m) * cubes &&
                      st.by_kind[0] == std::uint64_t(m) * (cubes / 2) &&
                      st.by_kind[1] == std::uint64_t(m) * cubes &&
                      st.by_kind[2] == std::uint64_t(2 * m - 6) * cubes && st.by_kind[3] == 0;
    add(out, "prime-census", pass, counts_detail(st));

    bool degrees = true;
    for (VertexId u = 0; u < gp.vertex_count() && degrees; ++u) {
      const VertexLabel& l = gp.labels[u];
      degrees = std::uint64_t(gp.degree(u)) == 1 + std::uint64_t(s->at(l.v).degree(l.i));
    }
    add(out, "prime-degrees", degrees, "degree(v,i) = 1 + cluster degree of i");

    std::vector<std::uint64_t> within(cubes, 0);
    for (const Edge& e : gp.edges)
      if (e.kind != EdgeKind::Long) ++within[gp.labels[e.u].v];
    const bool cluster_edges =
        std::all_of(within.begin(), within.end(),
                    [&](std::uint64_t c) { return c == std::uint64_t(3 * m - 6); });
    add(out, "prime-cluster-edges", cluster_edges, "3m-6 medium+extra edges per cube vertex");
  }

  {
    const GraphStats st = stats(ccc);
    bool pass = st.vertices == std::uint64_t(m) * cubes &&
                st.by_kind[0] == std::uint64_t(m) * (cubes / 2) &&
                st.by_kind[1] == std::uint64_t(m) * cubes && st.by_kind[2] == 0 &&
                st.by_kind[3] == 0;
    pass = pass && st.degree_histogram.size() == 1 &&
           st.degree_histogram.count(3) == 1;
    add(out, "ccc-census", pass, counts_detail(st));
    add(out, "ccc-connected", is_connected(ccc), "breadth-first search from vertex 0");
  }

  const std::uint64_t n = gpp.vertex_count();
  {
    const GraphStats st = stats(gpp);
    const bool pass = st.vertices == std::uint64_t(6 * m - 12) * cubes &&
                      st.by_kind[0] == n / 2 && st.by_kind[1] == std::uint64_t(m) * cubes &&
                      st.by_kind[2] == std::uint64_t(2 * m - 6) * cubes &&
                      st.by_kind[3] == n && st.edges_total == 2 * n;
    add(out, "doubleprime-census", pass, counts_detail(st));
    const bool regular = st.degree_histogram.size() == 1 && st.degree_histogram.count(4) == 1;
    add(out, "doubleprime-regularity", regular, "degree histogram {4: n}");
  }

  {
    bool pass = true;
    for (VertexId u = 0; u < n && pass; ++u) {
      int shorts = 0, longs = 0, mids = 0;
      for (std::uint64_t k = gpp.adj_off[u]; k < gpp.adj_off[u + 1]; ++k) {
        switch (gpp.edges[gpp.adj_edge[k]].kind) {
          case EdgeKind::Short: ++shorts; break;
          case EdgeKind::Long: ++longs; break;
          default: ++mids; break;
        }
      }
      pass = shorts == 2 && longs == 1 && mids == 1;
    }
    add(out, "doubleprime-kind-profile", pass,
        "each vertex: two short, one long, one medium-or-extra");
  }

  {
    bool pass = true;
    for (std::uint32_t v = 0; v < cubes && pass; ++v) {
      const ClusterGraph& c = s->at(v);
      for (int i = 1; i <= m && pass; ++i)
        pass = ring_length(gpp, v, i, c) == std::uint64_t(c.degree(i));
    }
    add(out, "short-cycle-lengths", pass, "ring through (v,i) has the cluster degree of i");
  }

  if (m <= 6) {
    bool pass = true;
    const std::size_t P = std::size_t(6 * m - 12);
    for (std::uint32_t v = 0; v < std::min<std::uint64_t>(cubes, 2) && pass; ++v)
      for (std::size_t a = 0; a < P && pass; ++a)
        for (std::size_t b = a + 1; b < P && pass; ++b)
          pass = cluster_connected_minus_two(gpp, v, a, b);
    add(out, "cluster-3-connectivity", pass,
        "cluster subgraphs stay connected after deleting any two ports");
  }

  add(out, "doubleprime-connected", is_connected(gpp), "breadth-first search from vertex 0");

  {
    bool pass = true;
    std::string detail;
    try {
      const auto classes = prism_classes(gpp);
      std::uint64_t sum_k = 0;
      for (const PrismClass& pc : classes) {
        sum_k += std::uint64_t(pc.k);
        if (pc.edges.size() != std::size_t(pc.k)) pass = false;
      }
      pass = pass && classes.size() == std::uint64_t(m) * (cubes / 2) && sum_k == n / 2;
      detail = std::to_string(classes.size()) + " classes, k-sum " + std::to_string(sum_k);
    } catch (const std::exception& ex) {
      pass = false;
      detail = ex.what();
    }
    add(out, "prism-classes", pass, detail);
  }

  {
    bool pass = true;
    std::string detail = "both contractions reproduce the smaller stage exactly";
    try {
      const TypedGraph back_prime = contract_to_prime(gpp);
      const TypedGraph back_cube = contract_to_cube(gp);
      pass = graphs_equal(back_prime, gp) && graphs_equal(back_cube, cube) &&
             graphs_equal(contract_to_cube(back_prime), cube);
    } catch (const std::exception& ex) {
      pass = false;
      detail = ex.what();
    }
    add(out, "minor-contractions", pass, detail);
  }

  {
    bool pass = true;
    std::string detail;
    try {
      const GraphStats st = stats(gpp);
      int dir = 1;
      for (int i = 2; i <= m; ++i)
        if (st.long_per_direction[std::size_t(i - 1)] < st.long_per_direction[std::size_t(dir - 1)])
          dir = i;
      const SeparatorCertificate cert = direction_separator(gpp, dir, false, Rational(1, 3));
      pass = verify_separator(gpp, cert) &&
             cert.c_set.size() == st.long_per_direction[std::size_t(dir - 1)];
      detail = "direction " + std::to_string(dir) + ", size " +
               std::to_string(cert.c_set.size());
    } catch (const std::exception& ex) {
      pass = false;
      detail = ex.what();
    }
    add(out, "separator-witness", pass, detail);
  }

  {
    bool pass = true;
    std::string detail = "edge-list write/parse reproduces ids and kinds at every stage";
    for (const TypedGraph* g : {&cube, &gp, &ccc, &gpp}) {
      std::stringstream ss;
      write_edge_list(ss, *g);
      try {
        if (!graphs_equal(parse_edge_list(ss, g->stage, m), *g)) pass = false;
      } catch (const std::exception& ex) {
        pass = false;
        detail = ex.what();
      }
    }
    add(out, "export-roundtrip", pass, detail);
  }

  if (!with_phi) return out;
  if (m > 7) {
    add(out, "phi-budget", true, "skipped: exact load table above the default budget");
    return out;
  }

  const PhiTable phi = phi_exact(gpp);
  const std::uint64_t nsq = n * n;

  add(out, "phi-extra-zero", phi.max_by_kind[std::size_t(EdgeKind::Extra)] == 0,
      "no path uses an extra edge");

  {
    std::vector<std::uint64_t> per_dir(std::size_t(m) + 1, 0);
    for (EdgeId e = 0; e < gpp.edges.size(); ++e)
      if (gpp.edges[e].kind == EdgeKind::Long) per_dir[gpp.edges[e].direction] += phi.counts[e];
    bool pass = true;
    for (int i = 1; i <= m; ++i) pass = pass && per_dir[std::size_t(i)] == nsq / 2;
    add(out, "phi-long-direction-totals", pass, "n^2/2 long steps per direction");
  }

  if (s->is_uniform()) {
    const std::uint64_t per_class = (nsq / 2) >> (m - 1);
    bool uniform = true;
    for (const PrismClass& pc : prism_classes(gpp)) {
      std::uint64_t total = 0;
      for (EdgeId e : pc.edges) total += phi.counts[e];
      uniform = uniform && total == per_class;
    }
    add(out, "phi-class-uniformity", uniform,
        "every prism class carries " + std::to_string(per_class) + " paths");

    const std::uint64_t cap = nsq >> m;
    add(out, "phi-long-max", phi.max_by_kind[std::size_t(EdgeKind::Long)] <= cap,
        "max long load " + std::to_string(phi.max_by_kind[std::size_t(EdgeKind::Long)]) +
            " <= " + std::to_string(cap));
    const std::uint64_t sm = std::max(phi.max_by_kind[std::size_t(EdgeKind::Short)],
                                      phi.max_by_kind[std::size_t(EdgeKind::Medium)]);
    add(out, "phi-short-medium-max", sm <= 2 * cap,
        "max short/medium load " + std::to_string(sm) + " <= " + std::to_string(2 * cap));
  }

  {
    std::uint64_t sum = 0;
    for (std::uint64_t c : phi.counts) sum += c;
    add(out, "phi-total-steps", sum == phi.total_steps && phi.total_pairs == nsq,
        "edge loads sum to the total path length");
  }

  if (m <= 5) {
    const PhiTable serial = phi_exact_serial(gpp);
    add(out, "phi-serial-parallel", serial.counts == phi.counts && serial.total_steps == phi.total_steps,
        "worker partitioning does not change the table");
  }

  {
    const Rational sb = sinclair_bound(phi);
    const Rational target(1, 24 * (std::int64_t(m) - 2));
    add(out, "sinclair-vs-safe-target", !(sb < target), sb.str() + " >= " + target.str());
  }

  {
    std::mt19937_64 rng(424242);
    bool pass = true;
    for (int trial = 0; trial < 20 && pass; ++trial) {
      std::vector<std::uint8_t> in_s(n, 0);
      std::uint64_t size = 0;
      for (std::uint64_t u = 0; u < n; ++u) {
        in_s[u] = rng() & 1;
        size += in_s[u];
      }
      std::uint64_t crossing = 0;
      for (EdgeId e : edge_boundary(gpp, in_s)) crossing += phi.counts[e];
      pass = crossing >= size * (n - size);
    }
    add(out, "phi-cut-crossing", pass, "loads across 20 seeded random cuts cover the demand");
  }

  return out;
}

}  // namespace ncc
