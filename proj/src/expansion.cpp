#include "ncc/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <stdexcept>

#include "ncc/cube_core.hpp"
#include "ncc/graph_builders.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ncc {

namespace {

constexpr std::uint64_t kBruteCap = 24;

struct BruteBest {
  std::uint64_t cut = 0;
  std::uint64_t size = 0;
  std::uint32_t mask = 0;
  bool set = false;

  // Total order: smaller cut/size ratio first, ties by subset mask, so the
  // winner never depends on enumeration or merge order.
  bool better_than(const BruteBest& o) const {
    if (!o.set) return set;
    if (!set) return false;
    const std::uint64_t lhs = cut * o.size;
    const std::uint64_t rhs = o.cut * size;
    if (lhs != rhs) return lhs < rhs;
    return mask < o.mask;
  }
};

std::vector<std::uint32_t> adjacency_masks(const TypedGraph& g) {
  const std::uint64_t n = g.vertex_count();
  if (n < 2 || n > kBruteCap)
    throw std::invalid_argument("expansion-size: brute force handles 2..24 vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges) {
    if (adj[e.u] & (1u << e.v))
      throw std::invalid_argument("expansion-multigraph: brute force needs simple graphs");
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  return adj;
}

BruteBest scan_masks(const std::vector<std::uint32_t>& adj, std::uint64_t n,
                     std::uint32_t first, std::uint32_t last) {
  BruteBest best;
  for (std::uint32_t mask = first; mask < last; ++mask) {
    const auto size = std::uint64_t(std::popcount(mask));
    if (size == 0 || 2 * size > n) continue;
    std::uint64_t cut = 0;
    std::uint32_t rest = mask;
    while (rest) {
      const int u = std::countr_zero(rest);
      rest &= rest - 1;
      cut += std::uint64_t(std::popcount(adj[std::size_t(u)] & ~mask));
    }
    BruteBest cand{cut, size, mask, true};
    if (cand.better_than(best)) best = cand;
  }
  return best;
}

ExpansionResult finish_brute(const BruteBest& best) {
  ExpansionResult r;
  r.value = Rational(std::int64_t(best.cut), std::int64_t(best.size));
  r.cut = best.cut;
  r.size = best.size;
  for (std::uint32_t rest = best.mask; rest;) {
    r.witness.push_back(VertexId(std::countr_zero(rest)));
    rest &= rest - 1;
  }
  return r;
}

int side_bit(const TypedGraph& gpp, VertexId u, int direction) {
  return (gpp.labels[u].v & dir_bit(direction)) ? 1 : 0;
}

}  // namespace

std::vector<EdgeId> edge_boundary(const TypedGraph& g, const std::vector<std::uint8_t>& in_s) {
  if (in_s.size() != g.vertex_count())
    throw std::invalid_argument("edge-boundary: indicator size must match vertex count");
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edges.size(); ++e)
    if (bool(in_s[g.edges[e].u]) != bool(in_s[g.edges[e].v])) out.push_back(e);
  return out;
}

ExpansionResult expansion_bruteforce(const TypedGraph& g) {
  const auto adj = adjacency_masks(g);
  const std::uint64_t n = g.vertex_count();
  const std::uint32_t end = std::uint32_t(1u << n);
  BruteBest best;
#ifdef _OPENMP
#pragma omp parallel
  {
    BruteBest local;
#pragma omp for schedule(static)
    for (std::int64_t chunk = 0; chunk < 256; ++chunk) {
      const std::uint64_t lo = 1 + std::uint64_t(chunk) * (end - 1) / 256;
      const std::uint64_t hi = 1 + std::uint64_t(chunk + 1) * (end - 1) / 256;
      BruteBest part = scan_masks(adj, n, std::uint32_t(lo), std::uint32_t(hi));
      if (part.better_than(local)) local = part;
    }
#pragma omp critical
    if (local.better_than(best)) best = local;
  }
#else
  best = scan_masks(adj, n, 1, end);
#endif
  return finish_brute(best);
}

ExpansionResult expansion_bruteforce_serial(const TypedGraph& g) {
  const auto adj = adjacency_masks(g);
  const std::uint64_t n = g.vertex_count();
  return finish_brute(scan_masks(adj, n, 1, std::uint32_t(1u << n)));
}

Rational sinclair_bound(const PhiTable& phi) {
  const Rational load = phi.max_estimate();
  if (load == Rational(0))
    throw std::invalid_argument("sinclair-bound: load table is identically zero");
  return Rational(std::int64_t(phi.n)) / (Rational(2) * load);
}

Rational separator_lower_bound(Rational expansion_lb, std::uint64_t n, Rational c, int d) {
  if (d <= 0) throw std::invalid_argument("separator-bound: degree must be positive");
  return c * expansion_lb * Rational(std::int64_t(n)) / Rational(d);
}

SeparatorCertificate direction_separator(const TypedGraph& gpp, int direction, bool side_plus,
                                         Rational balance) {
  if (gpp.stage != Stage::DoublePrime)
    throw std::invalid_argument("stage: direction separators live on the edge-truncated graph");
  if (direction < 1 || direction > gpp.m)
    throw std::invalid_argument("direction-range: separator direction out of range");

  const int want = side_plus ? 1 : 0;
  std::vector<std::uint8_t> in_c(gpp.vertex_count(), 0);
  for (const Edge& e : gpp.edges) {
    if (e.kind != EdgeKind::Long || e.direction != direction) continue;
    in_c[side_bit(gpp, e.u, direction) == want ? e.u : e.v] = 1;
  }

  SeparatorCertificate cert;
  cert.balance = balance;
  for (VertexId u = 0; u < gpp.vertex_count(); ++u) {
    if (in_c[u])
      cert.c_set.push_back(u);
    else if (side_bit(gpp, u, direction) == want)
      cert.a.push_back(u);
    else
      cert.b.push_back(u);
  }

  const Rational n(std::int64_t(gpp.vertex_count()));
  const Rational a(std::int64_t(cert.a.size()));
  const Rational b(std::int64_t(cert.b.size()));
  if (a < balance * n || b < a || n - balance * n < b)
    throw std::runtime_error("separator-balance: |A|=" + std::to_string(cert.a.size()) +
                             ", |B|=" + std::to_string(cert.b.size()) + " violates c=" +
                             balance.str() + " of n=" + std::to_string(gpp.vertex_count()));
  return cert;
}

bool verify_separator(const TypedGraph& g, const SeparatorCertificate& cert) {
  std::vector<std::uint8_t> part(g.vertex_count(), 0);
  auto assign = [&](const std::vector<VertexId>& set, std::uint8_t tag) {
    for (VertexId u : set) {
      if (u >= g.vertex_count() || part[u] != 0)
        throw std::invalid_argument("separator-partition: sets must partition the vertices");
      part[u] = tag;
    }
  };
  assign(cert.a, 1);
  assign(cert.b, 2);
  assign(cert.c_set, 3);
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    if (part[u] == 0)
      throw std::invalid_argument("separator-partition: sets must partition the vertices");

  for (const Edge& e : g.edges) {
    const int pu = part[e.u], pv = part[e.v];
    if ((pu == 1 && pv == 2) || (pu == 2 && pv == 1)) return false;
  }

  const Rational n(std::int64_t(g.vertex_count()));
  const Rational a(std::int64_t(cert.a.size()));
  const Rational b(std::int64_t(cert.b.size()));
  return !(a < cert.balance * n) && !(b < a) && !(n - cert.balance * n < b);
}

CheegerResult cheeger_lower(const TypedGraph& g, const CheegerOptions& opts) {
  const std::uint64_t n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("cheeger-size: need at least two vertices");
  if (!is_connected(g))
    throw std::invalid_argument("cheeger-connected: spectral bound needs a connected graph");

  int d_max = 0;
  for (VertexId u = 0; u < n; ++u) d_max = std::max(d_max, g.degree(u));
  const double shift = 2.0 * double(d_max);

  // Start vector: seeded, then projected off the constant vector. All dot
  // products and means are accumulated serially so results do not depend on
  // worker count; only the row-local matvec is parallel.
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> x(n), y(n);
  for (double& v : x) v = unit(rng);

  auto deflate = [&](std::vector<double>& v) {
    double mean = 0;
    for (double c : v) mean += c;
    mean /= double(n);
    for (double& c : v) c -= mean;
  };
  auto norm = [&](const std::vector<double>& v) {
    double s = 0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
  };
  auto scale = [&](std::vector<double>& v, double f) {
    for (double& c : v) c *= f;
  };

  deflate(x);
  const double nx = norm(x);
  if (nx == 0) throw std::runtime_error("cheeger-start: degenerate start vector");
  scale(x, 1.0 / nx);

  // One step of y = (2*d_max*I - L) x, rows independent.
  auto matvec = [&]() {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (opts.parallel)
#endif
    for (std::int64_t u = 0; u < std::int64_t(n); ++u) {
      const auto lo = g.adj_off[std::size_t(u)];
      const auto hi = g.adj_off[std::size_t(u) + 1];
      double acc = (shift - double(hi - lo)) * x[std::size_t(u)];
      for (auto it = lo; it < hi; ++it) acc += x[g.adj_vtx[std::size_t(it)]];
      y[std::size_t(u)] = acc;
    }
  };

  double rayleigh = 0;
  bool have_rayleigh = false;
  std::uint64_t it = 0;
  for (; it < opts.max_iterations; ++it) {
    matvec();
    double mu = 0;
    for (std::uint64_t u = 0; u < n; ++u) mu += x[u] * y[u];
    if (have_rayleigh && std::abs(mu - rayleigh) <= opts.tol * std::max(1.0, std::abs(mu))) {
      rayleigh = mu;
      ++it;
      break;
    }
    rayleigh = mu;
    have_rayleigh = true;
    deflate(y);
    const double ny = norm(y);
    if (ny == 0) throw std::runtime_error("cheeger-degenerate: iteration vector vanished");
    scale(y, 1.0 / ny);
    x.swap(y);
  }
  if (it >= opts.max_iterations)
    throw std::runtime_error("cheeger-convergence: power iteration hit the iteration cap");

  CheegerResult r;
  r.lambda2 = shift - rayleigh;
  r.bound = r.lambda2 / 2.0;
  r.iterations = it;
  r.seed = opts.seed;
  r.tol = opts.tol;
  return r;
}

TypedGraph contract_to_prime(const TypedGraph& gpp) {
  if (gpp.stage != Stage::DoublePrime || !gpp.strategy)
    throw std::invalid_argument("stage: this contraction starts from the edge-truncated graph");
  const int m = gpp.m;
  TypedGraph g;
  g.stage = Stage::Prime;
  g.m = m;
  g.strategy = gpp.strategy;
  const std::uint64_t cubes = std::uint64_t(1) << m;
  g.labels.reserve(cubes * std::uint64_t(m));
  for (std::uint32_t v = 0; v < cubes; ++v)
    for (int i = 1; i <= m; ++i) g.labels.push_back({v, std::uint8_t(i), 0});

  auto image = [&](VertexId u) {
    const VertexLabel& l = gpp.labels[u];
    return VertexId(std::uint64_t(l.v) * std::uint64_t(m) + std::uint64_t(l.i - 1));
  };

  std::vector<Edge> edges;
  edges.reserve(gpp.edges.size());
  for (const Edge& e : gpp.edges) {
    VertexId a = image(e.u), b = image(e.v);
    if (a == b) continue;  // short edges become loops
    if (b < a) std::swap(a, b);
    edges.push_back({a, b, e.kind, e.direction});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) {
    return std::tie(l.u, l.v, l.kind, l.direction) < std::tie(r.u, r.v, r.kind, r.direction);
  });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.finalize();
  return g;
}

TypedGraph contract_to_cube(const TypedGraph& gp) {
  if (gp.stage != Stage::Prime)
    throw std::invalid_argument("stage: this contraction starts from the vertex-truncated graph");
  const int m = gp.m;
  TypedGraph g;
  g.stage = Stage::Cube;
  g.m = m;
  const std::uint64_t cubes = std::uint64_t(1) << m;
  g.labels.reserve(cubes);
  for (std::uint32_t v = 0; v < cubes; ++v) g.labels.push_back({v, 0, 0});

  std::vector<Edge> edges;
  for (const Edge& e : gp.edges) {
    VertexId a = gp.labels[e.u].v, b = gp.labels[e.v].v;
    if (a == b) continue;  // medium and extra edges become loops
    if (b < a) std::swap(a, b);
    edges.push_back({a, b, e.kind, e.direction});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) {
    return std::tie(l.u, l.v, l.kind, l.direction) < std::tie(r.u, r.v, r.kind, r.direction);
  });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.finalize();
  return g;
}

ExpansionReport full_report(int m, std::shared_ptr<const ClusterStrategy> s,
                            const ReportOptions& opts) {
  TypedGraph gpp = build_cg_doubleprime(m, s);
  PhiTable phi = opts.sampled ? phi_sampled(gpp, opts.sample_size, opts.seed)
                              : phi_exact(gpp, opts.allow_large_exact);

  ExpansionReport r;
  r.m = m;
  r.n = gpp.vertex_count();
  r.strategy_name = s->name();
  r.mode = phi.mode;
  for (int k = 0; k < 4; ++k) r.phi_max[k] = phi.max_estimate_by_kind(EdgeKind(k));
  r.phi_max_overall = phi.max_estimate();
  r.sinclair_lower = sinclair_bound(phi);
  r.nominal_target = Rational(1, 12 * (std::int64_t(m) - 2));
  r.safe_target = Rational(1, 24 * (std::int64_t(m) - 2));
  r.cheeger = cheeger_lower(gpp, opts.cheeger);

  // Cut the direction with the fewest long edges (ties to the smallest
  // index), so the witness is as small as the strategy allows.
  GraphStats st = stats(gpp);
  int best_dir = 1;
  for (int i = 2; i <= m; ++i)
    if (st.long_per_direction[std::size_t(i - 1)] < st.long_per_direction[std::size_t(best_dir - 1)])
      best_dir = i;
  SeparatorCertificate cert =
      direction_separator(gpp, best_dir, opts.side_plus, opts.balance);
  r.separator_direction = best_dir;
  r.separator_side_plus = opts.side_plus;
  r.separator_size = cert.c_set.size();
  r.balance_a = cert.a.size();
  r.balance_b = cert.b.size();
  r.balance_c = opts.balance;
  r.separator_lower = separator_lower_bound(r.sinclair_lower, r.n, opts.balance, 4);
  return r;
}

}  // namespace ncc
