#include "ncc/routing.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>

#include "ncc/cluster.hpp"
#include "ncc/cube_core.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ncc {

namespace {

void require_stage(const TypedGraph& g) {
  if (g.stage != Stage::DoublePrime || !g.strategy)
    throw std::invalid_argument("stage: canonical paths live on the edge-truncated graph");
}

// Rides short edges from `port` to `target` inside the cycle (v,i): shorter
// arc first, ties broken in rotation order.
template <class Emit>
void walk_short(const ClusterGraph& c, std::uint32_t v, int i, int& port, int target,
                Emit&& emit) {
  if (port == target) return;
  const auto& rot = c.rotation(i);
  const int len = int(rot.size());
  int p = c.rot_pos(i, port);
  const int q = c.rot_pos(i, target);
  const int fwd = ((q - p) % len + len) % len;
  const int bwd = len - fwd;
  const int step = fwd <= bwd ? 1 : -1;
  for (int hops = std::min(fwd, bwd); hops > 0; --hops) {
    p = (p + step + len) % len;
    port = rot[std::size_t(p)];
    emit(VertexLabel{v, std::uint8_t(i), std::uint8_t(port)}, EdgeKind::Short);
  }
}

// Runs the canonical procedure, emitting (next vertex, edge kind) per step.
// Phase 1 sweeps every coordinate once starting at s's cycle direction;
// phase 2 keeps rotating to the target direction; phase 3 rides short edges
// to the target port.
template <class Emit>
void for_each_step(int m, const ClusterStrategy& strat, VertexLabel s, VertexLabel t,
                   Emit&& emit) {
  if (s == t) return;
  std::uint32_t u = s.v;
  const std::uint32_t w = t.v;
  int k = s.i;
  int port = s.j;

  for (int sweep = 0; sweep < m; ++sweep) {
    if ((u ^ w) & dir_bit(k)) {
      u ^= dir_bit(k);
      emit(VertexLabel{u, std::uint8_t(k), std::uint8_t(port)}, EdgeKind::Long);
    }
    const ClusterGraph& c = strat.at(u);
    const int next_dir = succ_dir(k, m);
    walk_short(c, u, k, port, next_dir, emit);
    emit(VertexLabel{u, std::uint8_t(next_dir), std::uint8_t(k)}, EdgeKind::Medium);
    port = k;
    k = next_dir;
  }

  const int extra = ((int(t.i) - k) % m + m) % m;
  for (int turn = 0; turn < extra; ++turn) {
    const ClusterGraph& c = strat.at(u);
    const int next_dir = succ_dir(k, m);
    walk_short(c, u, k, port, next_dir, emit);
    emit(VertexLabel{u, std::uint8_t(next_dir), std::uint8_t(k)}, EdgeKind::Medium);
    port = k;
    k = next_dir;
  }

  walk_short(strat.at(u), u, k, port, t.j, emit);
}

// Routes one ordered pair, adding every traversed edge into `counts`.
std::uint64_t route_into(const TypedGraph& g, VertexId sid, VertexId tid,
                         std::vector<std::uint64_t>& counts) {
  if (sid == tid) return 0;
  std::uint64_t steps = 0;
  VertexId cur = sid;
  for_each_step(g.m, *g.strategy, g.labels[sid], g.labels[tid],
                [&](VertexLabel next, EdgeKind) {
                  VertexId nid = g.id_of(next);
                  auto e = g.find_edge(cur, nid);
                  if (!e)
                    throw std::runtime_error("routing-adjacency: step leaves the graph");
                  ++counts[*e];
                  cur = nid;
                  ++steps;
                });
  if (cur != tid) throw std::runtime_error("routing-terminus: path missed its target");
  return steps;
}

void finish_table(const TypedGraph& g, PhiTable& phi) {
  phi.n = g.vertex_count();
  phi.max_by_kind = {0, 0, 0, 0};
  for (EdgeId e = 0; e < g.edges.size(); ++e) {
    auto& best = phi.max_by_kind[std::size_t(g.edges[e].kind)];
    best = std::max(best, phi.counts[e]);
  }
}

void require_exact_budget(const TypedGraph& g, bool allow_large) {
  if (g.m > 7 && !allow_large)
    throw std::invalid_argument(
        "phi-exact-budget: n^2 routing above m=7 needs an explicit override; "
        "consider the sampled estimator");
}

std::vector<std::pair<VertexId, VertexId>> draw_pairs(std::uint64_t n,
                                                      std::uint64_t sample_size,
                                                      std::uint64_t seed) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(sample_size);
  if (sample_size == n * n) {
    // Exhaustive sample: every ordered pair exactly once, so estimates
    // coincide with exact loads.
    for (VertexId s = 0; s < n; ++s)
      for (VertexId t = 0; t < n; ++t) pairs.push_back({s, t});
    return pairs;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, VertexId(n - 1));
  for (std::uint64_t i = 0; i < sample_size; ++i) {
    VertexId s = pick(rng);
    VertexId t = pick(rng);
    pairs.push_back({s, t});
  }
  return pairs;
}

}  // namespace

PathTrace canonical_path(const TypedGraph& gpp, VertexLabel s, VertexLabel t) {
  require_stage(gpp);
  gpp.id_of(s);
  gpp.id_of(t);
  PathTrace trace;
  trace.vertices.push_back(s);
  if (s == t) return trace;
  for_each_step(gpp.m, *gpp.strategy, s, t, [&](VertexLabel next, EdgeKind kind) {
    trace.vertices.push_back(next);
    trace.kinds.push_back(kind);
  });
  return trace;
}

std::uint64_t PhiTable::max_count() const {
  return *std::max_element(max_by_kind.begin(), max_by_kind.end());
}

Rational PhiTable::estimate(std::uint64_t count) const {
  if (!mode.sampled) return Rational(std::int64_t(count));
  return Rational(std::int64_t(count)) * Rational(std::int64_t(n * n)) /
         Rational(std::int64_t(mode.sample_size));
}

PhiTable phi_exact(const TypedGraph& gpp, bool allow_large) {
  require_stage(gpp);
  require_exact_budget(gpp, allow_large);
  const VertexId n = VertexId(gpp.vertex_count());
  PhiTable phi;
  phi.counts.assign(gpp.edge_count(), 0);
  phi.total_pairs = std::uint64_t(n) * n;
  phi.mode = {};

  std::uint64_t total_steps = 0;
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(gpp.edge_count(), 0);
    std::uint64_t local_steps = 0;
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t s = 0; s < std::int64_t(n); ++s)
      for (VertexId t = 0; t < n; ++t)
        local_steps += route_into(gpp, VertexId(s), t, local);
#pragma omp critical
    {
      for (EdgeId e = 0; e < local.size(); ++e) phi.counts[e] += local[e];
      total_steps += local_steps;
    }
  }
#else
  for (VertexId s = 0; s < n; ++s)
    for (VertexId t = 0; t < n; ++t) total_steps += route_into(gpp, s, t, phi.counts);
#endif
  phi.total_steps = total_steps;
  finish_table(gpp, phi);
  return phi;
}

PhiTable phi_exact_serial(const TypedGraph& gpp, bool allow_large) {
  require_stage(gpp);
  require_exact_budget(gpp, allow_large);
  const VertexId n = VertexId(gpp.vertex_count());
  PhiTable phi;
  phi.counts.assign(gpp.edge_count(), 0);
  phi.total_pairs = std::uint64_t(n) * n;
  phi.mode = {};
  for (VertexId s = 0; s < n; ++s)
    for (VertexId t = 0; t < n; ++t) phi.total_steps += route_into(gpp, s, t, phi.counts);
  finish_table(gpp, phi);
  return phi;
}

PhiTable phi_sampled(const TypedGraph& gpp, std::uint64_t sample_size, std::uint64_t seed) {
  require_stage(gpp);
  if (sample_size == 0) throw std::invalid_argument("phi-sample-size: need at least one pair");
  const VertexId n = VertexId(gpp.vertex_count());
  auto pairs = draw_pairs(n, sample_size, seed);
  PhiTable phi;
  phi.counts.assign(gpp.edge_count(), 0);
  phi.total_pairs = sample_size;
  phi.mode = {true, sample_size, seed};

  std::uint64_t total_steps = 0;
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(gpp.edge_count(), 0);
    std::uint64_t local_steps = 0;
#pragma omp for schedule(dynamic, 1024)
    for (std::int64_t idx = 0; idx < std::int64_t(pairs.size()); ++idx)
      local_steps += route_into(gpp, pairs[std::size_t(idx)].first,
                                pairs[std::size_t(idx)].second, local);
#pragma omp critical
    {
      for (EdgeId e = 0; e < local.size(); ++e) phi.counts[e] += local[e];
      total_steps += local_steps;
    }
  }
#else
  for (const auto& [s, t] : pairs) total_steps += route_into(gpp, s, t, phi.counts);
#endif
  phi.total_steps = total_steps;
  finish_table(gpp, phi);
  return phi;
}

PhiTable phi_sampled_serial(const TypedGraph& gpp, std::uint64_t sample_size,
                            std::uint64_t seed) {
  require_stage(gpp);
  if (sample_size == 0) throw std::invalid_argument("phi-sample-size: need at least one pair");
  const VertexId n = VertexId(gpp.vertex_count());
  auto pairs = draw_pairs(n, sample_size, seed);
  PhiTable phi;
  phi.counts.assign(gpp.edge_count(), 0);
  phi.total_pairs = sample_size;
  phi.mode = {true, sample_size, seed};
  for (const auto& [s, t] : pairs) phi.total_steps += route_into(gpp, s, t, phi.counts);
  finish_table(gpp, phi);
  return phi;
}

void write_phi_csv(std::ostream& out, const TypedGraph& gpp, const PhiTable& phi) {
  out << "edge_id,kind,label_u,label_v,count\n";
  for (EdgeId e = 0; e < gpp.edges.size(); ++e) {
    const Edge& edge = gpp.edges[e];
    out << e << ',' << kind_name(edge.kind) << ','
        << format_vertex_label(gpp.stage, gpp.labels[edge.u], gpp.m) << ','
        << format_vertex_label(gpp.stage, gpp.labels[edge.v], gpp.m) << ','
        << phi.counts[e] << '\n';
  }
}

}  // namespace ncc
