#include "ncc/graph_builders.hpp"

#include <algorithm>
#include <stdexcept>

#include "ncc/cube_core.hpp"

namespace ncc {

namespace {

class InvariantError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_valid(const ClusterStrategy& s, int m) {
  if (s.m() != m)
    throw std::invalid_argument("strategy-dimension: strategy built for m=" +
                                std::to_string(s.m()));
  ValidationReport report = validate_strategy(s);
  if (!report.pass())
    throw std::runtime_error("strategy-invalid: " + report.issues.front().where + ": " +
                             report.issues.front().invariant +
                             (report.issues.size() > 1
                                  ? " (+" + std::to_string(report.issues.size() - 1) + " more)"
                                  : ""));
}

// Collects the higher-id neighbors of one vertex, sorts them, and appends the
// edges, keeping the global edge order lexicographic in (u,v).
struct EdgeSink {
  std::vector<Edge>& edges;
  VertexId u;
  std::vector<Edge> local;

  void add(VertexId v, EdgeKind kind, int direction = 0) {
    if (v > u) local.push_back({u, v, kind, std::uint8_t(direction)});
  }
  void flush() {
    std::sort(local.begin(), local.end(),
              [](const Edge& a, const Edge& b) { return a.v < b.v; });
    edges.insert(edges.end(), local.begin(), local.end());
    local.clear();
  }
};

}  // namespace

TypedGraph build_cg_prime(int m, std::shared_ptr<const ClusterStrategy> s) {
  if (m < kMinDim || m > kMaxDim)
    throw std::invalid_argument("dimension-range: m=" + std::to_string(m));
  require_valid(*s, m);

  TypedGraph g;
  g.stage = Stage::Prime;
  g.m = m;
  g.strategy = s;
  const std::uint32_t cube_n = std::uint32_t(1) << m;
  g.labels.reserve(std::size_t(cube_n) * std::size_t(m));
  for (std::uint32_t v = 0; v < cube_n; ++v)
    for (int i = 1; i <= m; ++i) g.labels.push_back({v, std::uint8_t(i), 0});

  auto id = [m](std::uint32_t v, int i) { return v * std::uint32_t(m) + std::uint32_t(i - 1); };
  EdgeSink sink{g.edges, 0, {}};
  for (std::uint32_t v = 0; v < cube_n; ++v) {
    const ClusterGraph& c = s->at(v);
    for (int i = 1; i <= m; ++i) {
      sink.u = id(v, i);
      sink.add(id(v ^ dir_bit(i), i), EdgeKind::Long, i);
      for (int t : c.sorted_neighbors(i)) {
        bool polygon = t == succ_dir(i, m) || t == pred_dir(i, m);
        sink.add(id(v, t), polygon ? EdgeKind::Medium : EdgeKind::Extra);
      }
      sink.flush();
    }
  }
  g.finalize();
  return g;
}

TypedGraph build_ccc(int m) {
  if (m < 3 || m > kMaxDim)
    throw std::invalid_argument("dimension-range: cube-connected cycles need m >= 3");
  TypedGraph g;
  g.stage = Stage::Ccc;
  g.m = m;
  const std::uint32_t cube_n = std::uint32_t(1) << m;
  g.labels.reserve(std::size_t(cube_n) * std::size_t(m));
  for (std::uint32_t v = 0; v < cube_n; ++v)
    for (int i = 1; i <= m; ++i) g.labels.push_back({v, std::uint8_t(i), 0});

  auto id = [m](std::uint32_t v, int i) { return v * std::uint32_t(m) + std::uint32_t(i - 1); };
  EdgeSink sink{g.edges, 0, {}};
  for (std::uint32_t v = 0; v < cube_n; ++v)
    for (int i = 1; i <= m; ++i) {
      sink.u = id(v, i);
      sink.add(id(v ^ dir_bit(i), i), EdgeKind::Long, i);
      sink.add(id(v, succ_dir(i, m)), EdgeKind::Medium);
      sink.add(id(v, pred_dir(i, m)), EdgeKind::Medium);
      sink.flush();
    }
  g.finalize();
  return g;
}

TypedGraph build_cg_doubleprime(int m, std::shared_ptr<const ClusterStrategy> s) {
  if (m < kMinDim || m > kMaxDim)
    throw std::invalid_argument("dimension-range: m=" + std::to_string(m));
  require_valid(*s, m);

  TypedGraph g;
  g.stage = Stage::DoublePrime;
  g.m = m;
  g.strategy = s;
  const std::uint32_t cube_n = std::uint32_t(1) << m;
  const std::uint32_t ports = std::uint32_t(6 * m - 12);
  const std::uint64_t n = std::uint64_t(cube_n) * ports;
  if (2 * n > UINT32_MAX)
    throw std::invalid_argument("graph-too-large: edge ids exceed 32 bits at m=" +
                                std::to_string(m));

  g.labels.reserve(n);
  for (std::uint32_t v = 0; v < cube_n; ++v) {
    const ClusterGraph& c = s->at(v);
    for (int i = 1; i <= m; ++i)
      for (int j : c.sorted_neighbors(i))
        g.labels.push_back({v, std::uint8_t(i), std::uint8_t(j)});
  }

  auto id = [&](std::uint32_t v, const ClusterGraph& c, int i, int j) {
    return v * ports + std::uint32_t(c.port_offset(i, j));
  };
  EdgeSink sink{g.edges, 0, {}};
  g.edges.reserve(2 * n);
  for (std::uint32_t v = 0; v < cube_n; ++v) {
    const ClusterGraph& c = s->at(v);
    for (int i = 1; i <= m; ++i) {
      const auto& rot = c.rotation(i);
      const int deg = int(rot.size());
      for (int j : c.sorted_neighbors(i)) {
        const int p = c.rot_pos(i, j);
        sink.u = id(v, c, i, j);
        // Short: rotation-adjacent ports of the cycle (v,i).
        sink.add(id(v, c, i, rot[std::size_t((p + 1) % deg)]), EdgeKind::Short);
        sink.add(id(v, c, i, rot[std::size_t((p + deg - 1) % deg)]), EdgeKind::Short);
        // The unique medium-or-extra edge pairs the two ports of {i,j}.
        bool polygon = j == succ_dir(i, m) || i == succ_dir(j, m);
        sink.add(id(v, c, j, i), polygon ? EdgeKind::Medium : EdgeKind::Extra);
        // Long: same direction and port across the cube edge.
        sink.add(id(v ^ dir_bit(i), s->at(v ^ dir_bit(i)), i, j), EdgeKind::Long, i);
        sink.flush();
      }
    }
  }
  g.finalize();

  for (std::uint32_t u = 0; u < n; ++u)
    if (g.degree(u) != 4)
      throw InvariantError("builder-postcondition: vertex degree != 4 after edge truncation");
  return g;
}

std::vector<PrismClass> prism_classes(const TypedGraph& gpp) {
  if (gpp.stage != Stage::DoublePrime)
    throw std::invalid_argument("stage: prism classes live on the edge-truncated graph");
  std::map<std::pair<int, std::uint32_t>, PrismClass> classes;
  for (EdgeId e = 0; e < gpp.edges.size(); ++e) {
    const Edge& edge = gpp.edges[e];
    if (edge.kind != EdgeKind::Long) continue;
    int dir = edge.direction;
    std::uint32_t base = gpp.labels[edge.u].v & ~dir_bit(dir);
    PrismClass& pc = classes[{dir, base}];
    pc.direction = dir;
    pc.base = base;
    pc.edges.push_back(e);
  }
  std::vector<PrismClass> out;
  out.reserve(classes.size());
  std::uint64_t total_k = 0;
  for (auto& [key, pc] : classes) {
    pc.k = int(pc.edges.size());
    if (pc.k < 3 || pc.k > gpp.m - 1)
      throw InvariantError("prism-gon-range: class of " + std::to_string(pc.k) +
                           " long edges at direction " + std::to_string(pc.direction));
    total_k += std::uint64_t(pc.k);
    out.push_back(std::move(pc));
  }
  if (total_k != gpp.vertex_count() / 2)
    throw InvariantError("prism-long-total: long edges must count n/2");
  return out;
}

GraphStats stats(const TypedGraph& g) {
  GraphStats st;
  st.stage = g.stage;
  st.m = g.m;
  st.vertices = g.vertex_count();
  st.edges_total = g.edge_count();
  st.long_per_direction.assign(std::size_t(g.m), 0);
  for (const Edge& e : g.edges) {
    st.by_kind[std::size_t(e.kind)]++;
    if (e.direction >= 1) st.long_per_direction[std::size_t(e.direction - 1)]++;
  }
  for (VertexId u = 0; u < g.vertex_count(); ++u) st.degree_histogram[g.degree(u)]++;
  return st;
}

}  // namespace ncc
