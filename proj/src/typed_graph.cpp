#include "ncc/typed_graph.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <stdexcept>

#include "ncc/cluster.hpp"

namespace ncc {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::Cube: return "cube";
    case Stage::Prime: return "prime";
    case Stage::Ccc: return "ccc";
    case Stage::DoublePrime: return "double-prime";
  }
  return "?";
}

const char* kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Long: return "long";
    case EdgeKind::Medium: return "medium";
    case EdgeKind::Extra: return "extra";
    case EdgeKind::Short: return "short";
  }
  return "?";
}

std::optional<Stage> stage_from_name(std::string_view name) {
  for (Stage s : {Stage::Cube, Stage::Prime, Stage::Ccc, Stage::DoublePrime})
    if (name == stage_name(s)) return s;
  return std::nullopt;
}

std::optional<EdgeKind> kind_from_name(std::string_view name) {
  for (EdgeKind k : {EdgeKind::Long, EdgeKind::Medium, EdgeKind::Extra, EdgeKind::Short})
    if (name == kind_name(k)) return k;
  return std::nullopt;
}

void TypedGraph::finalize() {
  const std::size_t n = labels.size();
  adj_off.assign(n + 1, 0);
  for (const Edge& e : edges) {
    if (e.u >= e.v || e.v >= n)
      throw std::invalid_argument("graph-edge-ids: endpoints out of range or unordered");
    adj_off[e.u + 1]++;
    adj_off[e.v + 1]++;
  }
  for (std::size_t i = 0; i < n; ++i) adj_off[i + 1] += adj_off[i];
  adj_vtx.assign(adj_off[n], 0);
  adj_edge.assign(adj_off[n], 0);
  std::vector<std::uint64_t> cursor(adj_off.begin(), adj_off.end() - 1);
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    adj_vtx[cursor[e.u]] = e.v;
    adj_edge[cursor[e.u]++] = id;
    adj_vtx[cursor[e.v]] = e.u;
    adj_edge[cursor[e.v]++] = id;
  }
}

std::optional<VertexId> TypedGraph::try_id_of(const VertexLabel& label) const {
  VertexId id = 0;
  switch (stage) {
    case Stage::Cube:
      id = label.v;
      break;
    case Stage::Prime:
    case Stage::Ccc:
      if (label.i < 1 || label.i > m) return std::nullopt;
      id = label.v * std::uint32_t(m) + (label.i - 1);
      break;
    case Stage::DoublePrime: {
      if (!strategy || label.i < 1 || label.i > m) return std::nullopt;
      if (label.v >= (std::uint32_t(1) << m)) return std::nullopt;
      const ClusterGraph& c = strategy->at(label.v);
      if (label.j < 1 || label.j > m || c.port_rank(label.i, label.j) < 0)
        return std::nullopt;
      id = label.v * std::uint32_t(c.total_ports()) + c.port_offset(label.i, label.j);
      break;
    }
  }
  if (id >= labels.size() || !(labels[id] == label)) return std::nullopt;
  return id;
}

VertexId TypedGraph::id_of(const VertexLabel& label) const {
  auto id = try_id_of(label);
  if (!id)
    throw std::invalid_argument("vertex-label: no vertex " +
                                format_vertex_label(stage, label, m) + " at stage " +
                                stage_name(stage));
  return *id;
}

std::optional<EdgeId> TypedGraph::find_edge(VertexId a, VertexId b) const {
  for (std::uint64_t k = adj_off[a]; k < adj_off[a + 1]; ++k)
    if (adj_vtx[k] == b) return adj_edge[k];
  return std::nullopt;
}

bool graphs_equal(const TypedGraph& a, const TypedGraph& b) {
  return a.stage == b.stage && a.m == b.m && a.labels == b.labels && a.edges == b.edges;
}

bool is_connected(const TypedGraph& g) {
  if (g.labels.empty()) return true;
  std::vector<std::uint8_t> seen(g.vertex_count(), 0);
  std::queue<VertexId> queue;
  queue.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop();
    for (std::uint64_t k = g.adj_off[u]; k < g.adj_off[u + 1]; ++k) {
      VertexId w = g.adj_vtx[k];
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push(w);
      }
    }
  }
  return reached == g.vertex_count();
}

static std::string bits_numeral(std::uint32_t v, int m) {
  std::string s(std::size_t(m), '0');
  for (int c = 1; c <= m; ++c)
    if (v >> (c - 1) & 1u) s[std::size_t(m - c)] = '1';
  return s;
}

std::string format_vertex_label(Stage stage, const VertexLabel& label, int m) {
  std::string out = "b" + bits_numeral(label.v, m);
  if (stage == Stage::Cube) return out;
  out += ":d" + std::to_string(label.i);
  if (stage == Stage::DoublePrime) out += ":p" + std::to_string(label.j);
  return out;
}

static int parse_small_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("vertex-label: bad integer field '" + std::string(text) + "'");
  return value;
}

VertexLabel parse_vertex_label(Stage stage, std::string_view text, int m) {
  auto fail = [&] {
    throw std::invalid_argument("vertex-label: cannot parse '" + std::string(text) +
                                "' at stage " + stage_name(stage));
  };
  std::vector<std::string_view> parts;
  while (!text.empty()) {
    auto colon = text.find(':');
    parts.push_back(text.substr(0, colon));
    text = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  }
  std::size_t expected = stage == Stage::Cube ? 1 : stage == Stage::DoublePrime ? 3 : 2;
  if (parts.size() != expected) fail();

  VertexLabel label;
  std::string_view bits = parts[0];
  if (bits.size() != std::size_t(m) + 1 || bits[0] != 'b') fail();
  for (int c = 1; c <= m; ++c) {
    char digit = bits[std::size_t(m - c) + 1];
    if (digit == '1')
      label.v |= std::uint32_t(1) << (c - 1);
    else if (digit != '0')
      fail();
  }
  if (parts.size() > 1) {
    if (parts[1].size() < 2 || parts[1][0] != 'd') fail();
    label.i = std::uint8_t(parse_small_int(parts[1].substr(1)));
  }
  if (parts.size() > 2) {
    if (parts[2].size() < 2 || parts[2][0] != 'p') fail();
    label.j = std::uint8_t(parse_small_int(parts[2].substr(1)));
  }
  return label;
}

}  // namespace ncc
