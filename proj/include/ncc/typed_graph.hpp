#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncc {

class ClusterStrategy;

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class Stage : std::uint8_t { Cube, Prime, Ccc, DoublePrime };
enum class EdgeKind : std::uint8_t { Long = 0, Medium = 1, Extra = 2, Short = 3 };

const char* stage_name(Stage s);
const char* kind_name(EdgeKind k);
std::optional<Stage> stage_from_name(std::string_view name);
std::optional<EdgeKind> kind_from_name(std::string_view name);

// (v) at the cube stage, (v,i) after vertex truncation, (v,i,j) after edge
// truncation. Unused slots stay 0, so default ordering is label-lexicographic.
struct VertexLabel {
  std::uint32_t v = 0;
  std::uint8_t i = 0;
  std::uint8_t j = 0;
  friend auto operator<=>(const VertexLabel&, const VertexLabel&) = default;
};

struct Edge {
  VertexId u = 0;  // u < v always
  VertexId v = 0;
  EdgeKind kind = EdgeKind::Long;
  std::uint8_t direction = 0;  // 1..m on long/cube edges, 0 otherwise
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable once finalized. Vertex ids are the lexicographic ranks of the
// labels; edge ids are the lexicographic ranks of the (u,v) id pairs.
struct TypedGraph {
  Stage stage = Stage::Cube;
  int m = 0;
  std::vector<VertexLabel> labels;
  std::vector<Edge> edges;
  std::shared_ptr<const ClusterStrategy> strategy;  // set when built from one

  // CSR adjacency (parallel arrays).
  std::vector<std::uint64_t> adj_off;
  std::vector<VertexId> adj_vtx;
  std::vector<EdgeId> adj_edge;

  std::size_t vertex_count() const { return labels.size(); }
  std::size_t edge_count() const { return edges.size(); }
  int degree(VertexId u) const { return int(adj_off[u + 1] - adj_off[u]); }

  VertexId id_of(const VertexLabel& label) const;  // throws std::invalid_argument
  std::optional<VertexId> try_id_of(const VertexLabel& label) const;
  const VertexLabel& label_of(VertexId id) const { return labels[id]; }
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

  // Builds the CSR arrays; edges must already be sorted by (u,v) with u < v.
  void finalize();
};

bool graphs_equal(const TypedGraph& a, const TypedGraph& b);
bool is_connected(const TypedGraph& g);

// "b0010" for cube vertices, "b0010:d2" after vertex truncation,
// "b0010:d2:p3" after edge truncation. Bit strings are plain binary numerals:
// most significant digit first, least significant bit = coordinate 1.
std::string format_vertex_label(Stage stage, const VertexLabel& label, int m);
VertexLabel parse_vertex_label(Stage stage, std::string_view text, int m);

}  // namespace ncc
