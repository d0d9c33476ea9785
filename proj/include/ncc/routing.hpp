#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ncc/rational.hpp"
#include "ncc/typed_graph.hpp"

namespace ncc {

struct PathTrace {
  std::vector<VertexLabel> vertices;  // starts at s; size = kinds.size() + 1
  std::vector<EdgeKind> kinds;
  std::size_t length() const { return kinds.size(); }
};

// Canonical s-t path on the edge-truncated graph. Phase 1 sweeps all m
// coordinates starting at s's cycle direction, taking the long edge exactly
// where source and target clusters differ, then rides short edges to the next
// polygon port and crosses the medium edge. Phase 2 keeps rotating to the
// target cycle, phase 3 rides short edges to the target port. Short walks
// take the shorter arc, ties resolved in rotation order. s = t gives the
// empty path.
PathTrace canonical_path(const TypedGraph& gpp, VertexLabel s, VertexLabel t);

struct PhiMode {
  bool sampled = false;
  std::uint64_t sample_size = 0;  // sampled runs only
  std::uint64_t seed = 0;         // sampled runs only
};

// Per-edge load table for canonical paths over ordered vertex pairs.
struct PhiTable {
  std::vector<std::uint64_t> counts;  // indexed by edge id
  std::uint64_t n = 0;                // vertex count of the routed graph
  std::uint64_t total_pairs = 0;
  std::uint64_t total_steps = 0;      // sum of path lengths
  PhiMode mode;
  std::array<std::uint64_t, 4> max_by_kind{};  // raw counts, EdgeKind order

  std::uint64_t max_count() const;
  // Load estimate for one raw count: the count itself for exact runs,
  // count * n^2 / N for sampled runs.
  Rational estimate(std::uint64_t count) const;
  Rational max_estimate_by_kind(EdgeKind k) const { return estimate(max_by_kind[std::size_t(k)]); }
  Rational max_estimate() const { return estimate(max_count()); }
};

// All n^2 ordered pairs. Parallel over sources with per-worker tables merged
// by addition, so the result is independent of worker count. Refuses m > 7
// unless allow_large is set.
PhiTable phi_exact(const TypedGraph& gpp, bool allow_large = false);

// Reference implementation: one plain loop, no worker partitioning.
PhiTable phi_exact_serial(const TypedGraph& gpp, bool allow_large = false);

// N ordered pairs from a seeded generator (drawn up front, so the table does
// not depend on worker count). N = n^2 routes every pair exactly once, which
// makes the estimator coincide with the exact table.
PhiTable phi_sampled(const TypedGraph& gpp, std::uint64_t sample_size, std::uint64_t seed);
PhiTable phi_sampled_serial(const TypedGraph& gpp, std::uint64_t sample_size, std::uint64_t seed);

// "edge_id,kind,label_u,label_v,count" rows in edge-id order.
void write_phi_csv(std::ostream& out, const TypedGraph& gpp, const PhiTable& phi);

}  // namespace ncc
