#pragma once

// Small hand-built graphs shared by the expansion tests and the acceptance
// suite: cycles and complete graphs with closed-form spectra and expansion.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ncc/typed_graph.hpp"

namespace ncc_test {

inline ncc::TypedGraph from_edges(std::uint32_t n, std::vector<ncc::Edge> edges) {
  ncc::TypedGraph g;
  g.stage = ncc::Stage::Cube;
  g.m = 4;
  for (std::uint32_t v = 0; v < n; ++v) g.labels.push_back({v, 0, 0});
  g.edges = std::move(edges);
  g.finalize();
  return g;
}

inline ncc::TypedGraph make_cycle(std::uint32_t n) {
  std::vector<ncc::Edge> edges;
  for (std::uint32_t v = 0; v + 1 < n; ++v)
    edges.push_back({v, v + 1, ncc::EdgeKind::Long, 0});
  edges.push_back({0, n - 1, ncc::EdgeKind::Long, 0});
  std::sort(edges.begin(), edges.end(), [](const ncc::Edge& a, const ncc::Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return from_edges(n, std::move(edges));
}

inline ncc::TypedGraph make_complete(std::uint32_t n) {
  std::vector<ncc::Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      edges.push_back({u, v, ncc::EdgeKind::Long, 0});
  return from_edges(n, std::move(edges));
}

}  // namespace ncc_test
