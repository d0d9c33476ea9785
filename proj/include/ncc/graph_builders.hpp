#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ncc/cluster.hpp"
#include "ncc/typed_graph.hpp"

namespace ncc {

// Vertex truncation of the m-cube: vertices (v,i), one long edge per cube
// edge, medium edges around each polygon, extra edges along the diagonals of
// the assigned cluster. The strategy must validate.
TypedGraph build_cg_prime(int m, std::shared_ptr<const ClusterStrategy> s);

// Long + medium spanning subgraph: the cube-connected cycles network.
// Accepts m >= 3; needs no cluster assignment.
TypedGraph build_ccc(int m);

// Edge truncation: vertices (v,i,j) for j a cluster neighbor of i, short
// cycles wired in rotation order, exactly one medium-or-extra edge per
// vertex, long edges matching ports across each cube edge. 4-regular with
// (6m-12)*2^m vertices.
TypedGraph build_cg_doubleprime(int m, std::shared_ptr<const ClusterStrategy> s);

// The k parallel long edges over one cube edge form a prism over a k-gon.
struct PrismClass {
  int direction = 0;
  std::uint32_t base = 0;  // lower endpoint of the cube edge (bit direction clear)
  int k = 0;
  std::vector<EdgeId> edges;
};

std::vector<PrismClass> prism_classes(const TypedGraph& gpp);

struct GraphStats {
  Stage stage;
  int m = 0;
  std::uint64_t vertices = 0;
  std::uint64_t edges_total = 0;
  std::uint64_t by_kind[4] = {0, 0, 0, 0};
  std::map<int, std::uint64_t> degree_histogram;
  std::vector<std::uint64_t> long_per_direction;  // index 0 = direction 1
};

GraphStats stats(const TypedGraph& g);

}  // namespace ncc
