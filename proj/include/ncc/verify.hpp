#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncc/cluster.hpp"

namespace ncc {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Structural invariant suite for one dimension: censuses, cluster and
// strategy checks, truncation-stage properties, prism classes, minor
// contractions, separator witness, export round-trip. with_phi adds the
// exact load-table equalities (feasible for m <= 7).
std::vector<CheckResult> run_verification(int m, std::shared_ptr<const ClusterStrategy> s,
                                          bool with_phi);

}  // namespace ncc
