#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncc/cluster.hpp"
#include "ncc/rational.hpp"
#include "ncc/routing.hpp"
#include "ncc/typed_graph.hpp"

namespace ncc {

// Edge ids crossing the cut; in_s holds one byte per vertex.
std::vector<EdgeId> edge_boundary(const TypedGraph& g, const std::vector<std::uint8_t>& in_s);

struct ExpansionResult {
  Rational value;
  std::uint64_t cut = 0;
  std::uint64_t size = 0;
  std::vector<VertexId> witness;
};

// Exact edge expansion min |boundary(S)| / |S| over nonempty S with
// 2|S| <= |V|. Capped at 24 vertices. Parallel over subset ranges; the
// minimum is taken in a total order (value, then subset mask), so the result
// is independent of worker count.
ExpansionResult expansion_bruteforce(const TypedGraph& g);
ExpansionResult expansion_bruteforce_serial(const TypedGraph& g);

// n / (2 * phi_max) as an exact rational. Sampled tables give estimates; the
// caller is responsible for flagging them as such.
Rational sinclair_bound(const PhiTable& phi);

// Every balanced separator of a d-regular graph with expansion >= X has at
// least (c/d) * X * n vertices.
Rational separator_lower_bound(Rational expansion_lb, std::uint64_t n, Rational c, int d = 4);

struct SeparatorCertificate {
  std::vector<VertexId> a, b, c_set;  // C separates A from B
  Rational balance;                   // required c: c*n <= |A| <= |B| <= (1-c)*n
};

// C = the chosen-side endpoints of every direction-i long edge; A = the rest
// of that cube half; B = the other half. side_plus selects the half with
// coordinate i set.
SeparatorCertificate direction_separator(const TypedGraph& gpp, int direction,
                                         bool side_plus, Rational balance = Rational(1, 3));

// True iff A,B,C partition the vertices, no edge joins A to B, and the
// balance constraint holds. Throws when the sets are not a partition.
bool verify_separator(const TypedGraph& g, const SeparatorCertificate& cert);

struct CheegerOptions {
  double tol = 1e-9;
  std::uint64_t max_iterations = 1'000'000;
  std::uint64_t seed = 20240917;
  bool parallel = true;  // row-parallel matvec; bit-identical to serial
};

struct CheegerResult {
  double lambda2 = 0;  // second-smallest Laplacian eigenvalue
  double bound = 0;    // lambda2 / 2
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  double tol = 0;
};

// Spectral expansion lower bound lambda2/2 via power iteration on the
// shifted operator 2*d_max*I - L, deflated against the constant vector.
// Requires a connected graph.
CheegerResult cheeger_lower(const TypedGraph& g, const CheegerOptions& opts = {});

// Contract every short cycle to one vertex (v,i,j) -> (v,i), identifying the
// long edges that become parallel. Equals the vertex-truncated graph exactly.
TypedGraph contract_to_prime(const TypedGraph& gpp);

// Contract every cluster to its cube vertex (v,i) -> v. Equals the hypercube.
TypedGraph contract_to_cube(const TypedGraph& gp);

struct ReportOptions {
  bool sampled = false;
  std::uint64_t sample_size = 100000;
  std::uint64_t seed = 1;
  Rational balance = Rational(1, 3);
  CheegerOptions cheeger;
  bool allow_large_exact = false;
  bool side_plus = false;
};

struct ExpansionReport {
  int m = 0;
  std::uint64_t n = 0;
  std::string strategy_name;
  PhiMode mode;
  Rational phi_max[4];  // per kind, estimates under sampling
  Rational phi_max_overall;
  Rational sinclair_lower;
  Rational nominal_target;  // 1 / (12(m-2))
  Rational safe_target;   // 1 / (24(m-2))
  CheegerResult cheeger;
  int separator_direction = 0;
  bool separator_side_plus = false;
  std::uint64_t separator_size = 0;
  std::uint64_t balance_a = 0, balance_b = 0;
  Rational balance_c;
  Rational separator_lower;
};

ExpansionReport full_report(int m, std::shared_ptr<const ClusterStrategy> s,
                            const ReportOptions& opts = {});

}  // namespace ncc
