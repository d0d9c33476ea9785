#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace ncc {

using DiagonalList = std::vector<std::pair<int, int>>;

// A two-sided triangulation of the m-gon on directions 1..m: all polygon
// edges plus m-3 non-crossing diagonals inside and m-3 outside, 3m-6 edges in
// total. Carries the induced rotation system: around vertex i the neighbors
// appear as succ(i), inner neighbors by increasing cyclic distance, pred(i),
// outer neighbors by decreasing cyclic distance.
class ClusterGraph {
 public:
  ClusterGraph(int m, DiagonalList inner, DiagonalList outer);

  // Inner diagonals {1,t} for t = 3..m-1, outer diagonals {m,t} for t = 2..m-2.
  static ClusterGraph double_fan(int m);

  int m() const { return m_; }
  int degree(int i) const { return int(rotation_[i].size()); }
  const std::vector<int>& rotation(int i) const { return rotation_[i]; }
  int rot_pos(int i, int j) const { return pos_[i][j]; }  // -1 when absent
  const std::vector<int>& sorted_neighbors(int i) const { return sorted_[i]; }
  int port_rank(int i, int j) const { return rank_[i][j]; }  // -1 when absent
  int port_offset(int i, int j) const { return cum_[i] + rank_[i][j]; }
  int total_ports() const { return total_ports_; }  // 6m-12 when valid
  bool adjacent(int i, int j) const { return pos_[i][j] >= 0; }
  const DiagonalList& inner() const { return inner_; }
  const DiagonalList& outer() const { return outer_; }
  int min_degree_direction() const;

  // Named violations; empty means the object is a valid two-sided
  // triangulation (counts, disjointness, non-crossing, degree range, and a
  // face trace yielding 2m-4 triangles).
  std::vector<std::string> invariant_failures() const;

  friend bool operator==(const ClusterGraph& a, const ClusterGraph& b) {
    return a.m_ == b.m_ && a.inner_ == b.inner_ && a.outer_ == b.outer_;
  }

 private:
  int m_;
  DiagonalList inner_, outer_;
  std::vector<std::vector<int>> rotation_, sorted_;
  std::vector<std::vector<int>> pos_, rank_;  // indexed [i][j], -1 = absent
  std::vector<int> cum_;
  int total_ports_ = 0;
};

// Assignment of one cluster per cube vertex.
class ClusterStrategy {
 public:
  static ClusterStrategy uniform(std::string name, ClusterGraph cluster);
  static ClusterStrategy table(std::string name, int m,
                               std::vector<std::shared_ptr<const ClusterGraph>> per_vertex);

  const ClusterGraph& at(std::uint32_t v) const {
    return uniform_ ? *uniform_ : *per_vertex_[v];
  }
  std::shared_ptr<const ClusterGraph> share(std::uint32_t v) const {
    return uniform_ ? uniform_ : per_vertex_[v];
  }
  bool is_uniform() const { return uniform_ != nullptr; }
  int m() const { return m_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  int m_ = 0;
  std::shared_ptr<const ClusterGraph> uniform_;
  std::vector<std::shared_ptr<const ClusterGraph>> per_vertex_;
};

std::shared_ptr<const ClusterStrategy> double_fan_strategy(int m);

struct ValidationIssue {
  std::string where;      // "cluster v=b0010" or "pair v=b0010 i=2"
  std::string invariant;  // named failure
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::size_t clusters_checked = 0;
  std::size_t pairs_checked = 0;
  bool pass() const { return issues.empty(); }
};

// Per-cluster invariants plus the gluing condition across every cube edge
// {v, v^e_i}: equal neighbor sets of i and rotations around i that agree as
// cyclic sequences up to rotation/reflection.
ValidationReport validate_strategy(const ClusterStrategy& s);

// Text format: "m=<int>" header, then either a single "cluster * inner=...
// outer=..." line (uniform) or one "cluster <signvector> ..." line per cube
// vertex. Diagonal lists look like "1-3,1-4".
std::shared_ptr<const ClusterStrategy> load_strategy(std::istream& in, std::string name);
void write_strategy(std::ostream& out, const ClusterStrategy& s);

}  // namespace ncc
