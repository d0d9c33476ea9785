#include "ncc/cluster.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ncc/cube_core.hpp"

namespace ncc {

namespace {

int forward_dist(int from, int to, int m) { return ((to - from) % m + m) % m; }

std::pair<int, int> normalize(std::pair<int, int> d) {
  if (d.first > d.second) std::swap(d.first, d.second);
  return d;
}

}  // namespace

ClusterGraph::ClusterGraph(int m, DiagonalList inner, DiagonalList outer)
    : m_(m), inner_(std::move(inner)), outer_(std::move(outer)) {
  if (m_ < kMinDim || m_ > kMaxDim)
    throw std::invalid_argument("dimension-range: cluster size " + std::to_string(m_));
  for (auto& d : inner_) d = normalize(d);
  for (auto& d : outer_) d = normalize(d);
  std::sort(inner_.begin(), inner_.end());
  std::sort(outer_.begin(), outer_.end());
  for (const auto& [a, b] : inner_)
    if (a < 1 || b > m_ || a == b)
      throw std::invalid_argument("diagonal-endpoints: bad pair " + std::to_string(a) +
                                  "-" + std::to_string(b));
  for (const auto& [a, b] : outer_)
    if (a < 1 || b > m_ || a == b)
      throw std::invalid_argument("diagonal-endpoints: bad pair " + std::to_string(a) +
                                  "-" + std::to_string(b));

  // Rotation around i: succ(i), inner neighbors by increasing forward
  // distance, pred(i), outer neighbors by decreasing forward distance.
  // Diagonals duplicating polygon edges are skipped so the rotation stays a
  // simple cyclic list; the invariant check still reports them.
  rotation_.assign(std::size_t(m_) + 1, {});
  sorted_.assign(std::size_t(m_) + 1, {});
  pos_.assign(std::size_t(m_) + 1, std::vector<int>(std::size_t(m_) + 1, -1));
  rank_.assign(std::size_t(m_) + 1, std::vector<int>(std::size_t(m_) + 1, -1));
  cum_.assign(std::size_t(m_) + 2, 0);
  for (int i = 1; i <= m_; ++i) {
    auto side_neighbors = [&](const DiagonalList& side) {
      std::vector<int> out;
      for (const auto& [a, b] : side) {
        int t = a == i ? b : b == i ? a : 0;
        if (t == 0 || t == succ_dir(i, m_) || t == pred_dir(i, m_)) continue;
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
      }
      return out;
    };
    std::vector<int> in_n = side_neighbors(inner_);
    std::vector<int> out_n = side_neighbors(outer_);
    auto by_dist = [&](int a, int b) {
      return forward_dist(i, a, m_) < forward_dist(i, b, m_);
    };
    std::sort(in_n.begin(), in_n.end(), by_dist);
    std::sort(out_n.begin(), out_n.end(), by_dist);
    std::reverse(out_n.begin(), out_n.end());

    auto& rot = rotation_[std::size_t(i)];
    rot.push_back(succ_dir(i, m_));
    rot.insert(rot.end(), in_n.begin(), in_n.end());
    rot.push_back(pred_dir(i, m_));
    rot.insert(rot.end(), out_n.begin(), out_n.end());

    for (int p = 0; p < int(rot.size()); ++p) pos_[std::size_t(i)][std::size_t(rot[p])] = p;
    sorted_[std::size_t(i)] = rot;
    std::sort(sorted_[std::size_t(i)].begin(), sorted_[std::size_t(i)].end());
    for (int r = 0; r < int(sorted_[std::size_t(i)].size()); ++r)
      rank_[std::size_t(i)][std::size_t(sorted_[std::size_t(i)][std::size_t(r)])] = r;
  }
  // cum_[i] = total ports of directions below i.
  for (int i = 1; i <= m_; ++i) cum_[std::size_t(i) + 1] = cum_[std::size_t(i)] + degree(i);
  total_ports_ = cum_[std::size_t(m_) + 1];
}

ClusterGraph ClusterGraph::double_fan(int m) {
  DiagonalList inner, outer;
  for (int t = 3; t <= m - 1; ++t) inner.push_back({1, t});
  for (int t = 2; t <= m - 2; ++t) outer.push_back({t, m});
  return ClusterGraph(m, std::move(inner), std::move(outer));
}

int ClusterGraph::min_degree_direction() const {
  int best = 1;
  for (int i = 2; i <= m_; ++i)
    if (degree(i) < degree(best)) best = i;
  return best;
}

std::vector<std::string> ClusterGraph::invariant_failures() const {
  std::vector<std::string> failures;
  auto chord_ok = [&](std::pair<int, int> d) {
    int span = d.second - d.first;
    return span >= 2 && span <= m_ - 2;
  };
  for (const auto& d : inner_)
    if (!chord_ok(d))
      failures.push_back("diagonal-span: " + std::to_string(d.first) + "-" +
                         std::to_string(d.second) + " is not a chord");
  for (const auto& d : outer_)
    if (!chord_ok(d))
      failures.push_back("diagonal-span: " + std::to_string(d.first) + "-" +
                         std::to_string(d.second) + " is not a chord");

  std::set<std::pair<int, int>> seen;
  for (const auto& d : inner_)
    if (!seen.insert(d).second)
      failures.push_back("diagonal-duplicate: " + std::to_string(d.first) + "-" +
                         std::to_string(d.second));
  for (const auto& d : outer_)
    if (!seen.insert(d).second)
      failures.push_back("diagonal-duplicate: " + std::to_string(d.first) + "-" +
                         std::to_string(d.second));

  if (int(inner_.size()) != m_ - 3 || int(outer_.size()) != m_ - 3)
    failures.push_back("diagonal-count: expected " + std::to_string(m_ - 3) +
                       " per side, got " + std::to_string(inner_.size()) + "/" +
                       std::to_string(outer_.size()));
  if (int(seen.size()) + m_ != 3 * m_ - 6)
    failures.push_back("edge-count: expected " + std::to_string(3 * m_ - 6));

  auto crossing = [&](const DiagonalList& side, const char* tag) {
    for (std::size_t x = 0; x < side.size(); ++x)
      for (std::size_t y = x + 1; y < side.size(); ++y) {
        auto [a, b] = side[x];
        auto [c, d] = side[y];
        if (a == c || a == d || b == c || b == d) continue;
        bool c_in = a < c && c < b;
        bool d_in = a < d && d < b;
        if (c_in != d_in)
          failures.push_back(std::string(tag) + ": " + std::to_string(a) + "-" +
                             std::to_string(b) + " crosses " + std::to_string(c) + "-" +
                             std::to_string(d));
      }
  };
  crossing(inner_, "non-crossing-inner");
  crossing(outer_, "non-crossing-outer");

  for (int i = 1; i <= m_; ++i)
    if (degree(i) < 3 || degree(i) > m_ - 1)
      failures.push_back("degree-range: vertex " + std::to_string(i) + " has degree " +
                         std::to_string(degree(i)));

  if (!failures.empty()) return failures;

  // Face trace over the rotation system; a sphere triangulation yields
  // exactly 2m-4 triangular faces.
  std::set<std::pair<int, int>> visited;
  int faces = 0;
  bool all_triangles = true;
  for (int u = 1; u <= m_; ++u)
    for (int v : rotation_[std::size_t(u)]) {
      if (visited.count({u, v})) continue;
      int a = u, b = v, steps = 0;
      do {
        visited.insert({a, b});
        int p = pos_[std::size_t(b)][std::size_t(a)];
        int next = rotation_[std::size_t(b)][(std::size_t(p) + 1) % rotation_[std::size_t(b)].size()];
        a = b;
        b = next;
        ++steps;
      } while (!(a == u && b == v) && steps <= 3 * m_);
      ++faces;
      if (steps != 3) all_triangles = false;
    }
  if (!all_triangles || faces != 2 * m_ - 4)
    failures.push_back("face-trace: expected " + std::to_string(2 * m_ - 4) +
                       " triangles, traced " + std::to_string(faces) + " faces" +
                       (all_triangles ? "" : " (non-triangular face present)"));
  return failures;
}

ClusterStrategy ClusterStrategy::uniform(std::string name, ClusterGraph cluster) {
  ClusterStrategy s;
  s.name_ = std::move(name);
  s.m_ = cluster.m();
  s.uniform_ = std::make_shared<const ClusterGraph>(std::move(cluster));
  return s;
}

ClusterStrategy ClusterStrategy::table(std::string name, int m,
                                       std::vector<std::shared_ptr<const ClusterGraph>> per_vertex) {
  if (per_vertex.size() != (std::size_t(1) << m))
    throw std::invalid_argument("strategy-table: needs one cluster per cube vertex");
  for (const auto& c : per_vertex)
    if (!c || c->m() != m)
      throw std::invalid_argument("strategy-table: cluster size mismatch");
  ClusterStrategy s;
  s.name_ = std::move(name);
  s.m_ = m;
  s.per_vertex_ = std::move(per_vertex);
  return s;
}

std::shared_ptr<const ClusterStrategy> double_fan_strategy(int m) {
  return std::make_shared<const ClusterStrategy>(
      ClusterStrategy::uniform("double-fan", ClusterGraph::double_fan(m)));
}

namespace {

bool cyclic_equal_up_to_symmetry(const std::vector<int>& a, std::vector<int> b) {
  if (a.size() != b.size()) return false;
  const std::size_t k = a.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t off = 0; off < k; ++off) {
      bool match = true;
      for (std::size_t idx = 0; idx < k && match; ++idx)
        match = a[(off + idx) % k] == b[idx];
      if (match) return true;
    }
    std::reverse(b.begin(), b.end());
  }
  return false;
}

}  // namespace

ValidationReport validate_strategy(const ClusterStrategy& s) {
  ValidationReport report;
  const int m = s.m();
  const std::uint32_t n = std::uint32_t(1) << m;

  std::set<const ClusterGraph*> distinct;
  for (std::uint32_t v = 0; v < n; ++v) {
    const ClusterGraph* c = &s.at(v);
    if (!distinct.insert(c).second) continue;
    for (const std::string& failure : c->invariant_failures())
      report.issues.push_back({"cluster v=" + format_vertex_label(Stage::Cube, {v, 0, 0}, m),
                               failure});
    if (s.is_uniform()) break;
  }
  report.clusters_checked = distinct.size();

  if (s.is_uniform()) return report;  // gluing across cube edges is trivial

  for (std::uint32_t v = 0; v < n; ++v)
    for (int i = 1; i <= m; ++i) {
      if (v & dir_bit(i)) continue;  // each cube edge once
      const ClusterGraph& a = s.at(v);
      const ClusterGraph& b = s.at(v | dir_bit(i));
      ++report.pairs_checked;
      if (&a == &b) continue;
      std::string where = "pair v=" + format_vertex_label(Stage::Cube, {v, 0, 0}, m) +
                          " i=" + std::to_string(i);
      if (a.sorted_neighbors(i) != b.sorted_neighbors(i)) {
        report.issues.push_back({where, "link-condition: neighbor sets of " +
                                            std::to_string(i) + " differ"});
        continue;
      }
      if (!cyclic_equal_up_to_symmetry(a.rotation(i), b.rotation(i)))
        report.issues.push_back({where, "link-rotation: cyclic orders around " +
                                            std::to_string(i) + " differ"});
    }
  return report;
}

namespace {

DiagonalList parse_diagonal_list(const std::string& text, const char* tag) {
  DiagonalList out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma - start);
    std::size_t dash = item.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= item.size())
      throw std::invalid_argument(std::string("strategy-file: bad ") + tag +
                                  " diagonal '" + item + "'");
    try {
      out.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
    } catch (const std::logic_error&) {
      throw std::invalid_argument(std::string("strategy-file: bad ") + tag +
                                  " diagonal '" + item + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string render_diagonals(const DiagonalList& side) {
  std::string out;
  for (std::size_t idx = 0; idx < side.size(); ++idx) {
    if (idx) out += ',';
    out += std::to_string(side[idx].first) + "-" + std::to_string(side[idx].second);
  }
  return out;
}

}  // namespace

std::shared_ptr<const ClusterStrategy> load_strategy(std::istream& in, std::string name) {
  std::string line;
  int m = 0;
  bool have_m = false;
  std::shared_ptr<const ClusterGraph> uniform;
  std::vector<std::shared_ptr<const ClusterGraph>> table;
  std::vector<std::uint8_t> filled;
  std::size_t cluster_lines = 0;

  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head) || head[0] == '#') continue;
    if (!have_m) {
      if (head.rfind("m=", 0) != 0)
        throw std::invalid_argument("strategy-file: first line must be m=<int>");
      m = std::stoi(head.substr(2));
      if (m < kMinDim || m > kMaxDim)
        throw std::invalid_argument("dimension-range: strategy file m=" + std::to_string(m));
      have_m = true;
      table.resize(std::size_t(1) << m);
      filled.assign(std::size_t(1) << m, 0);
      continue;
    }
    if (head != "cluster")
      throw std::invalid_argument("strategy-file: expected 'cluster' line, got '" + head + "'");
    std::string vertex, inner_field, outer_field;
    if (!(fields >> vertex >> inner_field >> outer_field) ||
        inner_field.rfind("inner=", 0) != 0 || outer_field.rfind("outer=", 0) != 0)
      throw std::invalid_argument("strategy-file: cluster line needs <vertex> inner=... outer=...");
    auto cluster = std::make_shared<const ClusterGraph>(
        m, parse_diagonal_list(inner_field.substr(6), "inner"),
        parse_diagonal_list(outer_field.substr(6), "outer"));
    ++cluster_lines;
    if (vertex == "*") {
      if (uniform || cluster_lines > 1)
        throw std::invalid_argument("strategy-file: 'cluster *' must be the only cluster line");
      uniform = cluster;
    } else {
      SignVector v = parse_sign_vector(vertex, m);
      if (filled[v.bits])
        throw std::invalid_argument("strategy-file: duplicate vertex " + vertex);
      filled[v.bits] = 1;
      table[v.bits] = cluster;
    }
  }
  if (!have_m) throw std::invalid_argument("strategy-file: empty file");
  if (uniform)
    return std::make_shared<const ClusterStrategy>(
        ClusterStrategy::uniform(std::move(name), ClusterGraph(*uniform)));
  for (std::size_t v = 0; v < filled.size(); ++v)
    if (!filled[v])
      throw std::invalid_argument("strategy-file: missing cluster for vertex " +
                                  format_vertex_label(Stage::Cube, {std::uint32_t(v), 0, 0}, m));
  return std::make_shared<const ClusterStrategy>(
      ClusterStrategy::table(std::move(name), m, std::move(table)));
}

void write_strategy(std::ostream& out, const ClusterStrategy& s) {
  out << "m=" << s.m() << "\n";
  if (s.is_uniform()) {
    const ClusterGraph& c = s.at(0);
    out << "cluster * inner=" << render_diagonals(c.inner())
        << " outer=" << render_diagonals(c.outer()) << "\n";
    return;
  }
  const std::uint32_t n = std::uint32_t(1) << s.m();
  for (std::uint32_t v = 0; v < n; ++v) {
    const ClusterGraph& c = s.at(v);
    out << "cluster " << format_vertex_label(Stage::Cube, {v, 0, 0}, s.m())
        << " inner=" << render_diagonals(c.inner())
        << " outer=" << render_diagonals(c.outer()) << "\n";
  }
}

}  // namespace ncc
