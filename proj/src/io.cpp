#include "ncc/io.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ncc/cube_core.hpp"

namespace ncc {

namespace {

std::string label_str(const TypedGraph& g, VertexId u) {
  return format_vertex_label(g.stage, g.labels[u], g.m);
}

// Long edges carry the coordinate their endpoints differ in; everything else
// carries direction 0.
std::uint8_t infer_direction(EdgeKind kind, const VertexLabel& a, const VertexLabel& b) {
  if (kind != EdgeKind::Long) return 0;
  const std::uint32_t diff = a.v ^ b.v;
  if (diff == 0 || (diff & (diff - 1)) != 0)
    throw std::invalid_argument(
        "edge-list-parse: long edge endpoints must differ in exactly one coordinate");
  return std::uint8_t(std::countr_zero(diff) + 1);
}

Json rational_str(const Rational& r) { return r.str(); }

}  // namespace

void write_edge_list(std::ostream& out, const TypedGraph& g) {
  for (const Edge& e : g.edges)
    out << kind_name(e.kind) << ' ' << label_str(g, e.u) << ' ' << label_str(g, e.v) << '\n';
}

TypedGraph parse_edge_list(std::istream& in, Stage stage, int m) {
  struct Row {
    EdgeKind kind;
    VertexLabel a, b;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string kind_text, a_text, b_text, extra;
    if (!(fields >> kind_text >> a_text >> b_text) || (fields >> extra))
      throw std::invalid_argument("edge-list-parse: line " + std::to_string(line_no) +
                                  " is not '<kind> <label_u> <label_v>'");
    auto kind = kind_from_name(kind_text);
    if (!kind)
      throw std::invalid_argument("edge-list-parse: unknown edge kind '" + kind_text + "'");
    rows.push_back({*kind, parse_vertex_label(stage, a_text, m),
                    parse_vertex_label(stage, b_text, m)});
  }

  TypedGraph g;
  g.stage = stage;
  g.m = m;
  for (const Row& r : rows) {
    g.labels.push_back(r.a);
    g.labels.push_back(r.b);
  }
  std::sort(g.labels.begin(), g.labels.end());
  g.labels.erase(std::unique(g.labels.begin(), g.labels.end()), g.labels.end());

  auto id_of = [&](const VertexLabel& l) {
    auto it = std::lower_bound(g.labels.begin(), g.labels.end(), l);
    return VertexId(it - g.labels.begin());
  };
  g.edges.reserve(rows.size());
  for (const Row& r : rows) {
    VertexId u = id_of(r.a), v = id_of(r.b);
    if (u == v) throw std::invalid_argument("edge-list-parse: loop edge");
    if (v < u) std::swap(u, v);
    g.edges.push_back({u, v, r.kind, infer_direction(r.kind, r.a, r.b)});
  }
  g.finalize();
  return g;
}

void write_dot(std::ostream& out, const TypedGraph& g) {
  out << "graph \"" << stage_name(g.stage) << "_m" << g.m << "\" {\n";
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    out << "  " << u << " [label=\"" << label_str(g, u) << "\"];\n";
  for (const Edge& e : g.edges) {
    out << "  " << e.u << " -- " << e.v << " [kind=" << kind_name(e.kind);
    if (e.kind == EdgeKind::Long) out << " direction=" << int(e.direction);
    out << "];\n";
  }
  out << "}\n";
}

Json stats_json(const TypedGraph& g) {
  const GraphStats st = stats(g);
  Json j;
  j["stage"] = stage_name(st.stage);
  j["m"] = st.m;
  j["n"] = st.vertices;
  j["edges"] = st.edges_total;
  Json kinds;
  for (EdgeKind k : {EdgeKind::Long, EdgeKind::Medium, EdgeKind::Extra, EdgeKind::Short})
    kinds[kind_name(k)] = st.by_kind[std::size_t(k)];
  j["edge_kinds"] = kinds;
  Json hist;
  for (const auto& [deg, count] : st.degree_histogram) hist[std::to_string(deg)] = count;
  j["degree_histogram"] = hist;
  Json per_dir;
  for (int i = 1; i <= st.m; ++i)
    per_dir[std::to_string(i)] = st.long_per_direction[std::size_t(i - 1)];
  j["long_per_direction"] = per_dir;
  Json verts = Json::array();
  for (VertexId u = 0; u < g.vertex_count(); ++u) verts.push_back(label_str(g, u));
  j["vertices"] = verts;
  return j;
}

Json phi_summary_json(const TypedGraph& gpp, const PhiTable& phi) {
  Json j;
  j["m"] = gpp.m;
  j["n"] = phi.n;
  j["mode"] = phi.mode.sampled ? "SAMPLED" : "EXACT";
  if (phi.mode.sampled) {
    j["sample_size"] = phi.mode.sample_size;
    j["seed"] = phi.mode.seed;
  }
  j["total_pairs"] = phi.total_pairs;
  j["total_steps"] = phi.total_steps;

  Json maxima;
  for (EdgeKind k : {EdgeKind::Long, EdgeKind::Medium, EdgeKind::Extra, EdgeKind::Short})
    maxima[kind_name(k)] = rational_str(phi.max_estimate_by_kind(k));
  j["phi_max"] = maxima;
  j["phi_max_overall"] = rational_str(phi.max_estimate());

  std::vector<std::uint64_t> per_dir(std::size_t(gpp.m) + 1, 0);
  for (EdgeId e = 0; e < gpp.edges.size(); ++e)
    if (gpp.edges[e].kind == EdgeKind::Long)
      per_dir[gpp.edges[e].direction] += phi.counts[e];
  Json dir_totals;
  for (int i = 1; i <= gpp.m; ++i)
    dir_totals[std::to_string(i)] = rational_str(phi.estimate(per_dir[std::size_t(i)]));
  j["long_direction_totals"] = dir_totals;

  Json classes = Json::array();
  for (const PrismClass& pc : prism_classes(gpp)) {
    std::uint64_t total = 0;
    for (EdgeId e : pc.edges) total += phi.counts[e];
    Json row;
    row["direction"] = pc.direction;
    row["base"] = format_vertex_label(Stage::Cube, {pc.base, 0, 0}, gpp.m);
    row["k"] = pc.k;
    row["total"] = rational_str(phi.estimate(total));
    classes.push_back(row);
  }
  j["prism_class_totals"] = classes;
  return j;
}

Json report_json(const ExpansionReport& r) {
  Json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["strategy"] = r.strategy_name;
  j["mode"] = r.mode.sampled ? "ESTIMATE" : "EXACT";
  if (r.mode.sampled) {
    j["seed"] = r.mode.seed;
    j["sample_size"] = r.mode.sample_size;
  }
  Json maxima;
  maxima["long"] = rational_str(r.phi_max[std::size_t(EdgeKind::Long)]);
  maxima["medium"] = rational_str(r.phi_max[std::size_t(EdgeKind::Medium)]);
  maxima["short"] = rational_str(r.phi_max[std::size_t(EdgeKind::Short)]);
  maxima["extra"] = rational_str(r.phi_max[std::size_t(EdgeKind::Extra)]);
  j["phi_max"] = maxima;
  j["phi_max_overall"] = rational_str(r.phi_max_overall);
  j["sinclair_lower"] = rational_str(r.sinclair_lower);
  j["nominal_target"] = rational_str(r.nominal_target);
  j["safe_target"] = rational_str(r.safe_target);
  j["cheeger_lower"] = r.cheeger.bound;
  Json cheeger;
  cheeger["lambda2"] = r.cheeger.lambda2;
  cheeger["iterations"] = r.cheeger.iterations;
  cheeger["seed"] = r.cheeger.seed;
  cheeger["tol"] = r.cheeger.tol;
  j["cheeger"] = cheeger;
  Json sep;
  sep["direction"] = r.separator_direction;
  sep["side"] = r.separator_side_plus ? "+" : "-";
  sep["size"] = r.separator_size;
  sep["balance"] = Json::array({r.balance_a, r.balance_b});
  sep["balance_constant"] = rational_str(r.balance_c);
  j["separator"] = sep;
  j["separator_lower_bound"] = rational_str(r.separator_lower);
  return j;
}

Json separator_json(const TypedGraph& gpp, const SeparatorCertificate& cert, int direction,
                    bool side_plus, bool verified) {
  Json j;
  j["m"] = gpp.m;
  j["n"] = gpp.vertex_count();
  j["direction"] = direction;
  j["side"] = side_plus ? "+" : "-";
  j["size"] = cert.c_set.size();
  j["a_size"] = cert.a.size();
  j["b_size"] = cert.b.size();
  j["balance_constant"] = rational_str(cert.balance);
  j["verified"] = verified;
  Json c = Json::array();
  for (VertexId u : cert.c_set) c.push_back(label_str(gpp, u));
  j["separator_vertices"] = c;
  return j;
}

}  // namespace ncc
