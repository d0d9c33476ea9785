#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "ncc/expansion.hpp"
#include "ncc/graph_builders.hpp"
#include "ncc/routing.hpp"
#include "ncc/typed_graph.hpp"

namespace ncc {

using Json = nlohmann::ordered_json;

// One "<kind> <label_u> <label_v>" line per edge, in edge-id order.
void write_edge_list(std::ostream& out, const TypedGraph& g);

// Inverse of write_edge_list: rebuilds the graph with the same dense ids.
TypedGraph parse_edge_list(std::istream& in, Stage stage, int m);

void write_dot(std::ostream& out, const TypedGraph& g);

// Census report plus the id -> label map ("vertices" array in id order).
Json stats_json(const TypedGraph& g);

// Per-kind maxima, per-direction long totals, per-prism-class usage, pair
// totals, mode and seed. Rational values are rendered as strings.
Json phi_summary_json(const TypedGraph& gpp, const PhiTable& phi);

Json report_json(const ExpansionReport& r);

Json separator_json(const TypedGraph& gpp, const SeparatorCertificate& cert,
                    int direction, bool side_plus, bool verified);

}  // namespace ncc
