// Command-line front end: graph generation, canonical routing, load tables,
// separators, spectral bounds, invariant verification, and the combined
// expansion report. Exit codes: 0 success, 1 invariant or verification
// failure, 2 argument error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "ncc/cluster.hpp"
#include "ncc/cube_core.hpp"
#include "ncc/expansion.hpp"
#include "ncc/graph_builders.hpp"
#include "ncc/io.hpp"
#include "ncc/routing.hpp"
#include "ncc/typed_graph.hpp"
#include "ncc/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using ncc::Json;
using ncc::Rational;
using ncc::Stage;
using ncc::TypedGraph;

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads <= 0) {
    if (const char* env = std::getenv("NCC_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

std::shared_ptr<const ncc::ClusterStrategy> make_strategy(int m, const std::string& path) {
  if (path.empty()) return ncc::double_fan_strategy(m);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("strategy-file: cannot open " + path);
  auto s = ncc::load_strategy(in, path);
  if (s->m() != m)
    throw std::invalid_argument("strategy-dimension: file is for m=" + std::to_string(s->m()));
  return s;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("output-file: cannot open " + path);
  return file;
}

int run_generate(int m, const std::string& stage_text, const std::string& strategy_path,
                 const std::string& format, const std::string& out_path) {
  auto stage = ncc::stage_from_name(stage_text);
  if (!stage) throw std::invalid_argument("stage: unknown stage '" + stage_text + "'");
  TypedGraph g;
  switch (*stage) {
    case Stage::Cube: g = ncc::build_hypercube(m); break;
    case Stage::Prime: g = ncc::build_cg_prime(m, make_strategy(m, strategy_path)); break;
    case Stage::Ccc: g = ncc::build_ccc(m); break;
    case Stage::DoublePrime:
      g = ncc::build_cg_doubleprime(m, make_strategy(m, strategy_path));
      break;
  }
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  if (format == "edges")
    ncc::write_edge_list(out, g);
  else if (format == "dot")
    ncc::write_dot(out, g);
  else if (format == "json")
    out << ncc::stats_json(g).dump(2) << '\n';
  else
    throw std::invalid_argument("format: expected edges, dot, or json");
  return 0;
}

int run_route(int m, const std::string& strategy_path, const std::string& from,
              const std::string& to) {
  auto s = make_strategy(m, strategy_path);
  const TypedGraph gpp = ncc::build_cg_doubleprime(m, s);
  const ncc::VertexLabel a = ncc::parse_vertex_label(Stage::DoublePrime, from, m);
  const ncc::VertexLabel b = ncc::parse_vertex_label(Stage::DoublePrime, to, m);
  const ncc::PathTrace trace = ncc::canonical_path(gpp, a, b);
  std::cout << "start " << ncc::format_vertex_label(Stage::DoublePrime, trace.vertices[0], m)
            << '\n';
  for (std::size_t k = 0; k < trace.kinds.size(); ++k)
    std::cout << ncc::kind_name(trace.kinds[k]) << ' '
              << ncc::format_vertex_label(Stage::DoublePrime, trace.vertices[k + 1], m) << '\n';
  std::cout << "length " << trace.length() << '\n';
  return 0;
}

int run_phi(int m, const std::string& strategy_path, bool exact, std::uint64_t sample,
            std::uint64_t seed, bool allow_large, const std::string& csv_path) {
  auto s = make_strategy(m, strategy_path);
  const TypedGraph gpp = ncc::build_cg_doubleprime(m, s);
  const bool sampled = sample > 0 && !exact;
  const ncc::PhiTable phi =
      sampled ? ncc::phi_sampled(gpp, sample, seed) : ncc::phi_exact(gpp, allow_large);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::invalid_argument("output-file: cannot open " + csv_path);
    ncc::write_phi_csv(csv, gpp, phi);
  }
  std::cout << ncc::phi_summary_json(gpp, phi).dump(2) << '\n';
  return 0;
}

int run_separator(int m, const std::string& strategy_path, int direction,
                  const std::string& side, const std::string& balance_text) {
  auto s = make_strategy(m, strategy_path);
  const TypedGraph gpp = ncc::build_cg_doubleprime(m, s);
  if (side != "-" && side != "+")
    throw std::invalid_argument("side: expected '-' or '+'");
  const bool side_plus = side == "+";
  const Rational balance = Rational::parse(balance_text);
  const ncc::SeparatorCertificate cert =
      ncc::direction_separator(gpp, direction, side_plus, balance);
  const bool ok = ncc::verify_separator(gpp, cert);
  std::cout << ncc::separator_json(gpp, cert, direction, side_plus, ok).dump(2) << '\n';
  if (!ok) {
    std::cerr << "separator-verification: certificate rejected\n";
    return 1;
  }
  return 0;
}

int run_verify(int m, const std::string& strategy_path, bool phi_on, bool phi_off) {
  auto s = make_strategy(m, strategy_path);
  const bool with_phi = phi_on ? true : phi_off ? false : m <= 5;
  const auto checks = ncc::run_verification(m, s, with_phi);
  std::size_t failed = 0;
  for (const auto& c : checks) {
    if (!c.pass) ++failed;
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  std::cout << (failed == 0 ? "VERIFY PASS" : "VERIFY FAIL") << " (" << checks.size() - failed
            << '/' << checks.size() << " checks)\n";
  return failed == 0 ? 0 : 1;
}

int run_report(int m, const std::string& strategy_path, bool exact, std::uint64_t sample,
               std::uint64_t seed, bool allow_large, const std::string& balance_text,
               const std::string& side, double tol) {
  auto s = make_strategy(m, strategy_path);
  ncc::ReportOptions opts;
  opts.sampled = sample > 0 && !exact;
  if (!opts.sampled && !exact && m > 7) {
    opts.sampled = true;
    sample = 100000;
  }
  opts.sample_size = sample > 0 ? sample : 100000;
  opts.seed = seed;
  opts.allow_large_exact = allow_large;
  opts.balance = Rational::parse(balance_text);
  if (side != "-" && side != "+")
    throw std::invalid_argument("side: expected '-' or '+'");
  opts.side_plus = side == "+";
  opts.cheeger.tol = tol;
  const ncc::ExpansionReport r = ncc::full_report(m, s, opts);
  std::cout << ncc::report_json(r).dump(2) << '\n';
  return 0;
}

int run_spectral(int m, const std::string& strategy_path, double tol, std::uint64_t seed,
                 bool serial) {
  auto s = make_strategy(m, strategy_path);
  const TypedGraph gpp = ncc::build_cg_doubleprime(m, s);
  ncc::CheegerOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  opts.parallel = !serial;
  const ncc::CheegerResult r = ncc::cheeger_lower(gpp, opts);
  Json j;
  j["m"] = m;
  j["n"] = gpp.vertex_count();
  j["lambda2"] = r.lambda2;
  j["cheeger_lower"] = r.bound;
  j["iterations"] = r.iterations;
  j["seed"] = r.seed;
  j["tol"] = r.tol;
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neighborly cubical graph toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (fallback: NCC_THREADS, then OpenMP default)");

  int m = 4;
  std::string strategy_path, stage_text = "double-prime", format = "edges", out_path;
  std::string from_label, to_label, side = "-", balance_text = "1/3";
  std::uint64_t sample = 0, seed = 1;
  bool exact = false, allow_large = false, serial = false, phi_on = false, phi_off = false;
  int direction = 1;
  double tol = 1e-9;

  auto* generate = app.add_subcommand("generate", "build one stage and export it");
  generate->add_option("--m", m, "cube dimension")->required();
  generate->add_option("--stage", stage_text, "cube | prime | ccc | double-prime");
  generate->add_option("--strategy", strategy_path, "cluster strategy file");
  generate->add_option("--format", format, "edges | dot | json");
  generate->add_option("--output", out_path, "output file (default stdout)");

  auto* route = app.add_subcommand("route", "canonical path between two vertices");
  route->add_option("--m", m, "cube dimension")->required();
  route->add_option("--strategy", strategy_path, "cluster strategy file");
  route->add_option("--from", from_label, "source label b<bits>:d<i>:p<j>")->required();
  route->add_option("--to", to_label, "target label b<bits>:d<i>:p<j>")->required();

  auto* phi = app.add_subcommand("phi", "per-edge load table of all canonical paths");
  phi->add_option("--m", m, "cube dimension")->required();
  phi->add_option("--strategy", strategy_path, "cluster strategy file");
  phi->add_flag("--exact", exact, "route every ordered pair (default for m <= 7)");
  phi->add_option("--sample", sample, "route N random pairs instead");
  phi->add_option("--seed", seed, "sample seed");
  phi->add_flag("--allow-large", allow_large, "permit exact mode above m = 7");
  phi->add_option("--csv", out_path, "write the per-edge table to this file");

  auto* separator = app.add_subcommand("separator", "direction separator certificate");
  separator->add_option("--m", m, "cube dimension")->required();
  separator->add_option("--strategy", strategy_path, "cluster strategy file");
  separator->add_option("--direction", direction, "cut direction (1..m)")->required();
  separator->add_option("--side", side, "'-' or '+' half of the cut coordinate");
  separator->add_option("--balance", balance_text, "balance constant c (rational)");

  auto* verify = app.add_subcommand("verify", "run the structural invariant suite");
  verify->add_option("--m", m, "cube dimension")->required();
  verify->add_option("--strategy", strategy_path, "cluster strategy file");
  verify->add_flag("--phi", phi_on, "include the exact load-table checks (default for m <= 5)");
  verify->add_flag("--no-phi", phi_off, "skip the load-table checks");

  auto* report = app.add_subcommand("report", "combined expansion report");
  report->add_option("--m", m, "cube dimension")->required();
  report->add_option("--strategy", strategy_path, "cluster strategy file");
  report->add_flag("--exact", exact, "exact load table (default for m <= 7)");
  report->add_option("--sample", sample, "sampled load table with N pairs");
  report->add_option("--seed", seed, "sample seed");
  report->add_flag("--allow-large", allow_large, "permit exact mode above m = 7");
  report->add_option("--balance", balance_text, "balance constant c (rational)");
  report->add_option("--side", side, "separator side, '-' or '+'");
  report->add_option("--tol", tol, "spectral tolerance");

  auto* spectral = app.add_subcommand("spectral", "Laplacian lambda_2 lower bound");
  spectral->add_option("--m", m, "cube dimension")->required();
  spectral->add_option("--strategy", strategy_path, "cluster strategy file");
  spectral->add_option("--tol", tol, "convergence tolerance");
  spectral->add_option("--seed", seed, "start-vector seed");
  spectral->add_flag("--serial", serial, "disable the parallel matvec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_threads(threads);
    if (generate->parsed())
      return run_generate(m, stage_text, strategy_path, format, out_path);
    if (route->parsed()) return run_route(m, strategy_path, from_label, to_label);
    if (phi->parsed())
      return run_phi(m, strategy_path, exact, sample, seed, allow_large, out_path);
    if (separator->parsed())
      return run_separator(m, strategy_path, direction, side, balance_text);
    if (verify->parsed()) return run_verify(m, strategy_path, phi_on, phi_off);
    if (report->parsed())
      return run_report(m, strategy_path, exact, sample, seed, allow_large, balance_text, side,
                        tol);
    if (spectral->parsed()) return run_spectral(m, strategy_path, tol, seed, serial);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
