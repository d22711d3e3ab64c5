#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "json_writer.hpp"
#include "resym/generators.hpp"
#include "resym/graph.hpp"
#include "resym/kron.hpp"
#include "resym/partition.hpp"
#include "resym/symmetrize.hpp"

namespace resym::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string dot;
  double tol_residual = kResidualTol;
  double tol_check = kCheckTol;
  int threads = 0;
  std::vector<int> keep;

  // gen
  std::string kind;
  int n = 0;
  int path_len = 0;
  int rungs = 1;
  bool directed = false;
  bool undirected = false;
};

DirectedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  return parse_edge_list(in);
}

void emit(const std::string& output, const std::string& text) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + output);
  out << text;
}

void write_report(std::ostream& os, const VerificationReport& report) {
  os << "{\"checks\":[";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const Check& c = report.checks[i];
    os << (i ? "," : "") << "{\"name\":\"" << c.name << "\",\"passed\":"
       << (c.passed ? "true" : "false") << ",\"residual\":" << json_double(c.residual)
       << ",\"tolerance\":" << json_double(c.tolerance)
       << ",\"asserted\":" << (c.asserted ? "true" : "false") << "}";
  }
  os << "],\"all_passed\":" << (report.all_passed() ? "true" : "false") << "}";
}

void write_dot(const std::string& path, const DirectedGraph& g, const NodePartition& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open DOT output file: " + path);
  out << "digraph g {\n  node [style=filled];\n";
  for (int v = 0; v < g.node_count(); ++v)
    out << "  " << v << " [fillcolor=" << (p.contains(v) ? "lightblue" : "lightsalmon")
        << "];\n";
  std::map<std::pair<int, int>, double> w;
  for (const Edge& e : g.edges()) w[{e.src, e.dst}] = e.weight;
  for (const Edge& e : g.edges()) {
    const auto rev = w.find({e.dst, e.src});
    const bool symmetric = rev != w.end() && rev->second == e.weight;
    if (symmetric && e.src > e.dst) continue;  // one line per symmetric pair
    out << "  " << e.src << " -> " << e.dst;
    out << " [label=\"" << json_double(e.weight) << "\"";
    if (symmetric) out << ", dir=none";
    out << "];\n";
  }
  out << "}\n";
}

int cmd_symmetrize(const Options& opt) {
  const DirectedGraph g = load_graph(opt.input);
  const SymmetrizationResult result = symmetrize(laplacian(g));
  std::ostringstream os;
  write_labeled_matrix(os, result.sym_laplacian);
  emit(opt.output, os.str());
  return 0;
}

int cmd_resistance(const Options& opt) {
  const DirectedGraph g = load_graph(opt.input);
  const ResistanceMatrix r = resistance_matrix(laplacian(g));
  std::ostringstream os;
  write_labeled_matrix(os, r.entries);
  emit(opt.output, os.str());
  return 0;
}

int cmd_decompose(const Options& opt) {
  const DirectedGraph g = load_graph(opt.input);
  const LaplacianMatrix l = laplacian(g);
  const Decomposition dec = decompose(l);
  const int n = l.size();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);

  std::ostringstream os;
  os << "{\"n\":" << n << ",\"labels\":[";
  for (int i = 0; i < n; ++i) os << (i ? "," : "") << i;
  os << "],\"h\":";
  write_matrix_rows(os, dec.h_matrix);
  os << ",\"k\":";
  write_matrix_rows(os, dec.k_matrix);
  os << ",\"s\":";
  write_matrix_rows(os, dec.s_matrix);
  os << ",\"residuals\":{";
  os << "\"reconstruction\":"
     << json_double((l.matrix() - dec.h_matrix * (eye + 2.0 * dec.k_matrix) *
                                      dec.sym_laplacian)
                        .norm() /
                    std::max(l.matrix().norm(), 1e-300));
  os << ",\"h_idempotency\":"
     << json_double((dec.h_matrix * dec.h_matrix - dec.h_matrix).cwiseAbs().maxCoeff());
  os << ",\"k_skewness\":"
     << json_double((dec.k_matrix + dec.k_matrix.transpose()).cwiseAbs().maxCoeff());
  os << ",\"s_orthogonality\":"
     << json_double(
            (dec.s_matrix.transpose() * dec.s_matrix - eye).cwiseAbs().maxCoeff());
  os << "}}\n";
  emit(opt.output, os.str());
  return 0;
}

int cmd_bisect(const Options& opt) {
  const DirectedGraph g = load_graph(opt.input);
  const Bisection b = bisect(laplacian(g));
  std::ostringstream os;
  os << "{\"partition\":";
  write_int_array(os, b.partition.members());
  os << ",\"urc\":" << json_double(b.urc_value)
     << ",\"drc\":" << json_double(b.drc_value) << ",\"bounds\":["
     << json_double(b.bounds.first) << "," << json_double(b.bounds.second) << "]}\n";
  emit(opt.output, os.str());
  if (!opt.dot.empty()) write_dot(opt.dot, g, b.partition);
  return 0;
}

int cmd_kron(const Options& opt) {
  const DirectedGraph g = load_graph(opt.input);
  const ReductionResult r = directed_kron(laplacian(g), opt.keep);
  std::ostringstream os;
  os << "{\"kept\":";
  write_int_array(os, r.kept);
  os << ",\"reduced_sym\":";
  write_matrix_rows(os, r.reduced_sym);
  os << ",\"reduced_h\":";
  write_matrix_rows(os, r.reduced_h);
  os << ",\"reduced_k\":";
  write_matrix_rows(os, r.reduced_k);
  os << ",\"reduced_directed\":";
  write_matrix_rows(os, r.reduced_directed);
  os << ",\"validation\":";
  write_report(os, r.validation);
  os << "}\n";
  emit(opt.output, os.str());
  return 0;
}

int cmd_verify(const Options& opt) {
  const DirectedGraph g = load_graph(opt.input);
  const LaplacianMatrix l = laplacian(g);
  const SymmetrizationResult result = symmetrize(l);
  const VerificationReport report =
      verify_symmetrization(l, result, VerifyTolerances{opt.tol_residual, opt.tol_check});
  std::ostringstream os;
  write_report(os, report);
  os << "\n";
  emit(opt.output, os.str());
  return report.all_passed() ? 0 : 3;
}

int cmd_gen(const Options& opt) {
  if (opt.directed && opt.undirected)
    throw InputError("gen: --directed and --undirected are mutually exclusive");
  DirectedGraph g(1, {});
  if (opt.kind == "roach") {
    const bool directed = opt.directed;  // undirected unless asked
    g = roach_graph(opt.path_len, opt.rungs, directed);
  } else if (opt.kind == "cycle") {
    g = cycle_graph(opt.n, /*directed=*/!opt.undirected);
  } else if (opt.kind == "path") {
    g = path_graph(opt.n, /*directed=*/opt.directed);
  } else {
    throw InputError("gen: unknown kind `" + opt.kind + "` (roach|cycle|path)");
  }
  std::ostringstream os;
  write_edge_list(g, os);
  emit(opt.output, os.str());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"resistance-preserving symmetrization of directed graphs"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("-i,--input", opt.input, "edge-list input file")->required();
    sub->add_option("-o,--output", opt.output, "output file (default stdout)");
    sub->add_option("--tol-residual", opt.tol_residual,
                    "tolerance for construction residuals")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol-check", opt.tol_check, "tolerance for cross-checks")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", opt.threads, "Eigen thread count (0 = default)");
  };

  CLI::App* sym = app.add_subcommand("symmetrize",
                                     "emit the resistance-preserving symmetrized Laplacian");
  add_common(sym, true);
  CLI::App* res = app.add_subcommand("resistance", "emit the effective resistance matrix");
  add_common(res, true);
  CLI::App* dec = app.add_subcommand("decompose", "emit H, K, S and residuals");
  add_common(dec, true);
  CLI::App* bis = app.add_subcommand("bisect", "spectral bisection via the symmetrization");
  add_common(bis, true);
  bis->add_option("--dot", opt.dot, "write a DOT file with partition coloring");
  CLI::App* kro = app.add_subcommand("kron", "Kron-style node reduction");
  add_common(kro, true);
  kro->add_option("--keep", opt.keep, "node ids to keep")->required()->delimiter(',');
  CLI::App* ver = app.add_subcommand("verify", "full invariant report for the pipeline");
  add_common(ver, true);
  CLI::App* gen = app.add_subcommand("gen", "generate fixture graphs");
  gen->add_option("kind", opt.kind, "roach|cycle|path")->required();
  gen->add_option("-o,--output", opt.output, "output file (default stdout)");
  gen->add_option("--n", opt.n, "node count (cycle, path)");
  gen->add_option("--path-len", opt.path_len, "roach path length");
  gen->add_option("--rungs", opt.rungs, "roach vertical edge count");
  gen->add_flag("--directed", opt.directed, "directed variant");
  gen->add_flag("--undirected", opt.undirected, "undirected variant");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (opt.threads > 0) Eigen::setNbThreads(opt.threads);

  try {
    if (sym->parsed()) return cmd_symmetrize(opt);
    if (res->parsed()) return cmd_resistance(opt);
    if (dec->parsed()) return cmd_decompose(opt);
    if (bis->parsed()) return cmd_bisect(opt);
    if (kro->parsed()) return cmd_kron(opt);
    if (ver->parsed()) return cmd_verify(opt);
    if (gen->parsed()) return cmd_gen(opt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace resym::cli
