// Command-line front end: find / verify / oracle / extract-expander / gen / bench.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "tksub/builder.hpp"
#include "tksub/expander.hpp"
#include "tksub/harness.hpp"
#include "tksub/io.hpp"
#include "tksub/verify.hpp"

using namespace tksub;

namespace {

constexpr int kUsage = 2;

const std::map<std::string, Preset> kPresets{{"desk", Preset::Desk}, {"theorem", Preset::Theorem}};
const std::map<std::string, CheckMode> kModes{{"exact", CheckMode::Exact}, {"sampled", CheckMode::Sampled}};

// Writes to the named file, or stdout for "" / "-".
template <class Fn>
void emit(const std::string& file, Fn&& write) {
  if (file.empty() || file == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file);
  write(out);
}

struct Common {
  std::string preset = "desk";
  std::uint64_t seed = 1;
};

BuildConfig make_config(const Common& c) {
  BuildConfig cfg;
  cfg.preset = kPresets.at(c.preset);
  cfg.seed = c.seed;
  cfg.expansion_budget.seed = c.seed;
  return cfg;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--preset", c.preset, "parameter regime")->check(CLI::IsMember({"desk", "theorem"}));
  sub->add_option("--seed", c.seed, "seed for all randomness");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"balanced clique subdivisions: search, verification and experiments"};
  app.require_subcommand(1);

  // find
  Common find_common;
  std::string find_input, find_out, find_trace;
  int find_ell = 0, find_k = 0, find_steps = 4;
  auto* find = app.add_subcommand("find", "build a TK^(ell)_k certificate");
  find->add_option("--input", find_input, "edge-list file")->required();
  find->add_option("--ell", find_ell, "path length (default: preset)");
  find->add_option("--target-k", find_k, "core count goal (default: preset)");
  find->add_option("--max-steps", find_steps, "retries per pair")->check(CLI::PositiveNumber);
  find->add_option("--out", find_out, "certificate file (default stdout)");
  find->add_option("--trace", find_trace, "write pipeline decisions here");
  add_common(find, find_common);

  // verify
  std::string verify_input, verify_cert;
  auto* verify = app.add_subcommand("verify", "check a certificate against a graph");
  verify->add_option("--input", verify_input, "edge-list file")->required();
  verify->add_option("--cert", verify_cert, "certificate file")->required();

  // oracle
  std::string oracle_input, oracle_cert;
  int oracle_max_ell = 4, oracle_ell = 0, oracle_cap = 14;
  std::uint64_t oracle_nodes = OracleLimits{}.max_nodes;
  auto* oracle = app.add_subcommand("oracle", "exhaustive maximum subdivision on a small graph");
  oracle->add_option("--input", oracle_input, "edge-list file")->required();
  oracle->add_option("--max-ell", oracle_max_ell, "largest ell tried")->check(CLI::PositiveNumber);
  oracle->add_option("--ell", oracle_ell, "search this ell only");
  oracle->add_option("--max-vertices", oracle_cap, "refuse larger graphs");
  oracle->add_option("--max-nodes", oracle_nodes, "search node budget");
  oracle->add_option("--cert", oracle_cert, "write the witness here");

  // extract-expander
  Common ext_common;
  std::string ext_input, ext_out, ext_mode = "sampled";
  double ext_e1 = 0.5, ext_e2 = 0.1;
  auto* extract = app.add_subcommand("extract-expander", "expander subgraph of average degree >= d/2");
  extract->add_option("--input", ext_input, "edge-list file")->required();
  extract->add_option("--epsilon1", ext_e1, "expansion constant");
  extract->add_option("--epsilon2", ext_e2, "scale constant, k = epsilon2 * d");
  extract->add_option("--mode", ext_mode, "expansion check")->check(CLI::IsMember({"exact", "sampled"}));
  extract->add_option("--out", ext_out, "edge-list output (default stdout)");
  add_common(extract, ext_common);

  // gen
  std::string gen_family, gen_out;
  GeneratorSpec gen_spec;
  auto* gen = app.add_subcommand("gen", "generate a graph");
  gen->add_option("--family", gen_family, "graph family")->required();
  gen->add_option("--n", gen_spec.n, "order or side size");
  gen->add_option("--d,--k", gen_spec.d, "degree, dimension or side size");
  gen->add_option("--copies", gen_spec.copies, "number of disjoint copies");
  gen->add_option("--p", gen_spec.p, "edge probability");
  gen->add_option("--seed", gen_spec.seed, "generator seed");
  gen->add_option("--out", gen_out, "edge-list output (default stdout)");

  // bench
  Common bench_common;
  std::string bench_family = "complete_bipartite_union", bench_results, bench_table, bench_certs;
  std::vector<int> bench_ds{4, 8, 16, 32};
  int bench_n = 0, bench_copies = 1, bench_ell = 0, bench_k = 0, bench_workers = 0;
  double bench_p = 0.5;
  bool bench_det = false;
  auto* bench = app.add_subcommand("bench", "scaling sweep over d");
  bench->add_option("--family", bench_family, "graph family");
  bench->add_option("--d", bench_ds, "degree parameters swept")->delimiter(',');
  bench->add_option("--n", bench_n, "order parameter for families that take one");
  bench->add_option("--copies", bench_copies, "copies for complete_bipartite_union");
  bench->add_option("--p", bench_p, "edge probability");
  bench->add_option("--ell", bench_ell, "path length (default: preset)");
  bench->add_option("--target-k", bench_k, "core goal (default: ceil(sqrt(2d)) + 2 per row)");
  bench->add_option("--workers", bench_workers, "parallel rows (default: all threads)");
  bench->add_option("--results", bench_results, "key=value results file");
  bench->add_option("--table", bench_table, "table output (default stdout)");
  bench->add_option("--cert-dir", bench_certs, "save and re-verify certificates here");
  bench->add_flag("--deterministic", bench_det, "write ms=0 in the results file");
  add_common(bench, bench_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*find) {
      const Graph g = load_edge_list(find_input).graph;
      BuildConfig cfg = make_config(find_common);
      cfg.ell = find_ell;
      cfg.target_k = find_k;
      cfg.max_steps = find_steps;
      const AutoResult res = build_auto(g, cfg);
      emit(find_out, [&](std::ostream& o) { write_certificate(o, res.cert); });
      if (!find_trace.empty()) {
        emit(find_trace, [&](std::ostream& o) {
          write_trace(o, res.trace);
          for (const auto& d : res.diagnostics) o << "diagnostic: " << d << "\n";
        });
      }
      std::cerr << "k=" << res.cert.k() << " ell=" << res.cert.ell << " branch=" << res.branch
                << (res.fallback ? " (fallback)" : "") << "\n";
      return 0;
    }
    if (*verify) {
      const Graph g = load_edge_list(verify_input).graph;
      SubdivisionCertificate cert;
      try {
        cert = load_certificate(verify_cert);
      } catch (const std::runtime_error& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return 1;
      }
      const Verdict v = verify_subdivision(g, cert);
      if (v) {
        std::cout << "valid: TK^(" << cert.ell << ")_" << cert.k() << "\n";
        return 0;
      }
      std::cout << "invalid: clause " << v.clause << ": " << v.reason << "\n";
      return 1;
    }
    if (*oracle) {
      const Graph g = load_edge_list(oracle_input).graph;
      const OracleLimits limits{oracle_cap, oracle_nodes};
      const OracleResult r = oracle_ell > 0 ? oracle_max_k_at_ell(g, oracle_ell, limits)
                                            : oracle_max_subdivision(g, oracle_max_ell, limits);
      std::cout << "best_k=" << r.best_k << " best_ell=" << r.best_ell << " nodes=" << r.nodes_explored
                << " status=" << status_name(r.status) << "\n";
      if (!oracle_cert.empty()) save_certificate(oracle_cert, r.witness);
      return 0;
    }
    if (*extract) {
      const Graph g = load_edge_list(ext_input).graph;
      ExpansionBudget budget;
      budget.mode = kModes.at(ext_mode);
      budget.seed = ext_common.seed;
      const auto r = extract_expander(g, ext_e2, ext_e1, budget);
      emit(ext_out, [&](std::ostream& o) {
        const DegreeStats before = degree_stats(g);
        const DegreeStats after = degree_stats(r.subgraph.graph);
        o << "# d(G) " << before.average() << "\n# d(H) " << after.average() << "\n# min_degree(H) " << after.minimum
          << "\n# mode " << mode_name(r.report.mode) << "\n# expansion " << (r.report.holds ? "holds" : "violated")
          << "\n# exhaustive " << (r.report.exhaustive ? "yes" : "no") << "\n# iterations " << r.iterations
          << "\n# to_parent";
        for (Vertex v : r.subgraph.to_parent) o << " " << v;
        o << "\n";
        write_edge_list(o, r.subgraph.graph);
      });
      return 0;
    }
    if (*gen) {
      gen_spec.family = parse_family(gen_family);
      const Graph g = generate(gen_spec);
      emit(gen_out, [&](std::ostream& o) { write_edge_list(o, g); });
      return 0;
    }
    if (*bench) {
      BuildConfig cfg = make_config(bench_common);
      cfg.ell = bench_ell;
      const Family family = parse_family(bench_family);
      std::vector<GeneratorSpec> sweep;
      for (int d : bench_ds) {
        GeneratorSpec s{family, bench_n > 0 ? bench_n : d, d, bench_copies, bench_p, bench_common.seed};
        sweep.push_back(s);
      }
      cfg.target_k = bench_k;
      BenchOptions opts;
      opts.workers = bench_workers;
      if (!bench_certs.empty()) opts.cert_dir = bench_certs;
      const BenchTable table = bench_scaling(sweep, cfg, opts);
      emit(bench_table, [&](std::ostream& o) { write_bench_table(o, table, cfg.c); });
      if (!bench_results.empty())
        emit(bench_results, [&](std::ostream& o) { write_bench_results(o, table, bench_det); });
      for (const auto& r : table.rows)
        if (!r.error.empty() || !r.verified) return 1;
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
