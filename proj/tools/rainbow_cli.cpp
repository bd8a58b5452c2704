// Command-line frontend for the edge-colored graph toolkit.
//
// Subcommands: gen, reduce, aux, path, proper, connect, kconnect, rst,
// experiment, validate. Graphs travel in the "n m" / "u v c" text format;
// certificates print as `v0 -c0-> v1 -c1-> ... vk`.
//
// Exit codes: 0 success, 1 error, 2 requested object absent / check failed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rainbow/experiment.hpp"

using namespace rainbow;

namespace {

EdgeColoredGraph load_graph(const std::string& path) {
  if (path.empty() || path == "-") return read_graph(std::cin);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_graph(in);
}

void save_graph(const std::string& path, const EdgeColoredGraph& g) {
  if (path.empty() || path == "-") {
    write_graph(std::cout, g);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_graph(out, g);
}

std::string format_certificate(const PathCertificate& cert) {
  std::ostringstream out;
  out << cert.vertices[0];
  for (size_t i = 0; i < cert.colors.size(); ++i)
    out << " -" << cert.colors[i] << "-> " << cert.vertices[i + 1];
  return out.str();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

Engine parse_engine(const std::string& name) {
  if (name == "exact") return Engine::exact;
  if (name == "cc") return Engine::cc;
  throw InputError("unknown engine '" + name + "' (want exact or cc)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rainbow: edge-colored graph toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- gen
  auto* gen = app.add_subcommand("gen", "generate a named instance");
  std::string gen_family = "random_colored";
  int gen_n = 10, gen_k = 2, gen_palette = 0;
  uint64_t gen_seed = 0;
  std::string gen_target = "0";
  std::string gen_out = "-";
  gen->add_option("--family", gen_family, "fm_example | two_clique_matchings | matching_union | random_colored");
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--k", gen_k, "matching count parameter (two_clique_matchings)");
  gen->add_option("--seed", gen_seed, "random seed (random_colored)");
  gen->add_option("--palette", gen_palette, "palette size (random_colored; 0 = auto)");
  gen->add_option("--target", gen_target, "color degree target p or p/q (random_colored)");
  gen->add_option("-o,--output", gen_out, "output file ('-' = stdout)");
  gen->callback([&] {
    InstanceSpec spec;
    spec.family = parse_family(gen_family);
    spec.n = gen_n;
    spec.k = gen_k;
    spec.seed = gen_seed;
    spec.palette = gen_palette;
    spec.target = parse_threshold(gen_target);
    save_graph(gen_out, generate(spec));
  });

  // ---- reduce
  auto* reduce = app.add_subcommand("reduce", "edge-minimality reduction");
  std::string reduce_in = "-", reduce_out = "-";
  std::string reduce_mode = "minimal", reduce_threshold;
  reduce->add_option("-i,--input", reduce_in, "input graph file ('-' = stdin)");
  reduce->add_option("--mode", reduce_mode, "structural | minimal");
  reduce->add_option("--threshold", reduce_threshold, "color degree threshold p or p/q")->required();
  reduce->add_option("-o,--output", reduce_out, "output file ('-' = stdout)");
  reduce->callback([&] {
    auto g = load_graph(reduce_in);
    Threshold t = parse_threshold(reduce_threshold);
    std::pair<EdgeColoredGraph, ReductionReport> result;
    if (reduce_mode == "structural")
      result = reduce_structural(g, t);
    else if (reduce_mode == "minimal")
      result = reduce_minimal(g, t);
    else
      throw InputError("unknown mode '" + reduce_mode + "'");
    bool graph_to_stdout = reduce_out.empty() || reduce_out == "-";
    std::ostream& report_stream = graph_to_stdout ? std::cerr : std::cout;
    for (const auto& e : result.second.removed)
      report_stream << "REMOVED " << e.u << ' ' << e.v << ' ' << e.c << '\n';
    save_graph(reduce_out, result.first);
  });

  // ---- aux
  auto* aux = app.add_subcommand("aux", "auxiliary digraphs and diagnostics");
  std::string aux_in = "-", aux_out = "-";
  std::string aux_emit = "dg";
  double aux_beta = 0.01, aux_gamma = 0;
  aux->add_option("-i,--input", aux_in, "input graph file ('-' = stdin)");
  aux->add_option("--emit", aux_emit, "dg | dstar | gstar | dprime | report");
  aux->add_option("--beta", aux_beta, "extremality parameter in (0,1)");
  aux->add_option("--gamma", aux_gamma, "W' parameter in (0,1); 0 = sqrt(beta)/16");
  aux->add_option("-o,--output", aux_out, "output file ('-' = stdout)");
  aux->callback([&] {
    auto g = load_graph(aux_in);
    double gamma = aux_gamma > 0 ? aux_gamma : std::sqrt(aux_beta) / 16.0;
    std::ostringstream body;
    auto dg = build_DG(g);
    auto emit_digraph = [&](const AuxDigraph& d) {
      body << d.n << ' ' << d.arcs.size() << '\n';
      for (const auto& a : d.arcs) body << a.from << ' ' << a.to << ' ' << a.color << '\n';
    };
    if (aux_emit == "dg") {
      emit_digraph(dg);
    } else if (aux_emit == "dstar") {
      emit_digraph(build_Dstar(dg));
    } else if (aux_emit == "gstar") {
      auto gs = build_Gstar(dg);
      body << gs.n << ' ' << gs.edges.size() << '\n';
      for (const auto& e : gs.edges) body << e.u << ' ' << e.v << ' ' << e.c << '\n';
    } else if (aux_emit == "dprime") {
      auto table = dominant_analysis(g, dg, aux_beta, gamma);
      emit_digraph(build_Dprime(g, table.u_set));
    } else if (aux_emit == "report") {
      auto report = classify_extremal(g, dg, aux_beta);
      auto table = dominant_analysis(g, dg, aux_beta, gamma);
      body << "n " << g.order() << '\n';
      body << "m " << g.size() << '\n';
      body << "delta_c " << min_color_degree(g) << '\n';
      body << "beta " << aux_beta << '\n';
      body << "gamma " << gamma << '\n';
      body << "dg.arcs " << dg.arcs.size() << '\n';
      body << "dg.min_out " << min_out_degree(dg) << '\n';
      body << "gstar.edges " << report.gstar_edges << '\n';
      body << "type2.bound " << report.type2_bound << '\n';
      body << "type2.extremal " << report.type2_extremal << '\n';
      body << "type1.exact " << report.type1_exact << '\n';
      body << "type1.witness_found " << report.type1_witness_found << '\n';
      if (report.type1_witness_found) {
        body << "type1.cross_arcs " << report.type1_cross_arcs << '\n';
        body << "type1.side1";
        for (Vertex v : report.type1_side1) body << ' ' << v;
        body << "\ntype1.side2";
        for (Vertex v : report.type1_side2) body << ' ' << v;
        body << '\n';
      }
      auto emit_set = [&](const char* name, const std::vector<Vertex>& xs) {
        body << name;
        for (Vertex v : xs) body << ' ' << v;
        body << '\n';
      };
      emit_set("dominant.U", table.u_set);
      emit_set("dominant.W", table.w_set);
      emit_set("dominant.Wprime", table.w_prime);
      for (Vertex u : table.u_set)
        if (table.dominant[u]) body << "dominant.c_u " << u << ' ' << *table.dominant[u] << '\n';
      body << "rainbow_links";
      for (Vertex u : table.u_set)
        if (table.is_rainbow_link[u]) body << ' ' << u;
      body << '\n';
    } else {
      throw InputError("unknown --emit '" + aux_emit + "'");
    }
    if (aux_out.empty() || aux_out == "-") {
      std::cout << body.str();
    } else {
      std::ofstream out(aux_out);
      if (!out) throw InputError("cannot write " + aux_out);
      out << body.str();
    }
  });

  // ---- path
  auto* path = app.add_subcommand("path", "rainbow path search");
  std::string path_in = "-";
  int path_from = 0, path_to = 0, path_max_len = 9, path_trials = 0;
  uint64_t path_seed = 0;
  std::string path_engine = "exact", path_forbid_colors, path_forbid_vertices;
  path->add_option("-i,--input", path_in, "input graph file ('-' = stdin)");
  path->add_option("--from", path_from)->required();
  path->add_option("--to", path_to)->required();
  path->add_option("--max-len", path_max_len, "length budget (default 9)");
  path->add_option("--engine", path_engine, "exact | cc");
  path->add_option("--trials", path_trials, "cc trials (0 = auto)");
  path->add_option("--seed", path_seed, "cc seed");
  path->add_option("--forbid-colors", path_forbid_colors, "comma-separated color ids");
  path->add_option("--forbid-vertices", path_forbid_vertices, "comma-separated vertex ids");
  path->callback([&] {
    auto g = load_graph(path_in);
    std::optional<PathCertificate> cert;
    if (parse_engine(path_engine) == Engine::exact) {
      cert = find_rainbow_path_exact(g, path_from, path_to, path_max_len, parse_int_list(path_forbid_colors),
                                     parse_int_list(path_forbid_vertices));
    } else {
      if (!path_forbid_colors.empty() || !path_forbid_vertices.empty())
        throw InputError("forbidden sets are supported by the exact engine only");
      int trials = path_trials > 0 ? path_trials : std::min(cc_trials_for(path_max_len), 60000);
      cert = find_rainbow_path_cc(g, path_from, path_to, path_max_len, trials, path_seed);
    }
    if (cert)
      std::cout << format_certificate(*cert) << '\n';
    else {
      std::cout << "absent\n";
      exit_code = 2;
    }
  });

  // ---- proper
  auto* proper = app.add_subcommand("proper", "properly-colored path search");
  std::string proper_in = "-";
  int proper_from = 0, proper_to = 0, proper_max_len = 0;
  proper->add_option("-i,--input", proper_in, "input graph file ('-' = stdin)");
  proper->add_option("--from", proper_from)->required();
  proper->add_option("--to", proper_to)->required();
  proper->add_option("--max-len", proper_max_len, "length budget (0 = unbounded)");
  proper->callback([&] {
    auto g = load_graph(proper_in);
    auto cert = proper_max_len > 0 ? find_proper_path(g, proper_from, proper_to, proper_max_len)
                                   : find_proper_path(g, proper_from, proper_to);
    if (cert)
      std::cout << format_certificate(*cert) << '\n';
    else {
      std::cout << "absent\n";
      exit_code = 2;
    }
  });

  // ---- connect
  auto* connect = app.add_subcommand("connect", "all-pairs bounded rainbow connectivity");
  std::string connect_in = "-";
  ConnectOptions connect_opt;
  std::string connect_engine = "exact";
  connect->add_option("-i,--input", connect_in, "input graph file ('-' = stdin)");
  connect->add_option("--max-len", connect_opt.max_len);
  connect->add_option("--engine", connect_engine, "exact | cc");
  connect->add_option("--trials", connect_opt.cc_trials, "cc trials (0 = auto)");
  connect->add_option("--seed", connect_opt.seed);
  connect->add_option("--node-cap", connect_opt.node_cap, "exact engine fallback budget (0 = unlimited)");
  connect->callback([&] {
    auto g = load_graph(connect_in);
    connect_opt.engine = parse_engine(connect_engine);
    auto report = is_rainbow_connected(g, connect_opt);
    std::cout << "connected " << report.connected << '\n';
    std::cout << "worst_pair " << report.worst_u << ' ' << report.worst_v << '\n';
    std::cout << "worst_len " << report.worst_len << '\n';
    std::cout << "cc_fallbacks " << report.cc_fallbacks << '\n';
    if (!report.connected) exit_code = 2;
  });

  // ---- kconnect
  auto* kconnect = app.add_subcommand("kconnect", "iterated rainbow k-connection");
  std::string kconnect_in = "-";
  int kc_from = 0, kc_to = 0, kc_k = 2, kc_max_len = 9;
  kconnect->add_option("-i,--input", kconnect_in, "input graph file ('-' = stdin)");
  kconnect->add_option("--from", kc_from)->required();
  kconnect->add_option("--to", kc_to)->required();
  kconnect->add_option("--k", kc_k);
  kconnect->add_option("--max-len", kc_max_len);
  kconnect->callback([&] {
    auto g = load_graph(kconnect_in);
    auto cert = rainbow_k_connect(g, kc_from, kc_to, kc_k, kc_max_len);
    if (cert)
      for (const auto& p : cert->paths) std::cout << format_certificate(p) << '\n';
    else {
      std::cout << "absent\n";
      exit_code = 2;
    }
  });

  // ---- rst
  auto* rst = app.add_subcommand("rst", "rainbow spanning tree");
  std::string rst_in = "-";
  bool rst_oracle = false;
  rst->add_option("-i,--input", rst_in, "input graph file ('-' = stdin)");
  rst->add_flag("--oracle", rst_oracle, "run the color-removal criterion instead of the finder");
  rst->callback([&] {
    auto g = load_graph(rst_in);
    if (rst_oracle) {
      bool holds = criterion_oracle(g);
      std::cout << "criterion_holds " << holds << '\n';
      if (!holds) {
        auto witness = criterion_witness(g);
        std::cout << "witness_colors";
        for (Color c : witness) std::cout << ' ' << c;
        std::cout << '\n';
        exit_code = 2;
      }
      return;
    }
    auto cert = find_rainbow_spanning_tree(g);
    if (cert)
      for (const auto& e : cert->edges) std::cout << e.u << ' ' << e.v << ' ' << e.c << '\n';
    else {
      std::cout << "absent\n";
      exit_code = 2;
    }
  });

  // ---- experiment
  auto* experiment = app.add_subcommand("experiment", "batch probe over generated instances");
  ExperimentConfig cfg;
  std::string exp_n_list = "10", exp_k_list, exp_family = "random_colored", exp_delta_frac = "1/2", exp_out;
  experiment->add_option("--n-list", exp_n_list, "comma-separated instance sizes");
  experiment->add_option("--samples", cfg.samples);
  experiment->add_option("--seed", cfg.seed);
  experiment->add_option("--max-len", cfg.max_len);
  experiment->add_option("--k-list", exp_k_list, "comma-separated k values for kconnect probes");
  experiment->add_option("--family", exp_family);
  experiment->add_option("--gen-k", cfg.gen_k, "two_clique_matchings parameter");
  experiment->add_option("--delta-frac", exp_delta_frac, "target = delta-frac * n + delta-add");
  experiment->add_option("--delta-add", cfg.delta_add);
  experiment->add_option("--palette", cfg.palette, "0 = auto");
  experiment->add_option("--pairs", cfg.pairs_per_instance, "sampled pairs per kconnect probe");
  experiment->add_option("--node-cap", cfg.node_cap);
  experiment->add_option("--trials", cfg.cc_trials, "cc trials (0 = auto)");
  experiment->add_flag("--check-proper", cfg.check_proper, "compute the properly-connected column");
  experiment->add_option("-o,--out", exp_out, "output directory")->required();
  experiment->callback([&] {
    cfg.family = parse_family(exp_family);
    cfg.n_list = parse_int_list(exp_n_list);
    cfg.k_list = parse_int_list(exp_k_list);
    cfg.delta_frac = parse_threshold(exp_delta_frac);
    cfg.out_dir = exp_out;
    auto result = run_experiment(cfg);
    std::cout << "rows " << result.rows.size() << '\n';
    std::cout << "counterexamples " << result.counterexamples << '\n';
    std::cout << "csv " << result.csv_path.string() << '\n';
    if (result.counterexamples > 0) exit_code = 2;
  });

  // ---- validate
  auto* validate = app.add_subcommand("validate", "re-run module invariants on one instance");
  std::string validate_input;
  validate->add_option("-i,--input", validate_input, "instance file")->required();
  validate->callback([&] {
    if (!validate_instance(validate_input, std::cout)) exit_code = 2;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
