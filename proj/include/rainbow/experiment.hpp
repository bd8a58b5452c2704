#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/auxiliary.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/io.hpp"
#include "rainbow/reduction.hpp"
#include "rainbow/search.hpp"
#include "rainbow/spanning_tree.hpp"

namespace rainbow {

struct ExperimentConfig {
  Family family = Family::random_colored;
  std::vector<int> n_list;
  int samples = 1;
  uint64_t seed = 0;
  int max_len = 9;
  std::vector<int> k_list;        // rainbow k-connect attempts per k
  int gen_k = 2;                  // two_clique_matchings parameter
  Threshold delta_frac{1, 2};     // color degree target = n * delta_frac + delta_add
  long long delta_add = 0;
  int palette = 0;                // 0 = auto
  int pairs_per_instance = 20;    // sampled pairs for k-connect
  uint64_t node_cap = 250000;     // exact search budget per pair before cc fallback
  int cc_trials = 0;              // 0 = auto
  bool check_proper = false;      // properly-connected column (exact, n <= 12)
  std::filesystem::path out_dir;  // instances and report.csv land here
};

struct KConnectOutcome {
  int k = 0;
  int successes = 0;
  int attempts = 0;
};

struct ExperimentRow {
  std::string family;
  int n = 0;
  int gen_k = 0;
  int sample = 0;
  uint64_t seed = 0;
  std::string instance;  // path relative to out_dir
  std::string status;    // ok | counterexample | generation_error
  std::string note;
  int delta_c = -1;
  int m_raw = -1;
  int m_reduced = -1;  // raw minus reduced = removed edges
  int dg_min_out = -1;
  int fact22_ok = -1;  // -1: precondition delta_c >= n/2 not met
  double fact22_margin = 0;
  Vertex worst_u = -1, worst_v = -1;
  int worst_len = -1;
  int cc_fallbacks = 0;
  int proper_connected = -1;  // 1 / 0 / -1 = not computed
  std::vector<KConnectOutcome> kconnect;
  double ms_generate = 0, ms_reduce = 0, ms_search = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  int counterexamples = 0;
  std::string csv;  // full report text
  std::filesystem::path csv_path;
};

namespace detail {

inline std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

inline std::string sanitize_csv(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

inline double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

inline const char* experiment_csv_header() {
  return "family,n,gen_k,sample,seed,instance,status,note,delta_c,m_raw,m_reduced,dg_min_out,"
         "fact22_ok,fact22_margin,worst_u,worst_v,worst_len,cc_fallbacks,proper_connected,kconnect";
}

inline std::string csv_line(const ExperimentRow& row) {
  std::ostringstream out;
  out << row.family << ',' << row.n << ',' << row.gen_k << ',' << row.sample << ',' << row.seed << ','
      << row.instance << ',' << row.status << ',' << detail::sanitize_csv(row.note) << ',' << row.delta_c << ','
      << row.m_raw << ',' << row.m_reduced << ',' << row.dg_min_out << ',' << row.fact22_ok << ','
      << detail::fixed4(row.fact22_margin) << ',' << row.worst_u << ',' << row.worst_v << ',' << row.worst_len
      << ',' << row.cc_fallbacks << ',' << row.proper_connected << ',';
  for (size_t i = 0; i < row.kconnect.size(); ++i) {
    if (i) out << ' ';
    out << "k=" << row.kconnect[i].k << ":" << row.kconnect[i].successes << "/" << row.kconnect[i].attempts;
  }
  return out.str();
}

// Data lines of a report (comment lines carry timings and are not part of the
// reproducible body).
inline std::vector<std::string> csv_data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

namespace detail {

// Checks the structural invariants of the auxiliary digraphs; returns an
// empty string or a breach description.
inline std::string aux_invariant_breach(const EdgeColoredGraph& g, const AuxDigraph& dg) {
  for (Vertex v = 0; v < dg.n; ++v) {
    std::vector<Color> outs;
    for (const auto& a : dg.arcs)
      if (a.from == v) outs.push_back(a.color);
    std::sort(outs.begin(), outs.end());
    if (std::adjacent_find(outs.begin(), outs.end()) != outs.end())
      return "dg_out_colors v=" + std::to_string(v);
  }
  auto dstar = build_Dstar(dg);
  auto gstar = build_Gstar(dg);
  if (dg.arcs.size() != dstar.arcs.size() + 2 * gstar.edges.size()) return "dg_arc_partition";
  auto dprime = build_Dprime(g, {});
  if (g.order() > 0 && min_out_degree(dprime) != min_color_degree(g)) return "dprime_outdeg";
  return "";
}

inline void measure_worst_rainbow(const EdgeColoredGraph& g, const ExperimentConfig& cfg, uint64_t pair_seed,
                                  ExperimentRow& row) {
  if (g.order() < 2) return;
  ConnectOptions opt;
  opt.max_len = cfg.max_len;
  opt.engine = Engine::exact;
  opt.node_cap = cfg.node_cap;
  opt.cc_trials = cfg.cc_trials;
  opt.seed = pair_seed;
  auto report = is_rainbow_connected(g, opt);
  row.worst_u = report.worst_u;
  row.worst_v = report.worst_v;
  row.worst_len = report.worst_len;
  row.cc_fallbacks = report.cc_fallbacks;
  if (!report.connected && row.status == "ok") {
    row.status = "counterexample";
    row.note = "no_rainbow_path max_len=" + std::to_string(cfg.max_len) + " pair=" +
               std::to_string(report.worst_u) + ":" + std::to_string(report.worst_v);
  }
}

inline void run_kconnect(const EdgeColoredGraph& g, const ExperimentConfig& cfg, uint64_t seed,
                         ExperimentRow& row) {
  if (g.order() < 2) return;
  long long all_pairs = static_cast<long long>(g.order()) * (g.order() - 1) / 2;
  for (int k : cfg.k_list) {
    KConnectOutcome outcome;
    outcome.k = k;
    Rng rng(derive_seed(seed, 0x6b636f6eULL, static_cast<uint64_t>(k)));
    std::vector<std::pair<Vertex, Vertex>> pairs;
    if (all_pairs <= cfg.pairs_per_instance) {
      for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = u + 1; v < g.order(); ++v) pairs.emplace_back(u, v);
    } else {
      std::set<std::pair<Vertex, Vertex>> chosen;
      while (static_cast<int>(chosen.size()) < cfg.pairs_per_instance) {
        Vertex u = static_cast<Vertex>(rng.below(g.order()));
        Vertex v = static_cast<Vertex>(rng.below(g.order()));
        if (u == v) continue;
        chosen.emplace(std::min(u, v), std::max(u, v));
      }
      pairs.assign(chosen.begin(), chosen.end());
    }
    outcome.attempts = static_cast<int>(pairs.size());
    std::vector<char> success(pairs.size(), 0);
    parallel_for(static_cast<int>(pairs.size()), [&](int i) {
      auto cert = rainbow_k_connect(g, pairs[i].first, pairs[i].second, k, cfg.max_len);
      if (cert) {
        if (!validate_kconnect(g, pairs[i].first, pairs[i].second, k, *cert)) {
          success[i] = 2;  // invalid certificate: an invariant breach
          return;
        }
        success[i] = 1;
      }
    });
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (success[i] == 2 && row.status == "ok") {
        row.status = "counterexample";
        row.note = "kconnect_invalid k=" + std::to_string(k) + " pair=" + std::to_string(pairs[i].first) +
                   ":" + std::to_string(pairs[i].second);
      }
      outcome.successes += success[i] == 1;
    }
    row.kconnect.push_back(outcome);
  }
}

}  // namespace detail

// One (n, sample) pipeline stage: generate, reduce, build auxiliaries, assert
// invariants, measure the worst rainbow pair, attempt k-connects. The reduced
// instance is returned through `keep` for persistence.
inline ExperimentRow run_sample(const ExperimentConfig& cfg, int n, int sample,
                                EdgeColoredGraph* keep = nullptr) {
  ExperimentRow row;
  row.family = family_name(cfg.family);
  row.n = n;
  row.gen_k = cfg.family == Family::two_clique_matchings ? cfg.gen_k : 0;
  row.sample = sample;
  row.seed = derive_seed(cfg.seed, static_cast<uint64_t>(n), static_cast<uint64_t>(sample));
  row.status = "ok";

  InstanceSpec spec;
  spec.family = cfg.family;
  spec.n = n;
  spec.k = cfg.gen_k;
  spec.seed = row.seed;
  spec.target = Threshold{n * cfg.delta_frac.num + cfg.delta_add * cfg.delta_frac.den, cfg.delta_frac.den};
  spec.palette = cfg.palette;

  auto t0 = std::chrono::steady_clock::now();
  EdgeColoredGraph raw;
  try {
    raw = generate(spec);
  } catch (const std::exception& ex) {
    row.status = "generation_error";
    row.note = ex.what();
    return row;
  }
  row.ms_generate = detail::ms_since(t0);
  row.m_raw = raw.size();

  Threshold t = cfg.family == Family::random_colored ? spec.target : Threshold{min_color_degree(raw), 1};
  t0 = std::chrono::steady_clock::now();
  auto [reduced, report] = reduce_minimal(raw, t);
  row.ms_reduce = detail::ms_since(t0);
  row.m_reduced = reduced.size();
  row.delta_c = min_color_degree(reduced);

  auto dg = build_DG(reduced);
  row.dg_min_out = reduced.order() > 0 ? min_out_degree(dg) : 0;
  std::string breach = detail::aux_invariant_breach(reduced, dg);
  if (!breach.empty()) {
    row.status = "counterexample";
    row.note = breach;
  }
  if (2LL * row.delta_c >= n) {
    row.fact22_margin = row.dg_min_out - (n / 2.0 - std::sqrt(static_cast<double>(n)));
    row.fact22_ok = exceeds_half_minus_sqrt(row.dg_min_out, n) ? 1 : 0;
    if (row.fact22_ok == 0 && row.status == "ok") {
      row.status = "counterexample";
      row.note = "fact22 dg_min_out=" + std::to_string(row.dg_min_out);
    }
  }

  t0 = std::chrono::steady_clock::now();
  detail::measure_worst_rainbow(reduced, cfg, derive_seed(row.seed, 0x70616972ULL), row);
  detail::run_kconnect(reduced, cfg, row.seed, row);
  if (cfg.check_proper && reduced.order() <= 12 && reduced.order() >= 2)
    row.proper_connected = is_properly_connected(reduced) ? 1 : 0;
  row.ms_search = detail::ms_since(t0);
  if (keep) *keep = std::move(reduced);
  return row;
}

inline std::filesystem::path instance_filename(const ExperimentRow& row) {
  std::string name = row.family + "_n" + std::to_string(row.n);
  if (row.gen_k > 0) name += "_k" + std::to_string(row.gen_k);
  name += "_s" + std::to_string(row.sample) + ".ecg";
  return std::filesystem::path("instances") / name;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_list.empty()) throw InputError("experiment needs a non-empty n list");
  if (cfg.samples < 1) throw InputError("experiment needs samples >= 1");
  if (cfg.out_dir.empty()) throw InputError("experiment needs an output directory");
  std::filesystem::create_directories(cfg.out_dir / "instances");

  struct Task {
    int n, sample;
  };
  std::vector<Task> tasks;
  for (int n : cfg.n_list)
    for (int s = 0; s < cfg.samples; ++s) tasks.push_back({n, s});

  ExperimentResult result;
  result.rows.resize(tasks.size());
  std::vector<EdgeColoredGraph> instances(tasks.size());
  parallel_for(static_cast<int>(tasks.size()),
               [&](int i) { result.rows[i] = run_sample(cfg, tasks[i].n, tasks[i].sample, &instances[i]); });

  std::ostringstream csv;
  csv << "# rainbow experiment report, schema v1\n";
  csv << "# config: family=" << family_name(cfg.family) << " samples=" << cfg.samples << " seed=" << cfg.seed
      << " max_len=" << cfg.max_len << " delta=" << to_string(cfg.delta_frac) << "n+" << cfg.delta_add << "\n";
  csv << experiment_csv_header() << '\n';
  for (size_t i = 0; i < result.rows.size(); ++i) {
    auto& row = result.rows[i];
    if (row.status != "generation_error") {
      row.instance = instance_filename(row).string();
      write_graph_file(cfg.out_dir / row.instance, instances[i]);
    }
    result.counterexamples += row.status == "counterexample";
    csv << csv_line(row) << '\n';
  }
  for (const auto& row : result.rows)
    csv << "# t " << row.family << " n=" << row.n << " s=" << row.sample << " gen=" << detail::fixed4(row.ms_generate)
        << "ms reduce=" << detail::fixed4(row.ms_reduce) << "ms search=" << detail::fixed4(row.ms_search) << "ms\n";

  result.csv = csv.str();
  result.csv_path = cfg.out_dir / "report.csv";
  std::ofstream out(result.csv_path);
  if (!out) throw InputError("cannot write " + result.csv_path.string());
  out << result.csv;
  return result;
}

// Re-runs the module invariants on one persisted instance. Returns true when
// no breach was found; diagnostics go to `log`.
inline bool validate_instance(const std::filesystem::path& path, std::ostream& log) {
  EdgeColoredGraph g;
  try {
    g = read_graph_file(path);
  } catch (const ParseError& ex) {
    log << "PARSE-ERROR " << ex.what() << '\n';
    return false;
  } catch (const std::exception& ex) {
    log << "ERROR " << ex.what() << '\n';
    return false;
  }
  bool ok = true;
  auto check = [&](bool condition, const std::string& name) {
    log << (condition ? "OK " : "BREACH ") << name << '\n';
    ok = ok && condition;
  };

  {
    std::ostringstream first, second;
    write_graph(first, g);
    std::istringstream back(first.str());
    write_graph(second, read_graph(back));
    check(first.str() == second.str(), "canonical round-trip");
  }
  {
    bool degree_bound = true;
    for (Vertex v = 0; v < g.order(); ++v) degree_bound = degree_bound && color_degree(g, v) <= g.degree(v);
    check(degree_bound, "color_degree <= degree");
  }
  {
    long long total = 0;
    bool star = true;
    for (Color c : g.colors()) {
      auto view = color_class(g, c);
      total += static_cast<long long>(view.edges.size());
      star = star && is_star_forest(view);
    }
    check(total == g.size(), "color classes partition E");
    log << "info star_forest_classes " << (star ? 1 : 0) << '\n';
  }
  if (g.order() > 0) {
    auto dg = build_DG(g);
    auto breach = detail::aux_invariant_breach(g, dg);
    check(breach.empty(), breach.empty() ? "auxiliary digraph invariants" : "auxiliary digraph invariants (" + breach + ")");
    int delta = min_color_degree(g);
    log << "info delta_c " << delta << '\n';
    if (2LL * delta >= g.order())
      check(exceeds_half_minus_sqrt(min_out_degree(dg), g.order()), "fact: min out-degree > n/2 - sqrt(n)");
  }
  {
    auto cert = find_rainbow_spanning_tree(g);
    if (cert) check(validate_tree_certificate(g, *cert), "rainbow spanning tree certificate");
    std::vector<char> none(g.color_count(), 0);
    bool connected = g.order() > 0 && component_count(g, none) == 1;
    if (connected && g.order() <= 8 && g.color_count() <= 8)
      check(criterion_oracle(g) == cert.has_value(), "spanning tree criterion agreement");
  }
  if (g.order() >= 2 && g.order() <= 10) {
    bool agree = true;
    int checked = 0;
    for (Vertex u = 0; u < g.order() && checked < 5; ++u)
      for (Vertex v = u + 1; v < g.order() && checked < 5; ++v, ++checked) {
        auto cert = find_rainbow_path_exact(g, u, v, 4);
        if (cert && !validate_certificate(g, *cert)) agree = false;
      }
    check(agree, "rainbow search certificates validate");
  }
  return ok;
}

// Re-derives the breach stated in a counterexample row from its instance.
inline bool recheck_counterexample(const ExperimentRow& row, int max_len, const EdgeColoredGraph& g) {
  if (row.note.rfind("no_rainbow_path", 0) == 0) {
    auto pos = row.note.rfind("pair=");
    if (pos == std::string::npos) return false;
    int u = 0, v = 0;
    if (std::sscanf(row.note.c_str() + pos, "pair=%d:%d", &u, &v) != 2) return false;
    return !find_rainbow_path_exact(g, u, v, max_len).has_value();
  }
  if (row.note.rfind("fact22", 0) == 0)
    return !exceeds_half_minus_sqrt(min_out_degree(build_DG(g)), g.order());
  return !detail::aux_invariant_breach(g, build_DG(g)).empty();
}

}  // namespace rainbow
