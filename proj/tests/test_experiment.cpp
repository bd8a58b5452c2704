#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "rainbow/experiment.hpp"

using namespace rainbow;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("rainbow_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

TEST_CASE("experiment smoke run produces one populated row") {
  ExperimentConfig cfg;
  cfg.n_list = {20};
  cfg.samples = 1;
  cfg.seed = 7;
  cfg.out_dir = fresh_dir("smoke");
  auto result = run_experiment(cfg);
  REQUIRE(result.rows.size() == 1);
  const auto& row = result.rows[0];
  CHECK(row.status == "ok");
  CHECK(row.worst_len >= 1);
  CHECK(row.delta_c >= 10);
  CHECK(fs::exists(cfg.out_dir / row.instance));
  CHECK(fs::exists(result.csv_path));
}

TEST_CASE("tournament-plus-pair sweep reports no proper connectivity") {
  ExperimentConfig cfg;
  cfg.family = Family::fm_example;
  cfg.n_list = {5, 7, 9, 11};
  cfg.samples = 1;
  cfg.check_proper = true;
  cfg.out_dir = fresh_dir("fm_sweep");
  auto result = run_experiment(cfg);
  REQUIRE(result.rows.size() == 4);
  for (const auto& row : result.rows) CHECK(row.proper_connected == 0);
}

TEST_CASE("csv bodies are byte-identical across reruns") {
  ExperimentConfig cfg;
  cfg.n_list = {10, 12};
  cfg.samples = 3;
  cfg.seed = 42;
  cfg.k_list = {2};
  cfg.pairs_per_instance = 5;
  fs::path dir_a = fresh_dir("repro_a");
  fs::path dir_b = fresh_dir("repro_b");
  cfg.out_dir = dir_a;
  auto first = run_experiment(cfg);
  cfg.out_dir = dir_b;
  auto second = run_experiment(cfg);
  CHECK(csv_data_lines(first.csv) == csv_data_lines(second.csv));
  // persisted instances match byte for byte
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (const auto& row : first.rows) CHECK(slurp(dir_a / row.instance) == slurp(dir_b / row.instance));
}

TEST_CASE("rows are recomputable from the persisted instance") {
  ExperimentConfig cfg;
  cfg.n_list = {12};
  cfg.samples = 2;
  cfg.seed = 11;
  cfg.out_dir = fresh_dir("recompute");
  auto result = run_experiment(cfg);
  auto lines = csv_data_lines(result.csv);
  REQUIRE(lines.size() == 3);  // header + 2 rows
  auto header = split_csv(lines[0]);
  auto delta_col = std::find(header.begin(), header.end(), "delta_c") - header.begin();
  auto inst_col = std::find(header.begin(), header.end(), "instance") - header.begin();
  for (size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv(lines[i]);
    auto g = read_graph_file(cfg.out_dir / fields[inst_col]);
    CHECK(std::to_string(min_color_degree(g)) == fields[delta_col]);
  }
}

TEST_CASE("missing rainbow pairs become counterexample rows that recheck") {
  // max_len = 1 turns any non-adjacent pair into a counterexample
  ExperimentConfig cfg;
  cfg.n_list = {10};
  cfg.samples = 1;
  cfg.seed = 3;
  cfg.max_len = 1;
  cfg.out_dir = fresh_dir("counterexample");
  auto result = run_experiment(cfg);
  REQUIRE(result.counterexamples == 1);
  const auto& row = result.rows[0];
  CHECK(row.status == "counterexample");
  CHECK(row.note.rfind("no_rainbow_path", 0) == 0);
  auto g = read_graph_file(cfg.out_dir / row.instance);
  CHECK(recheck_counterexample(row, cfg.max_len, g));
}

TEST_CASE("validate_instance accepts experiment output and rejects bad files") {
  ExperimentConfig cfg;
  cfg.n_list = {10};
  cfg.samples = 1;
  cfg.seed = 5;
  cfg.out_dir = fresh_dir("validate");
  auto result = run_experiment(cfg);
  std::ostringstream log;
  CHECK(validate_instance(cfg.out_dir / result.rows[0].instance, log));
  CHECK(log.str().find("BREACH") == std::string::npos);

  fs::path bad = cfg.out_dir / "bad.ecg";
  std::ofstream(bad) << "3 2\n0 1 4\n1 0 5\n";
  std::ostringstream bad_log;
  CHECK_FALSE(validate_instance(bad, bad_log));
  CHECK(bad_log.str().find("line 3") != std::string::npos);
}

TEST_CASE("kconnect outcomes land in the csv") {
  ExperimentConfig cfg;
  cfg.n_list = {12};
  cfg.samples = 1;
  cfg.seed = 9;
  cfg.delta_frac = {1, 2};
  cfg.delta_add = 2;
  cfg.k_list = {1, 2};
  cfg.pairs_per_instance = 4;
  cfg.out_dir = fresh_dir("kconnect");
  auto result = run_experiment(cfg);
  REQUIRE(result.rows.size() == 1);
  REQUIRE(result.rows[0].kconnect.size() == 2);
  CHECK(result.rows[0].kconnect[0].k == 1);
  CHECK(result.rows[0].kconnect[0].attempts == 4);
  CHECK(csv_line(result.rows[0]).find("k=2:") != std::string::npos);
}
