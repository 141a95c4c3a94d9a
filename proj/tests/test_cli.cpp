#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "arb/io.hpp"
#include "arb/matrix.hpp"
#include "arb/rng.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("arb_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path file(const std::string& name) const { return path / name; }
};

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const TempDir& dir, const std::string& args) {
  const fs::path out = dir.file("cli_output.txt");
  const std::string command = std::string(ARB_CLI_PATH) + " " + args + " > " +
                              out.string() + " 2>&1";
  const int status = std::system(command.c_str());
  std::ifstream in(out);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buffer.str()};
}

void write_fixture(const TempDir& dir) {
  std::ofstream edges(dir.file("g.edges"));
  edges << "N 30\n";
  for (int v = 1; v < 25; ++v) edges << (v - 1) << ' ' << v << '\n';
  edges << "0 24\n3 17\n";  // nodes 25..29 isolated
  edges.close();

  arb::Rng rng(15);
  arb::FeatureMatrix z(30, 16);
  for (double& v : z.data()) v = rng.next_double() < 0.3 ? 1.0 : 0.0;
  arb::io::save_features(dir.file("z.arbf"), z);
}

}  // namespace

TEST_CASE("help lists the subcommands; unknown flag exits 1") {
  TempDir dir;
  const auto help = run_cli(dir, "--help");
  CHECK(help.exit_code == 0);
  for (const char* name :
       {"reconstruct", "evaluate", "search", "sweep", "bench", "gen"})
    CHECK(help.output.find(name) != std::string::npos);

  const auto bad = run_cli(dir, "reconstruct --no-such-flag");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("reconstruct writes features and a summary") {
  TempDir dir;
  write_fixture(dir);
  const auto result = run_cli(
      dir, "reconstruct --graph " + dir.file("g.edges").string() +
               " --features " + dir.file("z.arbf").string() +
               " --engine arb --alpha 0.9 --beta 0.7 --iters 200 --tol 1e-9" +
               " --seed 3 --out " + dir.file("x.arbf").string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("iterations_run") != std::string::npos);
  CHECK(result.output.find("final_delta") != std::string::npos);
  const arb::FeatureMatrix x =
      arb::io::load_feature_matrix(dir.file("x.arbf"));
  CHECK(x.n_nodes() == 30);
  CHECK(x.n_features() == 16);
}

TEST_CASE("arb at alpha=beta=1 reproduces the fp output") {
  TempDir dir;
  write_fixture(dir);
  const std::string common =
      " --graph " + dir.file("g.edges").string() + " --features " +
      dir.file("z.arbf").string() + " --iters 50 --tol 0 --seed 5 --out ";
  CHECK(run_cli(dir, "reconstruct --engine fp" + common +
                         dir.file("fp.arbf").string())
            .exit_code == 0);
  CHECK(run_cli(dir, "reconstruct --engine arb --alpha 1 --beta 1" + common +
                         dir.file("arb.arbf").string())
            .exit_code == 0);
  const auto fp = arb::io::load_feature_matrix(dir.file("fp.arbf"));
  const auto arb_x = arb::io::load_feature_matrix(dir.file("arb.arbf"));
  CHECK(arb::max_abs_diff(fp, arb_x) <= 1e-12);
}

TEST_CASE("missing features path exits 2 with the path in the message") {
  TempDir dir;
  write_fixture(dir);
  const auto result = run_cli(
      dir, "reconstruct --graph " + dir.file("g.edges").string() +
               " --features " + dir.file("nope.arbf").string());
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("nope.arbf") != std::string::npos);
}

TEST_CASE("evaluate injection mode scores truth against itself") {
  TempDir dir;
  write_fixture(dir);
  const auto result = run_cli(
      dir, "evaluate --graph " + dir.file("g.edges").string() +
               " --features " + dir.file("z.arbf").string() +
               " --inject-truth --k 16 --seed 11");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("recall@16 1\n") != std::string::npos);
}

TEST_CASE("evaluate is deterministic for a fixed seed") {
  TempDir dir;
  write_fixture(dir);
  const std::string args =
      "evaluate --graph " + dir.file("g.edges").string() + " --features " +
      dir.file("z.arbf").string() +
      " --engine arb --alpha 0.9 --beta 0.5 --iters 100 --k 5 10 --seed 21";
  const auto a = run_cli(dir, args);
  const auto b = run_cli(dir, args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("search prints a trajectory and a best point") {
  TempDir dir;
  write_fixture(dir);
  const auto result = run_cli(
      dir, "search --graph " + dir.file("g.edges").string() + " --features " +
               dir.file("z.arbf").string() +
               " --iters 60 --seed 2 --out " + dir.file("best.txt").string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("best_alpha") != std::string::npos);
  CHECK(fs::exists(dir.file("best.txt")));
}

TEST_CASE("sweep emits a csv table over rates and engines") {
  TempDir dir;
  write_fixture(dir);
  const auto result = run_cli(
      dir, "sweep --graph " + dir.file("g.edges").string() + " --features " +
               dir.file("z.arbf").string() +
               " --rates 0.4 0.8 --k 5 --iters 100 --seed 9");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("rate,engine,metric,value") != std::string::npos);
  CHECK(result.output.find("0.4,fp,recall@5") != std::string::npos);
  CHECK(result.output.find("0.8,arb-no-bc,recall@5") != std::string::npos);
}

TEST_CASE("bench reports medians on a tiny synthetic graph") {
  TempDir dir;
  const auto result =
      run_cli(dir, "bench --nodes 200 --edges 600 --feature-dim 8 --seed 1");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("fp_median_s") != std::string::npos);
  CHECK(result.output.find("arb_median_s") != std::string::npos);
  CHECK(result.output.find("arb_edges_per_s") != std::string::npos);
}

TEST_CASE("gen writes an edge list and features") {
  TempDir dir;
  const auto result = run_cli(
      dir, "gen --nodes 120 --mean-degree 3 --isolated-fraction 0.1 "
           "--feature-dim 12 --seed 4 --out " + dir.file("lt").string());
  CHECK(result.exit_code == 0);
  const auto [n, edges] = arb::io::load_edge_list(dir.file("lt.edges"));
  CHECK(n == 120);
  CHECK(!edges.empty());
  const auto z = arb::io::load_feature_matrix(dir.file("lt.arbf"));
  CHECK(z.n_nodes() == 120);
  CHECK(z.n_features() == 12);
}
