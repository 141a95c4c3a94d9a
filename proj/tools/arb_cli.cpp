#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "arb/errors.hpp"
#include "arb/experiment.hpp"
#include "arb/graph.hpp"
#include "arb/io.hpp"
#include "arb/metrics.hpp"
#include "arb/parallel.hpp"
#include "arb/propagation.hpp"
#include "arb/rng.hpp"

namespace {

using namespace arb;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;

struct RunConfig {
  std::string engine = "arb";
  double alpha = 0.9;
  double beta = 0.7;
  std::size_t iters = 40;
  double tol = 1e-7;
  std::uint64_t seed = 0;
  std::string graph_path;
  std::string features_path;
  std::string labels_path;
  std::string known_path;
  std::string out_path;
  std::vector<std::size_t> k_list = {10, 20, 50};
  std::vector<double> rates = {0.4, 0.6, 0.9};
  double known_fraction = 0.4;
  unsigned threads = 0;
  bool all_unknown = false;
  bool inject_truth = false;
};

ArbConfig engine_config(const RunConfig& cfg) {
  if (cfg.engine == "fp" && (cfg.alpha != 1.0 || cfg.beta != 1.0))
    std::cerr << "warning: engine=fp ignores --alpha/--beta\n";
  ArbConfig c;
  c.alpha = cfg.alpha;
  c.beta = cfg.beta;
  c.max_iters = cfg.iters;
  c.tolerance = cfg.tol;
  return c;
}

Graph load_graph(const RunConfig& cfg) {
  auto [n, edges] = io::load_edge_list(cfg.graph_path);
  return Graph::build(n, edges);
}

bool looks_binary(const FeatureMatrix& x) {
  for (double v : x.data())
    if (v != 0.0 && v != 1.0) return false;
  return true;
}

KnownSet known_from_file(const std::string& path, std::size_t n) {
  std::vector<int> raw = io::load_labels(path);
  std::vector<NodeId> ids(raw.begin(), raw.end());
  return KnownSet(n, std::move(ids));
}

void apply_threads(const RunConfig& cfg) {
  unsigned threads = cfg.threads;
  if (threads == 0) {
    if (const char* env = std::getenv("ARB_THREADS"))
      threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (threads > 0) set_threads(threads);
}

void print_report(std::ostream& os, const EvalReport& report) {
  os.precision(10);
  for (const auto& [key, value] : report_entries(report))
    os << key << ' ' << value << '\n';
}

int cmd_reconstruct(const RunConfig& cfg) {
  const Graph graph = load_graph(cfg);
  const FeatureMatrix z = io::load_feature_matrix(cfg.features_path);

  KnownSet known = [&] {
    if (!cfg.known_path.empty())
      return known_from_file(cfg.known_path, graph.n_nodes());
    SplitSpec spec{cfg.seed, cfg.known_fraction, {1, 5}};
    return make_split(graph.n_nodes(), spec).known;
  }();

  const FeatureMatrix masked = mask_features(z, known);
  const auto start = std::chrono::steady_clock::now();
  const auto result = run_engine_by_name(parse_engine(cfg.engine), graph,
                                         masked, known, engine_config(cfg));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (!cfg.out_path.empty()) io::save_features(cfg.out_path, result.features);
  std::cout << "engine " << cfg.engine << '\n'
            << "iterations_run " << result.iterations_run << '\n'
            << "final_delta " << result.final_delta << '\n'
            << "converged " << (result.converged ? 1 : 0) << '\n'
            << "wall_time_s " << secs << '\n';
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  const Graph graph = load_graph(cfg);
  const FeatureMatrix z = io::load_feature_matrix(cfg.features_path);
  const bool binary = looks_binary(z);

  SplitSpec spec{cfg.seed, cfg.known_fraction, {1, 5}};
  Split split = make_split(graph.n_nodes(), spec);
  std::vector<NodeId> eval_rows =
      cfg.all_unknown ? split.known.unknown() : split.test;

  FeatureMatrix predicted = [&] {
    if (cfg.inject_truth) return z;
    const FeatureMatrix masked = mask_features(z, split.known);
    return run_engine_by_name(parse_engine(cfg.engine), graph, masked,
                              split.known, engine_config(cfg))
        .features;
  }();

  std::vector<std::size_t> k_list;
  for (std::size_t k : cfg.k_list)
    if (k <= z.n_features()) k_list.push_back(k);
  if (binary && k_list.empty())
    throw InputError("all requested k exceed the feature count");
  if (!binary)
    std::cerr << "note: continuous features, reporting rmse/corr\n";

  const EvalReport report =
      evaluate_reconstruction(predicted, z, eval_rows, k_list, binary);
  print_report(std::cout, report);
  if (!cfg.out_path.empty()) io::save_report(cfg.out_path, report);
  return 0;
}

int cmd_search(const RunConfig& cfg) {
  const Graph graph = load_graph(cfg);
  const FeatureMatrix z = io::load_feature_matrix(cfg.features_path);
  const bool binary = looks_binary(z);

  SplitSpec spec{cfg.seed, cfg.known_fraction, {1, 5}};
  Split split = make_split(graph.n_nodes(), spec);
  const FeatureMatrix masked = mask_features(z, split.known);

  const std::size_t k = std::min<std::size_t>(10, z.n_features());
  const Engine engine = parse_engine(cfg.engine);

  Objective objective = [&](double alpha, double beta) {
    ArbConfig c;
    c.alpha = alpha;
    c.beta = beta;
    c.max_iters = cfg.iters;
    c.tolerance = cfg.tol;
    const auto result =
        run_engine_by_name(engine, graph, masked, split.known, c);
    return binary ? ndcg_at_k(result.features, z, split.val, k)
                  : corr(result.features, z, split.val);
  };

  const auto [best, state] = search_hyperparams(objective);
  std::cout.precision(10);
  for (const auto& [point, score] : state.evaluations)
    std::cout << "eval alpha " << point.first << " beta " << point.second
              << " score " << score << '\n';
  std::cout << "best_alpha " << best.first << '\n'
            << "best_beta " << best.second << '\n'
            << "best_score " << state.best_score << '\n';
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    out.precision(17);
    out << "alpha " << best.first << "\nbeta " << best.second
        << "\nscore " << state.best_score << '\n';
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  const Graph graph = load_graph(cfg);
  const FeatureMatrix z = io::load_feature_matrix(cfg.features_path);

  SweepOptions options;
  options.binary_features = looks_binary(z);
  options.config = engine_config(cfg);
  options.seed = cfg.seed;
  options.k_list.clear();
  for (std::size_t k : cfg.k_list)
    if (k <= z.n_features()) options.k_list.push_back(k);

  const std::vector<Engine> engines = {Engine::kFp, Engine::kArb,
                                       Engine::kArbNoVe, Engine::kArbNoBc};
  const auto table =
      run_missing_rate_sweep(graph, z, cfg.rates, engines, options);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    os = &file;
  }
  os->precision(10);
  *os << "rate,engine,metric,value\n";
  for (const auto& cell : table) {
    if (const auto* report = std::get_if<EvalReport>(&cell.outcome)) {
      for (const auto& [key, value] : report_entries(*report))
        *os << cell.missing_rate << ',' << engine_name(cell.engine) << ','
            << key << ',' << value << '\n';
    } else {
      *os << cell.missing_rate << ',' << engine_name(cell.engine)
          << ",error," << std::get<std::string>(cell.outcome) << '\n';
    }
  }
  return 0;
}

int cmd_bench(const RunConfig& cfg, std::size_t n_nodes, std::size_t n_edges,
              std::size_t n_features) {
  Graph graph = [&] {
    if (!cfg.graph_path.empty()) return load_graph(cfg);
    Rng rng(cfg.seed);
    EdgeList edges;
    edges.reserve(n_edges);
    for (std::size_t e = 0; e < n_edges; ++e)
      edges.emplace_back(static_cast<NodeId>(rng.next_below(n_nodes)),
                         static_cast<NodeId>(rng.next_below(n_nodes)));
    return Graph::build(n_nodes, edges);
  }();

  Rng rng(cfg.seed + 1);
  FeatureMatrix z(graph.n_nodes(), n_features);
  for (double& v : z.data()) v = rng.next_double();
  std::vector<NodeId> ids;
  for (std::size_t v = 0; v < graph.n_nodes(); v += 2)
    ids.push_back(static_cast<NodeId>(v));
  KnownSet known(graph.n_nodes(), ids);

  constexpr std::size_t kBenchIters = 20;
  constexpr int kRepeats = 5;
  auto time_engine = [&](Engine engine) {
    std::vector<double> times;
    for (int r = 0; r < kRepeats; ++r) {
      ArbConfig c{cfg.alpha, cfg.beta, kBenchIters, 0.0};
      const auto start = std::chrono::steady_clock::now();
      run_engine_by_name(engine, graph, z, known, c);
      times.push_back(std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count());
    }
    std::sort(times.begin(), times.end());
    return std::pair{times[times.size() / 2],
                     times.back() - times.front()};
  };

  const double edges_per_iter = 2.0 * static_cast<double>(graph.n_edges());
  std::cout.precision(6);
  for (Engine engine : {Engine::kFp, Engine::kArb}) {
    const auto [median, spread] = time_engine(engine);
    std::cout << engine_name(engine) << "_median_s " << median << '\n'
              << engine_name(engine) << "_spread_s " << spread << '\n'
              << engine_name(engine) << "_edges_per_s "
              << edges_per_iter * kBenchIters / median << '\n';
  }
  return 0;
}

int cmd_gen(const RunConfig& cfg, std::size_t n_nodes, double mean_degree,
            double exponent, double isolated_fraction, std::size_t n_features,
            double density) {
  const auto generated = io::generate_longtail_graph(
      n_nodes, mean_degree, exponent, isolated_fraction, cfg.seed);
  const Graph& graph = generated.graph;

  const std::string prefix =
      cfg.out_path.empty() ? std::string("longtail") : cfg.out_path;
  {
    std::ofstream out(prefix + ".edges");
    out << "N " << graph.n_nodes() << '\n';
    for (std::size_t i = 0; i < graph.n_nodes(); ++i)
      for (std::size_t k = graph.row_ptr()[i]; k < graph.row_ptr()[i + 1]; ++k)
        if (graph.col_idx()[k] > i)
          out << i << ' ' << graph.col_idx()[k] << '\n';
  }
  if (n_features > 0) {
    Rng rng(cfg.seed + 17);
    FeatureMatrix z(graph.n_nodes(), n_features);
    for (double& v : z.data()) v = rng.next_double() < density ? 1.0 : 0.0;
    io::save_features(prefix + ".arbf", z);
  }
  std::cout << "nodes " << graph.n_nodes() << '\n'
            << "edges " << graph.n_edges() << '\n'
            << "isolated "
            << (generated.degree_histogram.empty()
                    ? 0
                    : generated.degree_histogram[0])
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-free reconstruction of missing node attributes"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--threads", cfg.threads,
                 "worker threads (fallback: ARB_THREADS env var)");

  auto add_common = [&](CLI::App* sub, bool needs_inputs) {
    sub->add_option("--engine", cfg.engine, "fp | arb | arb-no-ve | arb-no-bc")
        ->check(CLI::IsMember({"fp", "arb", "arb-no-ve", "arb-no-bc"}));
    sub->add_option("--alpha", cfg.alpha, "mean-term weight in (0,1]");
    sub->add_option("--beta", cfg.beta, "moving-reset weight in (0,1]");
    sub->add_option("--iters", cfg.iters, "max iterations");
    sub->add_option("--tol", cfg.tol, "relative convergence tolerance");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out_path, "output path");
    if (needs_inputs) {
      sub->add_option("--graph", cfg.graph_path, "edge-list file")->required();
      sub->add_option("--features", cfg.features_path, "feature file")
          ->required();
      sub->add_option("--labels", cfg.labels_path, "label file");
      sub->add_option("--known-fraction", cfg.known_fraction,
                      "fraction of nodes treated as known");
    }
  };

  auto* reconstruct = app.add_subcommand("reconstruct",
                                         "run an engine, write full X");
  add_common(reconstruct, true);
  reconstruct->add_option("--known", cfg.known_path,
                          "file of known node ids (overrides split)");

  auto* evaluate = app.add_subcommand("evaluate", "split, run, report metrics");
  add_common(evaluate, true);
  evaluate->add_option("--k", cfg.k_list, "ranking cutoffs");
  evaluate->add_flag("--all-unknown", cfg.all_unknown,
                     "evaluate every unknown node, not just the test split");
  evaluate->add_flag("--inject-truth", cfg.inject_truth,
                     "score the ground truth against itself (harness check)");

  auto* search = app.add_subcommand("search", "compass-search (alpha, beta)");
  add_common(search, true);

  auto* sweep = app.add_subcommand("sweep", "missing-rate sweep over engines");
  add_common(sweep, true);
  sweep->add_option("--rates", cfg.rates, "missing rates in (0,1)");
  sweep->add_option("--k", cfg.k_list, "ranking cutoffs");

  std::size_t bench_nodes = 100000, bench_edges = 1000000, bench_f = 128;
  auto* bench = app.add_subcommand("bench", "time 20 propagation iterations");
  add_common(bench, false);
  bench->add_option("--graph", cfg.graph_path, "edge-list file (optional)");
  bench->add_option("--nodes", bench_nodes, "synthetic graph nodes");
  bench->add_option("--edges", bench_edges, "synthetic graph edges");
  bench->add_option("--feature-dim", bench_f, "feature columns");

  std::size_t gen_nodes = 1000, gen_f = 0;
  double gen_mean = 4.0, gen_exp = 2.5, gen_iso = 0.1, gen_density = 0.1;
  auto* gen = app.add_subcommand("gen", "generate a long-tail synthetic graph");
  add_common(gen, false);
  gen->add_option("--nodes", gen_nodes, "node count");
  gen->add_option("--mean-degree", gen_mean, "target mean degree");
  gen->add_option("--exponent", gen_exp, "power-law exponent (> 1)");
  gen->add_option("--isolated-fraction", gen_iso, "forced isolated fraction");
  gen->add_option("--feature-dim", gen_f, "also emit binary features");
  gen->add_option("--density", gen_density, "feature one-density");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the diagnostic
    return kExitUsage;
  }

  try {
    apply_threads(cfg);
    if (reconstruct->parsed()) return cmd_reconstruct(cfg);
    if (evaluate->parsed()) return cmd_evaluate(cfg);
    if (search->parsed()) return cmd_search(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (bench->parsed())
      return cmd_bench(cfg, bench_nodes, bench_edges, bench_f);
    if (gen->parsed())
      return cmd_gen(cfg, gen_nodes, gen_mean, gen_exp, gen_iso, gen_f,
                     gen_density);
  } catch (const arb::ParseError& err) {
    std::cerr << "parse error: " << err.what() << '\n';
    return kExitParse;
  } catch (const arb::NumericError& err) {
    std::cerr << "numeric error: " << err.what() << '\n';
    return kExitNumeric;
  } catch (const arb::CapabilityError& err) {
    std::cerr << "numeric error: " << err.what() << '\n';
    return kExitNumeric;
  } catch (const arb::InputError& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
