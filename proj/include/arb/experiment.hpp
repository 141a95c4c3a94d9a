#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "arb/graph.hpp"
#include "arb/matrix.hpp"
#include "arb/metrics.hpp"
#include "arb/propagation.hpp"

namespace arb {

struct SplitSpec {
  std::uint64_t seed = 0;
  double known_fraction = 0.4;
  // target (unknown) nodes are split val:test at this ratio
  std::pair<unsigned, unsigned> val_test_ratio = {1, 5};
};

struct Split {
  KnownSet known;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
};

// Uniformly random known set of size round(known_fraction * N) (at least 1);
// remaining nodes split val:test per the spec ratio. Deterministic per seed.
Split make_split(std::size_t n_nodes, const SplitSpec& spec);

// Z with unknown rows zeroed.
FeatureMatrix mask_features(const FeatureMatrix& z, const KnownSet& known);

struct SearchState {
  std::pair<double, double> center{0.5, 0.5};
  double step = 0.25;
  double best_score = 0.0;
  std::vector<std::pair<std::pair<double, double>, double>> evaluations;
};

using Objective = std::function<double(double alpha, double beta)>;

// Compass search over (alpha, beta): from (0.5, 0.5), probe the 8 axis and
// diagonal neighbors at Chebyshev distance d (clamped into (0,1]), move to
// the best strictly improving neighbor, halve d when none improves; stop
// when d < min_step or the evaluation budget is spent. Higher is better;
// non-finite objective values count as -inf. Returns the argmax over all
// evaluated points.
std::pair<std::pair<double, double>, SearchState> search_hyperparams(
    const Objective& objective, double initial_step = 0.25,
    double min_step = 1.0 / 64.0, std::size_t max_evals = 200);

// Stratified k-fold CV accuracy of a multinomial logistic-regression
// classifier trained by full-batch gradient descent (downstream proxy).
double train_linear_classifier(const FeatureMatrix& features,
                               const std::vector<NodeId>& rows,
                               const std::vector<int>& labels,
                               std::size_t folds = 5, std::uint64_t seed = 0);

enum class Engine { kFp, kArb, kArbNoVe, kArbNoBc };

std::string engine_name(Engine e);
Engine parse_engine(const std::string& name);

struct SweepCell {
  double missing_rate = 0.0;
  Engine engine = Engine::kFp;
  std::variant<EvalReport, std::string> outcome;  // report or error message
};

struct SweepOptions {
  std::vector<std::size_t> k_list = {10, 20, 50};
  bool binary_features = true;
  ArbConfig config;  // alpha/beta/iters/tol used by the ARB-family engines
  std::uint64_t seed = 0;
};

// For each missing rate r, splits with known_fraction = 1 - r, runs each
// engine on the identical split and evaluates on the test partition.
// Per-cell failures are recorded in the cell, not thrown.
std::vector<SweepCell> run_missing_rate_sweep(const Graph& graph,
                                              const FeatureMatrix& z,
                                              const std::vector<double>& rates,
                                              const std::vector<Engine>& engines,
                                              const SweepOptions& options);

// Runs one engine on pre-masked inputs (shared by sweep and the CLI).
ReconstructionResult run_engine_by_name(Engine engine, const Graph& graph,
                                        const FeatureMatrix& z,
                                        const KnownSet& known,
                                        const ArbConfig& config);

// Metric evaluation over the given rows; ranking metrics for binary
// features, RMSE/CORR for continuous ones.
EvalReport evaluate_reconstruction(const FeatureMatrix& predicted,
                                   const FeatureMatrix& truth,
                                   const std::vector<NodeId>& rows,
                                   const std::vector<std::size_t>& k_list,
                                   bool binary_features);

}  // namespace arb
