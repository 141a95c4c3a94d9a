#pragma once

#include <cstddef>
#include <functional>

#include "arb/graph.hpp"
#include "arb/matrix.hpp"

namespace arb {

// Iteration controls. alpha, beta in (0,1]; exactly 1 selects the
// degenerate form (alpha=1 drops the mean term, beta=1 hard-resets
// known rows, so alpha=beta=1 is plain feature propagation).
struct ArbConfig {
  double alpha = 0.9;
  double beta = 0.7;
  std::size_t max_iters = 40;
  double tolerance = 1e-7;  // relative Frobenius change; 0 disables early exit
};

struct ReconstructionResult {
  FeatureMatrix features;
  std::size_t iterations_run = 0;
  double final_delta = 0.0;
  bool converged = false;
};

// Called after each full engine step with (iteration index, current X).
using IterationObserver =
    std::function<void(std::size_t, const FeatureMatrix&)>;

// Baseline feature propagation: X <- A_norm X, then hard reset of known rows.
ReconstructionResult run_fp(const Graph& graph, const FeatureMatrix& z,
                            const KnownSet& known, std::size_t max_iters,
                            double tolerance,
                            const IterationObserver& observer = {});

// Full update: X <- alpha*A_norm*X + (1-alpha)*mean row, then moving reset
// of known rows X_k <- beta*X_k + (1-beta)*Z_k.
ReconstructionResult run_arb(const Graph& graph, const FeatureMatrix& z,
                             const KnownSet& known, const ArbConfig& config,
                             const IterationObserver& observer = {});

// Moving reset without the mean term (alpha fixed to 1).
ReconstructionResult run_boundary_only(const Graph& graph,
                                       const FeatureMatrix& z,
                                       const KnownSet& known, double beta,
                                       std::size_t max_iters, double tolerance,
                                       const IterationObserver& observer = {});

// Mean term with a hard reset of known rows (beta fixed to 1).
ReconstructionResult run_virtual_only(const Graph& graph,
                                      const FeatureMatrix& z,
                                      const KnownSet& known, double alpha,
                                      std::size_t max_iters, double tolerance,
                                      const IterationObserver& observer = {});

struct PenaltyWeights {
  double eta;
  double theta;
};

// Maps (alpha, beta) in (0,1)^2 to the equivalent penalty weights:
// theta = (N-1)(1-alpha)/(alpha*N), eta = (1-beta)/(alpha*beta).
// alpha or beta of exactly 1 has no finite image and is rejected.
PenaltyWeights map_alpha_beta(double alpha, double beta, std::size_t n_nodes);

}  // namespace arb
