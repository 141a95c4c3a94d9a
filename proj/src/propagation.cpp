#include "arb/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "arb/errors.hpp"

namespace arb {

namespace {

void validate_unit_interval(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0))
    throw InputError(std::string(name) + " must lie in (0,1], got " +
                     std::to_string(v));
}

double relative_frobenius_change(const FeatureMatrix& next,
                                 const FeatureMatrix& prev) {
  double diff = 0.0, base = 0.0;
  const auto& a = next.data();
  const auto& b = prev.data();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    diff += d * d;
    base += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max(std::sqrt(base), 1.0);
}

// Shared engine: alpha==1 drops the mean term, beta==1 hard-resets.
ReconstructionResult run_engine(const Graph& graph, const FeatureMatrix& z,
                                const KnownSet& known, double alpha,
                                double beta, std::size_t max_iters,
                                double tolerance,
                                const IterationObserver& observer) {
  validate_unit_interval(alpha, "alpha");
  validate_unit_interval(beta, "beta");
  if (max_iters < 1) throw InputError("max_iters must be >= 1");
  if (tolerance < 0.0) throw InputError("tolerance must be nonnegative");
  if (z.n_nodes() != graph.n_nodes())
    throw InputError("feature rows != graph nodes");
  if (known.n_nodes() != graph.n_nodes())
    throw InputError("known-set size != graph nodes");
  if (known.n_known() == 0) throw InputError("known set is empty");

  const std::size_t f = z.n_features();

  FeatureMatrix x(graph.n_nodes(), f);
  for (NodeId v : known.known())
    std::copy(z.row(v), z.row(v) + f, x.row(v));

  FeatureMatrix next(graph.n_nodes(), f);
  ReconstructionResult result;

  for (std::size_t it = 0; it < max_iters; ++it) {
    if (alpha < 1.0) {
      std::vector<double> bias = column_means(x);
      for (double& v : bias) v *= 1.0 - alpha;
      propagate_affine(graph, x, next, alpha, &bias);
    } else {
      propagate(graph, x, next);
    }

    for (NodeId v : known.known()) {
      double* row = next.row(v);
      const double* zr = z.row(v);
      if (beta == 1.0) {
        std::copy(zr, zr + f, row);
      } else {
        for (std::size_t c = 0; c < f; ++c)
          row[c] = beta * row[c] + (1.0 - beta) * zr[c];
      }
    }

    // With early exit disabled the change norm is only reported, so one
    // evaluation on the final iterate suffices.
    if (tolerance > 0.0 || it + 1 == max_iters)
      result.final_delta = relative_frobenius_change(next, x);
    std::swap(x, next);
    result.iterations_run = it + 1;
    if (observer) observer(it + 1, x);
    if (tolerance > 0.0 && result.final_delta <= tolerance) {
      result.converged = true;
      break;
    }
  }

  if (!x.all_finite())
    throw NumericError("iteration produced non-finite values");
  result.features = std::move(x);
  return result;
}

}  // namespace

ReconstructionResult run_fp(const Graph& graph, const FeatureMatrix& z,
                            const KnownSet& known, std::size_t max_iters,
                            double tolerance, const IterationObserver& observer) {
  return run_engine(graph, z, known, 1.0, 1.0, max_iters, tolerance, observer);
}

ReconstructionResult run_arb(const Graph& graph, const FeatureMatrix& z,
                             const KnownSet& known, const ArbConfig& config,
                             const IterationObserver& observer) {
  return run_engine(graph, z, known, config.alpha, config.beta,
                    config.max_iters, config.tolerance, observer);
}

ReconstructionResult run_boundary_only(const Graph& graph,
                                       const FeatureMatrix& z,
                                       const KnownSet& known, double beta,
                                       std::size_t max_iters, double tolerance,
                                       const IterationObserver& observer) {
  return run_engine(graph, z, known, 1.0, beta, max_iters, tolerance, observer);
}

ReconstructionResult run_virtual_only(const Graph& graph,
                                      const FeatureMatrix& z,
                                      const KnownSet& known, double alpha,
                                      std::size_t max_iters, double tolerance,
                                      const IterationObserver& observer) {
  return run_engine(graph, z, known, alpha, 1.0, max_iters, tolerance,
                    observer);
}

PenaltyWeights map_alpha_beta(double alpha, double beta, std::size_t n_nodes) {
  if (n_nodes < 2) throw InputError("map_alpha_beta requires N >= 2");
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw InputError(
        "map_alpha_beta: degenerate, no finite (eta, theta) for alpha or "
        "beta equal to 1 (use the pinned/FP oracle variants)");
  const double n = static_cast<double>(n_nodes);
  PenaltyWeights w;
  w.theta = (n - 1.0) * (1.0 - alpha) / (alpha * n);
  w.eta = (1.0 - beta) / (alpha * beta);
  return w;
}

}  // namespace arb
