#pragma once

#include <cstddef>
#include <functional>

#include "arb/graph.hpp"
#include "arb/matrix.hpp"

namespace arb {

inline constexpr std::size_t kDefaultDenseLimit = 2000;

// Steady-state solve of the penalized system
//   (L + eta*S + theta*L1) X = eta * Zt
// where L = I - A_norm, S selects known rows, L1 = (N/(N-1))I - (1/(N-1))J
// and Zt carries Z on known rows and 0 elsewhere. Direct dense SPD solve.
FeatureMatrix solve_steady_state(const Graph& graph, const FeatureMatrix& z,
                                 const KnownSet& known, double eta,
                                 double theta,
                                 std::size_t dense_limit = kDefaultDenseLimit);

// Hard-constraint variant: known rows pinned to Z exactly, unknown rows
// solve the unknown block of X = alpha*A_norm*X + (1-alpha)*mean(X),
// with alpha = (N-1)/(theta*N + N - 1) (theta = 0 gives the harmonic
// extension, i.e. the FP limit).
FeatureMatrix solve_pinned(const Graph& graph, const FeatureMatrix& z,
                           const KnownSet& known, double theta,
                           std::size_t dense_limit = kDefaultDenseLimit);

// Same solve parameterized directly by alpha in (0,1].
FeatureMatrix solve_pinned_alpha(const Graph& graph, const FeatureMatrix& z,
                                 const KnownSet& known, double alpha,
                                 std::size_t dense_limit = kDefaultDenseLimit);

// Linear operator acting on a length-n vector, out = M * in.
using LinearOperator = std::function<void(const double* in, double* out)>;

struct SpectralEstimate {
  double value = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

// Power-iteration estimate of the spectral radius of a nonnegative linear
// map; deterministic seeded start vector, capped at max_iters.
SpectralEstimate spectral_radius(const LinearOperator& op, std::size_t n,
                                 double accuracy = 1e-6,
                                 std::size_t max_iters = 10000,
                                 std::size_t dense_limit = kDefaultDenseLimit);

// The homogeneous part of one full engine step acting on a single feature
// column: t = alpha*A_norm*x + (1-alpha)*mean(x), then scale known entries
// by beta. Its spectral radius governs the iteration's contraction.
LinearOperator make_update_operator(const Graph& graph, const KnownSet& known,
                                    double alpha, double beta);

}  // namespace arb
