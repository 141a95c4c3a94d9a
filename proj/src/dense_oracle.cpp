#include "arb/dense_oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>

#include "arb/errors.hpp"

namespace arb {

namespace {

Eigen::MatrixXd dense_norm_adjacency(const Graph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.n_nodes());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < graph.n_nodes(); ++i)
    for (std::size_t k = graph.row_ptr()[i]; k < graph.row_ptr()[i + 1]; ++k)
      a(static_cast<Eigen::Index>(i), graph.col_idx()[k]) = graph.values()[k];
  return a;
}

FeatureMatrix from_eigen(const Eigen::MatrixXd& m) {
  FeatureMatrix x(static_cast<std::size_t>(m.rows()),
                  static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index f = 0; f < m.cols(); ++f)
      x.at(static_cast<std::size_t>(i), static_cast<std::size_t>(f)) = m(i, f);
  return x;
}

void check_dense_limit(std::size_t n, std::size_t limit) {
  if (n > limit)
    throw CapabilityError("dense oracle limited to " + std::to_string(limit) +
                          " nodes, got " + std::to_string(n));
}

}  // namespace

FeatureMatrix solve_steady_state(const Graph& graph, const FeatureMatrix& z,
                                 const KnownSet& known, double eta,
                                 double theta, std::size_t dense_limit) {
  check_dense_limit(graph.n_nodes(), dense_limit);
  if (eta <= 0.0) throw InputError("solve_steady_state: eta must be > 0");
  if (theta < 0.0) throw InputError("solve_steady_state: theta must be >= 0");
  if (z.n_nodes() != graph.n_nodes())
    throw InputError("solve_steady_state: shape mismatch");

  const auto n = static_cast<Eigen::Index>(graph.n_nodes());
  const double nn = static_cast<double>(graph.n_nodes());

  Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(n, n) - dense_norm_adjacency(graph);
  if (theta > 0.0) {
    system += theta * (nn / (nn - 1.0)) * Eigen::MatrixXd::Identity(n, n);
    system -= (theta / (nn - 1.0)) * Eigen::MatrixXd::Ones(n, n);
  }
  for (NodeId v : known.known()) system(v, v) += eta;

  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, z.n_features());
  for (NodeId v : known.known())
    for (std::size_t f = 0; f < z.n_features(); ++f)
      rhs(v, static_cast<Eigen::Index>(f)) = eta * z.at(v, f);

  Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
  if (ldlt.info() != Eigen::Success)
    throw NumericError("solve_steady_state: factorization failed");
  Eigen::MatrixXd x = ldlt.solve(rhs);

  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  const double residual = (system * x - rhs).cwiseAbs().maxCoeff() / scale;
  if (!(residual <= 1e-8))
    throw NumericError("solve_steady_state: residual " +
                       std::to_string(residual) + " exceeds 1e-8");
  return from_eigen(x);
}

FeatureMatrix solve_pinned_alpha(const Graph& graph, const FeatureMatrix& z,
                                 const KnownSet& known, double alpha,
                                 std::size_t dense_limit) {
  check_dense_limit(graph.n_nodes(), dense_limit);
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InputError("solve_pinned: alpha must lie in (0,1]");
  if (z.n_nodes() != graph.n_nodes())
    throw InputError("solve_pinned: shape mismatch");

  const std::size_t n = graph.n_nodes();
  const auto unknown = known.unknown();
  const auto u = static_cast<Eigen::Index>(unknown.size());

  FeatureMatrix out(n, z.n_features());
  for (NodeId v : known.known())
    for (std::size_t f = 0; f < z.n_features(); ++f)
      out.at(v, f) = z.at(v, f);
  if (unknown.empty()) return out;

  // B = alpha*A_norm + (1-alpha)*(1/N)*J; solve (I - B_uu) X_u = B_uk Z_k.
  Eigen::MatrixXd b = alpha * dense_norm_adjacency(graph);
  if (alpha < 1.0)
    b += ((1.0 - alpha) / static_cast<double>(n)) *
         Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(n),
                               static_cast<Eigen::Index>(n));

  Eigen::MatrixXd system(u, u);
  for (Eigen::Index r = 0; r < u; ++r)
    for (Eigen::Index c = 0; c < u; ++c)
      system(r, c) = (r == c ? 1.0 : 0.0) - b(unknown[r], unknown[c]);

  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(u, z.n_features());
  for (Eigen::Index r = 0; r < u; ++r)
    for (NodeId k : known.known())
      for (std::size_t f = 0; f < z.n_features(); ++f)
        rhs(r, static_cast<Eigen::Index>(f)) += b(unknown[r], k) * z.at(k, f);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  Eigen::MatrixXd xu = lu.solve(rhs);
  const double residual = (system * xu - rhs).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-8))
    throw NumericError("solve_pinned: unknown block is singular or "
                       "ill-conditioned (residual " +
                       std::to_string(residual) + ")");

  for (Eigen::Index r = 0; r < u; ++r)
    for (std::size_t f = 0; f < z.n_features(); ++f)
      out.at(unknown[r], f) = xu(r, static_cast<Eigen::Index>(f));
  return out;
}

FeatureMatrix solve_pinned(const Graph& graph, const FeatureMatrix& z,
                           const KnownSet& known, double theta,
                           std::size_t dense_limit) {
  if (theta < 0.0) throw InputError("solve_pinned: theta must be >= 0");
  const double nn = static_cast<double>(graph.n_nodes());
  const double alpha = (nn - 1.0) / (theta * nn + nn - 1.0);
  return solve_pinned_alpha(graph, z, known, alpha, dense_limit);
}

SpectralEstimate spectral_radius(const LinearOperator& op, std::size_t n,
                                 double accuracy, std::size_t max_iters,
                                 std::size_t dense_limit) {
  check_dense_limit(n, dense_limit);
  if (n == 0) throw InputError("spectral_radius: empty operator");

  std::mt19937_64 rng(0x5eed5eedULL);
  std::vector<double> x(n), y(n);
  for (double& v : x)
    v = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : x) v /= norm;

  SpectralEstimate est;
  double prev = -1.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    op(x.data(), y.data());
    double ynorm = 0.0;
    for (double v : y) ynorm += v * v;
    ynorm = std::sqrt(ynorm);
    est.value = ynorm;
    est.iterations = it + 1;
    if (ynorm == 0.0) {  // operator annihilated the iterate
      est.converged = true;
      return est;
    }
    if (it > 0 && std::fabs(est.value - prev) <= accuracy) {
      est.converged = true;
      return est;
    }
    prev = est.value;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ynorm;
  }
  est.converged = false;
  return est;
}

LinearOperator make_update_operator(const Graph& graph, const KnownSet& known,
                                    double alpha, double beta) {
  const std::size_t n = graph.n_nodes();
  // beta == 1 selects the hard reset, whose homogeneous part zeroes
  // known entries entirely.
  const double reset_scale = (beta == 1.0) ? 0.0 : beta;
  return [&graph, &known, alpha, reset_scale, n](const double* in,
                                                 double* out) {
    FeatureMatrix x(n, 1);
    for (std::size_t i = 0; i < n; ++i) x.at(i, 0) = in[i];
    FeatureMatrix t = propagate(graph, x);
    double mean = 0.0;
    if (alpha < 1.0) {
      for (std::size_t i = 0; i < n; ++i) mean += in[i];
      mean /= static_cast<double>(n);
    }
    for (std::size_t i = 0; i < n; ++i)
      out[i] = alpha * t.at(i, 0) + (1.0 - alpha) * mean;
    for (NodeId v : known.known()) out[v] *= reset_scale;
  };
}

}  // namespace arb
