#include "arb/matrix.hpp"

#include <cmath>

#include "arb/errors.hpp"

namespace arb {

bool FeatureMatrix::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::vector<double> column_means(const FeatureMatrix& x) {
  if (x.n_nodes() == 0) throw InputError("column_means: empty matrix");
  std::vector<double> mean(x.n_features(), 0.0);
  for (std::size_t i = 0; i < x.n_nodes(); ++i) {
    const double* row = x.row(i);
    for (std::size_t f = 0; f < x.n_features(); ++f) mean[f] += row[f];
  }
  const double inv_n = 1.0 / static_cast<double>(x.n_nodes());
  for (double& m : mean) m *= inv_n;
  return mean;
}

double max_abs_diff(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.n_nodes() != b.n_nodes() || a.n_features() != b.n_features())
    throw InputError("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::fabs(a.data()[i] - b.data()[i]));
  return worst;
}

double frobenius_norm(const FeatureMatrix& x) {
  double acc = 0.0;
  for (double v : x.data()) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace arb
