#pragma once

#include <cstddef>
#include <vector>

namespace arb {

// Dense row-major N x F matrix of doubles. Holds node feature blocks
// (the initial attributes Z and the reconstructed iterates X).
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t n_nodes, std::size_t n_features)
      : n_nodes_(n_nodes),
        n_features_(n_features),
        values_(n_nodes * n_features, 0.0) {}

  std::size_t n_nodes() const { return n_nodes_; }
  std::size_t n_features() const { return n_features_; }

  double& at(std::size_t node, std::size_t feat) {
    return values_[node * n_features_ + feat];
  }
  double at(std::size_t node, std::size_t feat) const {
    return values_[node * n_features_ + feat];
  }

  double* row(std::size_t node) { return values_.data() + node * n_features_; }
  const double* row(std::size_t node) const {
    return values_.data() + node * n_features_;
  }

  std::vector<double>& data() { return values_; }
  const std::vector<double>& data() const { return values_; }

  bool all_finite() const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t n_nodes_ = 0;
  std::size_t n_features_ = 0;
  std::vector<double> values_;
};

// Column means: entry f is (1/N) * sum_i x[i][f].
std::vector<double> column_means(const FeatureMatrix& x);

// Largest absolute entrywise difference; matrices must share a shape.
double max_abs_diff(const FeatureMatrix& a, const FeatureMatrix& b);

// Frobenius norm.
double frobenius_norm(const FeatureMatrix& x);

}  // namespace arb
