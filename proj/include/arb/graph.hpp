#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "arb/matrix.hpp"

namespace arb {

using NodeId = std::uint32_t;
using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

// Immutable undirected graph with the symmetrically normalized adjacency
// stored in compressed-row form. Entry (i,j) is 1/sqrt(deg(i)*deg(j));
// rows of isolated nodes are empty.
class Graph {
 public:
  static Graph build(std::size_t n_nodes, const EdgeList& edges);

  std::size_t n_nodes() const { return n_nodes_; }
  std::size_t n_edges() const { return col_idx_.size() / 2; }  // undirected
  std::size_t degree(NodeId v) const { return degree_[v]; }
  const std::vector<std::size_t>& degrees() const { return degree_; }

  // CSR buffers of the normalized adjacency.
  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<NodeId>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  // Normalized adjacency entry (i,j); 0 if the edge is absent.
  double norm_entry(NodeId i, NodeId j) const;

 private:
  Graph() = default;

  std::size_t n_nodes_ = 0;
  std::vector<std::size_t> degree_;
  std::vector<std::size_t> row_ptr_;
  std::vector<NodeId> col_idx_;
  std::vector<double> values_;
};

// Sorted set of known-attribute node indices (the complement is unknown).
class KnownSet {
 public:
  KnownSet(std::size_t n_nodes, std::vector<NodeId> known);

  std::size_t n_nodes() const { return n_nodes_; }
  const std::vector<NodeId>& known() const { return known_; }
  std::vector<NodeId> unknown() const;
  bool is_known(NodeId v) const { return mask_[v]; }
  std::size_t n_known() const { return known_.size(); }

 private:
  std::size_t n_nodes_;
  std::vector<NodeId> known_;
  std::vector<char> mask_;
};

// out = A_norm * x. Shapes must agree; out is overwritten.
void propagate(const Graph& graph, const FeatureMatrix& x, FeatureMatrix& out);

// Fused kernel: out.row(i) = bias + scale * (A_norm * x).row(i), with
// bias == nullptr meaning the zero vector. Single pass over out, so the
// iterative engines avoid a separate scale-and-blend sweep.
void propagate_affine(const Graph& graph, const FeatureMatrix& x,
                      FeatureMatrix& out, double scale,
                      const std::vector<double>* bias);

// Convenience allocating overload.
FeatureMatrix propagate(const Graph& graph, const FeatureMatrix& x);

}  // namespace arb
