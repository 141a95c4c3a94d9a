#include "arb/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "arb/errors.hpp"
#include "arb/parallel.hpp"

namespace arb {

Graph Graph::build(std::size_t n_nodes, const EdgeList& edges) {
  if (n_nodes == 0) throw InputError("build_graph: empty node set");

  // Canonicalize to (min,max), drop self-loops, dedup.
  EdgeList canon;
  canon.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n_nodes || v >= n_nodes)
      throw InputError("build_graph: edge endpoint " +
                       std::to_string(std::max(u, v)) + " out of range (N=" +
                       std::to_string(n_nodes) + ")");
    if (u == v) continue;
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

  Graph g;
  g.n_nodes_ = n_nodes;
  g.degree_.assign(n_nodes, 0);
  for (const auto& [u, v] : canon) {
    ++g.degree_[u];
    ++g.degree_[v];
  }

  g.row_ptr_.assign(n_nodes + 1, 0);
  for (std::size_t i = 0; i < n_nodes; ++i)
    g.row_ptr_[i + 1] = g.row_ptr_[i] + g.degree_[i];

  const std::size_t nnz = g.row_ptr_[n_nodes];
  g.col_idx_.resize(nnz);
  g.values_.resize(nnz);
  std::vector<std::size_t> cursor(g.row_ptr_.begin(), g.row_ptr_.end() - 1);

  std::vector<double> inv_sqrt_deg(n_nodes, 0.0);
  for (std::size_t i = 0; i < n_nodes; ++i)
    if (g.degree_[i] > 0)
      inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(g.degree_[i]));

  // Mirror every edge so the stored matrix is exactly symmetric.
  for (const auto& [u, v] : canon) {
    const double w = inv_sqrt_deg[u] * inv_sqrt_deg[v];
    g.col_idx_[cursor[u]] = v;
    g.values_[cursor[u]++] = w;
    g.col_idx_[cursor[v]] = u;
    g.values_[cursor[v]++] = w;
  }

  // Sort each row's columns for deterministic reductions.
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const std::size_t lo = g.row_ptr_[i], hi = g.row_ptr_[i + 1];
    std::vector<std::pair<NodeId, double>> row;
    row.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k)
      row.emplace_back(g.col_idx_[k], g.values_[k]);
    std::sort(row.begin(), row.end());
    for (std::size_t k = lo; k < hi; ++k) {
      g.col_idx_[k] = row[k - lo].first;
      g.values_[k] = row[k - lo].second;
    }
  }
  return g;
}

double Graph::norm_entry(NodeId i, NodeId j) const {
  for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    if (col_idx_[k] == j) return values_[k];
  return 0.0;
}

KnownSet::KnownSet(std::size_t n_nodes, std::vector<NodeId> known)
    : n_nodes_(n_nodes), known_(std::move(known)), mask_(n_nodes, 0) {
  std::sort(known_.begin(), known_.end());
  known_.erase(std::unique(known_.begin(), known_.end()), known_.end());
  for (NodeId v : known_) {
    if (v >= n_nodes_)
      throw InputError("KnownSet: index " + std::to_string(v) +
                       " out of range");
    mask_[v] = 1;
  }
}

std::vector<NodeId> KnownSet::unknown() const {
  std::vector<NodeId> out;
  out.reserve(n_nodes_ - known_.size());
  for (std::size_t v = 0; v < n_nodes_; ++v)
    if (!mask_[v]) out.push_back(static_cast<NodeId>(v));
  return out;
}

void propagate_affine(const Graph& graph, const FeatureMatrix& x,
                      FeatureMatrix& out, double scale,
                      const std::vector<double>* bias) {
  if (x.n_nodes() != graph.n_nodes())
    throw InputError("propagate: feature rows != graph nodes");
  if (out.n_nodes() != x.n_nodes() || out.n_features() != x.n_features())
    out = FeatureMatrix(x.n_nodes(), x.n_features());

  const std::size_t f = x.n_features();
  const auto& row_ptr = graph.row_ptr();
  const auto& col_idx = graph.col_idx();
  const auto& values = graph.values();

  parallel_for(0, graph.n_nodes(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double* dst = out.row(i);
      if (bias)
        std::memcpy(dst, bias->data(), f * sizeof(double));
      else
        std::memset(dst, 0, f * sizeof(double));
      const std::size_t k_end = row_ptr[i + 1];
      for (std::size_t k = row_ptr[i]; k < k_end; ++k) {
        if (k + 2 < k_end) {  // hide the random-gather latency
          const double* pf = x.row(col_idx[k + 2]);
          __builtin_prefetch(pf);
          __builtin_prefetch(pf + 8);
        }
        const double w = scale * values[k];
        const double* src = x.row(col_idx[k]);
        for (std::size_t c = 0; c < f; ++c) dst[c] += w * src[c];
      }
    }
  });
}

void propagate(const Graph& graph, const FeatureMatrix& x, FeatureMatrix& out) {
  propagate_affine(graph, x, out, 1.0, nullptr);
}

FeatureMatrix propagate(const Graph& graph, const FeatureMatrix& x) {
  FeatureMatrix out(x.n_nodes(), x.n_features());
  propagate(graph, x, out);
  return out;
}

}  // namespace arb
