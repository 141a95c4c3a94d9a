#pragma once

#include <cstdint>
#include <vector>

#include "arb/graph.hpp"
#include "arb/matrix.hpp"
#include "arb/rng.hpp"

namespace arb::test {

// Erdos-Renyi-style random graph with the given expected edge count.
inline Graph random_graph(std::size_t n, std::size_t target_edges, Rng& rng) {
  EdgeList edges;
  for (std::size_t e = 0; e < target_edges; ++e) {
    const auto u = static_cast<NodeId>(rng.next_below(n));
    const auto v = static_cast<NodeId>(rng.next_below(n));
    edges.emplace_back(u, v);
  }
  return Graph::build(n, edges);
}

inline FeatureMatrix random_features(std::size_t n, std::size_t f, Rng& rng) {
  FeatureMatrix x(n, f);
  for (double& v : x.data()) v = rng.next_double();
  return x;
}

inline KnownSet random_known(std::size_t n, double fraction, Rng& rng) {
  std::vector<NodeId> ids;
  for (std::size_t v = 0; v < n; ++v)
    if (rng.next_double() < fraction) ids.push_back(static_cast<NodeId>(v));
  if (ids.empty()) ids.push_back(static_cast<NodeId>(rng.next_below(n)));
  return KnownSet(n, std::move(ids));
}

}  // namespace arb::test
