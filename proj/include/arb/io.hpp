#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arb/graph.hpp"
#include "arb/matrix.hpp"
#include "arb/metrics.hpp"

namespace arb::io {

struct DatasetBundle {
  Graph graph;
  FeatureMatrix features;
  std::optional<std::vector<int>> labels;
  bool binary_features = true;
};

// One edge per line as "u v"; '#' comments and blank lines ignored.
// An optional leading "N <count>" line overrides the node count
// (otherwise 1 + max index).
std::pair<std::size_t, EdgeList> load_edge_list(
    const std::filesystem::path& path);

// Delimiter-separated text (comma, space or tab) or the ARBF binary
// format: magic "ARBF", version byte 1, two little-endian u64 counts
// (N, F), then N*F little-endian f64 values row-major.
FeatureMatrix load_feature_matrix(const std::filesystem::path& path);

// One integer class id per line.
std::vector<int> load_labels(const std::filesystem::path& path);

// ARBF binary write; atomic (temp file + rename).
void save_features(const std::filesystem::path& path, const FeatureMatrix& x);

// Flat "key value" lines with stable key order; atomic write.
void save_report(const std::filesystem::path& path, const EvalReport& report);

struct LongtailGraph {
  Graph graph;
  std::vector<std::size_t> degree_histogram;  // index = degree
};

// Configuration-model graph with a truncated power-law degree sequence and
// a forced fraction of isolated nodes; self-loops and multi-edges removed.
LongtailGraph generate_longtail_graph(std::size_t n_nodes, double mean_degree,
                                      double powerlaw_exponent,
                                      double isolated_fraction,
                                      std::uint64_t seed);

// Remaps arbitrary node ids in an edge list to dense 0..N-1 (first-seen
// order); returns the edges plus the old-id -> new-id map.
std::pair<EdgeList, std::map<std::uint64_t, NodeId>> remap_node_ids(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& raw_edges);

}  // namespace arb::io
