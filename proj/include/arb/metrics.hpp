#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arb/graph.hpp"
#include "arb/matrix.hpp"

namespace arb {

struct EvalReport {
  std::map<std::size_t, double> recall_at;
  std::map<std::size_t, double> ndcg_at;
  std::optional<double> rmse;
  std::optional<double> corr;
  std::size_t n_eval_nodes = 0;
};

// Mean Recall@k over the given node rows. Per node, feature dimensions are
// ranked by predicted score descending (ties broken by ascending index);
// nodes with no positive truth entries are skipped.
double recall_at_k(const FeatureMatrix& predicted, const FeatureMatrix& truth,
                   const std::vector<NodeId>& nodes, std::size_t k);

// Mean nDCG@k with binary relevance; same ranking and skip rules.
double ndcg_at_k(const FeatureMatrix& predicted, const FeatureMatrix& truth,
                 const std::vector<NodeId>& nodes, std::size_t k);

// Root mean squared error over all (node, feature) cells of the given rows.
double rmse(const FeatureMatrix& predicted, const FeatureMatrix& truth,
            const std::vector<NodeId>& nodes);

// Mean over nodes of the per-node Pearson correlation between predicted
// and true feature vectors; constant vectors contribute 0.
double corr(const FeatureMatrix& predicted, const FeatureMatrix& truth,
            const std::vector<NodeId>& nodes);

// Flat key/value serialization with stable key order.
std::vector<std::pair<std::string, double>> report_entries(
    const EvalReport& report);

}  // namespace arb
