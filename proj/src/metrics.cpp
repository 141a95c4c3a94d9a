#include "arb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "arb/errors.hpp"

namespace arb {

namespace {

void validate_ranking_inputs(const FeatureMatrix& predicted,
                             const FeatureMatrix& truth,
                             const std::vector<NodeId>& nodes, std::size_t k) {
  if (predicted.n_features() != truth.n_features())
    throw InputError("ranking metric: feature count mismatch");
  if (k < 1 || k > predicted.n_features())
    throw InputError("ranking metric: k=" + std::to_string(k) +
                     " out of range for F=" +
                     std::to_string(predicted.n_features()));
  if (nodes.empty()) throw InputError("ranking metric: empty eval set");
}

// Indices of the k highest-scoring dimensions, ties by ascending index.
std::vector<std::size_t> top_k(const double* scores, std::size_t f,
                               std::size_t k) {
  std::vector<std::size_t> order(f);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  order.resize(k);
  return order;
}

}  // namespace

double recall_at_k(const FeatureMatrix& predicted, const FeatureMatrix& truth,
                   const std::vector<NodeId>& nodes, std::size_t k) {
  validate_ranking_inputs(predicted, truth, nodes, k);
  const std::size_t f = truth.n_features();
  double total = 0.0;
  std::size_t evaluated = 0;
  for (NodeId v : nodes) {
    const double* t = truth.row(v);
    std::size_t positives = 0;
    for (std::size_t c = 0; c < f; ++c)
      if (t[c] != 0.0) ++positives;
    if (positives == 0) continue;
    std::size_t hit = 0;
    for (std::size_t idx : top_k(predicted.row(v), f, k))
      if (t[idx] != 0.0) ++hit;
    total += static_cast<double>(hit) / static_cast<double>(positives);
    ++evaluated;
  }
  if (evaluated == 0)
    throw InputError("recall_at_k: no evaluable nodes (all-zero truth)");
  return total / static_cast<double>(evaluated);
}

double ndcg_at_k(const FeatureMatrix& predicted, const FeatureMatrix& truth,
                 const std::vector<NodeId>& nodes, std::size_t k) {
  validate_ranking_inputs(predicted, truth, nodes, k);
  const std::size_t f = truth.n_features();
  double total = 0.0;
  std::size_t evaluated = 0;
  for (NodeId v : nodes) {
    const double* t = truth.row(v);
    std::size_t positives = 0;
    for (std::size_t c = 0; c < f; ++c)
      if (t[c] != 0.0) ++positives;
    if (positives == 0) continue;
    double dcg = 0.0;
    const auto ranking = top_k(predicted.row(v), f, k);
    for (std::size_t r = 0; r < ranking.size(); ++r)
      if (t[ranking[r]] != 0.0)
        dcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    double idcg = 0.0;
    for (std::size_t r = 0; r < std::min(k, positives); ++r)
      idcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    total += dcg / idcg;
    ++evaluated;
  }
  if (evaluated == 0)
    throw InputError("ndcg_at_k: no evaluable nodes (all-zero truth)");
  return total / static_cast<double>(evaluated);
}

double rmse(const FeatureMatrix& predicted, const FeatureMatrix& truth,
            const std::vector<NodeId>& nodes) {
  if (predicted.n_features() != truth.n_features())
    throw InputError("rmse: feature count mismatch");
  if (nodes.empty()) throw InputError("rmse: empty eval set");
  const std::size_t f = truth.n_features();
  double acc = 0.0;
  for (NodeId v : nodes) {
    const double* p = predicted.row(v);
    const double* t = truth.row(v);
    for (std::size_t c = 0; c < f; ++c) {
      const double d = p[c] - t[c];
      acc += d * d;
    }
  }
  return std::sqrt(acc / (static_cast<double>(nodes.size()) *
                          static_cast<double>(f)));
}

double corr(const FeatureMatrix& predicted, const FeatureMatrix& truth,
            const std::vector<NodeId>& nodes) {
  if (predicted.n_features() != truth.n_features())
    throw InputError("corr: feature count mismatch");
  if (predicted.n_features() < 2)
    throw InputError("corr: needs at least 2 feature dims");
  if (nodes.empty()) throw InputError("corr: empty eval set");
  const std::size_t f = truth.n_features();
  double total = 0.0;
  for (NodeId v : nodes) {
    const double* p = predicted.row(v);
    const double* t = truth.row(v);
    double mp = 0.0, mt = 0.0;
    for (std::size_t c = 0; c < f; ++c) {
      mp += p[c];
      mt += t[c];
    }
    mp /= static_cast<double>(f);
    mt /= static_cast<double>(f);
    double cov = 0.0, vp = 0.0, vt = 0.0;
    for (std::size_t c = 0; c < f; ++c) {
      cov += (p[c] - mp) * (t[c] - mt);
      vp += (p[c] - mp) * (p[c] - mp);
      vt += (t[c] - mt) * (t[c] - mt);
    }
    if (vp > 0.0 && vt > 0.0) total += cov / std::sqrt(vp * vt);
    // zero-variance rows contribute 0
  }
  return total / static_cast<double>(nodes.size());
}

std::vector<std::pair<std::string, double>> report_entries(
    const EvalReport& report) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [k, v] : report.recall_at)
    out.emplace_back("recall@" + std::to_string(k), v);
  for (const auto& [k, v] : report.ndcg_at)
    out.emplace_back("ndcg@" + std::to_string(k), v);
  if (report.rmse) out.emplace_back("rmse", *report.rmse);
  if (report.corr) out.emplace_back("corr", *report.corr);
  out.emplace_back("n_eval_nodes", static_cast<double>(report.n_eval_nodes));
  return out;
}

}  // namespace arb
