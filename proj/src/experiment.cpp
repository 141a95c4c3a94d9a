#include "arb/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include "arb/errors.hpp"
#include "arb/rng.hpp"

namespace arb {

Split make_split(std::size_t n_nodes, const SplitSpec& spec) {
  if (n_nodes < 10) throw InputError("make_split: need at least 10 nodes");
  if (!(spec.known_fraction > 0.0 && spec.known_fraction < 1.0))
    throw InputError("make_split: known_fraction must lie in (0,1)");

  std::size_t n_known = static_cast<std::size_t>(
      std::floor(spec.known_fraction * static_cast<double>(n_nodes) + 0.5));
  n_known = std::clamp<std::size_t>(n_known, 1, n_nodes - 2);

  std::vector<NodeId> perm(n_nodes);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(spec.seed);
  rng.shuffle(perm);

  std::vector<NodeId> known_ids(perm.begin(), perm.begin() + n_known);
  std::vector<NodeId> rest(perm.begin() + n_known, perm.end());

  const auto [vr, tr] = spec.val_test_ratio;
  if (vr == 0 || tr == 0)
    throw InputError("make_split: val/test ratio parts must be positive");
  const double val_share =
      static_cast<double>(vr) / static_cast<double>(vr + tr);
  std::size_t n_val = static_cast<std::size_t>(
      std::floor(val_share * static_cast<double>(rest.size()) + 0.5));
  if (n_val == 0 || n_val >= rest.size())
    throw InputError("make_split: degenerate val/test split");

  Split split{KnownSet(n_nodes, known_ids),
              std::vector<NodeId>(rest.begin(), rest.begin() + n_val),
              std::vector<NodeId>(rest.begin() + n_val, rest.end())};
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

FeatureMatrix mask_features(const FeatureMatrix& z, const KnownSet& known) {
  if (z.n_nodes() != known.n_nodes())
    throw InputError("mask_features: shape mismatch");
  FeatureMatrix out(z.n_nodes(), z.n_features());
  for (NodeId v : known.known())
    std::copy(z.row(v), z.row(v) + z.n_features(), out.row(v));
  return out;
}

namespace {

constexpr double kParamFloor = 1.0 / 1024.0;  // keeps candidates inside (0,1]

double clamp_param(double v) {
  return std::clamp(v, kParamFloor, 1.0);
}

}  // namespace

std::pair<std::pair<double, double>, SearchState> search_hyperparams(
    const Objective& objective, double initial_step, double min_step,
    std::size_t max_evals) {
  if (initial_step <= 0.0 || min_step <= 0.0)
    throw InputError("search_hyperparams: steps must be positive");

  SearchState state;
  state.step = initial_step;

  const double neg_inf = -std::numeric_limits<double>::infinity();
  auto evaluate = [&](double a, double b) {
    double score = objective(a, b);
    if (!std::isfinite(score)) score = neg_inf;
    state.evaluations.push_back({{a, b}, score});
    return score;
  };

  std::pair<double, double> best = state.center;
  double best_score = evaluate(state.center.first, state.center.second);
  state.best_score = best_score;

  while (state.step >= min_step &&
         state.evaluations.size() < max_evals) {
    bool improved = false;
    std::pair<double, double> best_neighbor = state.center;
    double best_neighbor_score = neg_inf;
    for (int da = -1; da <= 1; ++da) {
      for (int db = -1; db <= 1; ++db) {
        if (da == 0 && db == 0) continue;
        if (state.evaluations.size() >= max_evals) break;
        const double a = clamp_param(state.center.first + da * state.step);
        const double b = clamp_param(state.center.second + db * state.step);
        const double score = evaluate(a, b);
        if (score > best_neighbor_score) {
          best_neighbor_score = score;
          best_neighbor = {a, b};
        }
      }
    }
    if (best_neighbor_score > state.best_score) {
      state.center = best_neighbor;
      state.best_score = best_neighbor_score;
      improved = true;
    }
    if (!improved) state.step *= 0.5;
  }

  for (const auto& [point, score] : state.evaluations) {
    if (score > best_score) {
      best_score = score;
      best = point;
    }
  }
  state.best_score = std::max(state.best_score, best_score);
  return {best, state};
}

double train_linear_classifier(const FeatureMatrix& features,
                               const std::vector<NodeId>& rows,
                               const std::vector<int>& labels,
                               std::size_t folds, std::uint64_t seed) {
  if (rows.size() != labels.size())
    throw InputError("classifier: rows/labels length mismatch");
  if (rows.size() < folds)
    throw InputError("classifier: fewer samples than folds");
  const int n_classes =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  if (n_classes < 2) throw InputError("classifier: needs at least 2 classes");
  for (int y : labels)
    if (y < 0) throw InputError("classifier: negative label");

  const std::size_t f = features.n_features();

  // Stratified fold assignment: shuffle within each class, deal round-robin.
  std::vector<std::size_t> fold_of(rows.size());
  {
    Rng rng(seed);
    std::vector<std::vector<std::size_t>> by_class(n_classes);
    for (std::size_t i = 0; i < rows.size(); ++i)
      by_class[labels[i]].push_back(i);
    for (auto& members : by_class) {
      rng.shuffle(members);
      for (std::size_t j = 0; j < members.size(); ++j)
        fold_of[members[j]] = j % folds;
    }
  }

  const std::size_t epochs = 300;
  const double lr = 0.5;

  double total_correct = 0.0;
  for (std::size_t fold = 0; fold < folds; ++fold) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < rows.size(); ++i)
      (fold_of[i] == fold ? test_idx : train_idx).push_back(i);
    if (train_idx.empty() || test_idx.empty())
      throw InputError("classifier: empty fold");

    // Standardize from training statistics.
    std::vector<double> mu(f, 0.0), sigma(f, 0.0);
    for (std::size_t i : train_idx) {
      const double* r = features.row(rows[i]);
      for (std::size_t c = 0; c < f; ++c) mu[c] += r[c];
    }
    for (double& m : mu) m /= static_cast<double>(train_idx.size());
    for (std::size_t i : train_idx) {
      const double* r = features.row(rows[i]);
      for (std::size_t c = 0; c < f; ++c)
        sigma[c] += (r[c] - mu[c]) * (r[c] - mu[c]);
    }
    for (double& s : sigma)
      s = std::sqrt(s / static_cast<double>(train_idx.size())) + 1e-12;

    auto standardized = [&](NodeId node, std::vector<double>& buf) {
      const double* r = features.row(node);
      for (std::size_t c = 0; c < f; ++c) buf[c] = (r[c] - mu[c]) / sigma[c];
    };

    // Softmax regression, full-batch gradient descent.
    std::vector<double> w(static_cast<std::size_t>(n_classes) * f, 0.0);
    std::vector<double> bias(n_classes, 0.0);
    std::vector<double> xbuf(f), logits(n_classes), prob(n_classes);
    std::vector<double> gw(w.size()), gb(bias.size());

    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
      std::fill(gw.begin(), gw.end(), 0.0);
      std::fill(gb.begin(), gb.end(), 0.0);
      for (std::size_t i : train_idx) {
        standardized(rows[i], xbuf);
        for (int c = 0; c < n_classes; ++c) {
          double dot = bias[c];
          const double* wc = w.data() + static_cast<std::size_t>(c) * f;
          for (std::size_t d = 0; d < f; ++d) dot += wc[d] * xbuf[d];
          logits[c] = dot;
        }
        const double mx = *std::max_element(logits.begin(), logits.end());
        double zsum = 0.0;
        for (int c = 0; c < n_classes; ++c) {
          prob[c] = std::exp(logits[c] - mx);
          zsum += prob[c];
        }
        for (int c = 0; c < n_classes; ++c) {
          const double g = prob[c] / zsum - (labels[i] == c ? 1.0 : 0.0);
          double* gwc = gw.data() + static_cast<std::size_t>(c) * f;
          for (std::size_t d = 0; d < f; ++d) gwc[d] += g * xbuf[d];
          gb[c] += g;
        }
      }
      const double scale = lr / static_cast<double>(train_idx.size());
      for (std::size_t j = 0; j < w.size(); ++j) w[j] -= scale * gw[j];
      for (int c = 0; c < n_classes; ++c) bias[c] -= scale * gb[c];
    }

    for (std::size_t i : test_idx) {
      standardized(rows[i], xbuf);
      int argmax = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < n_classes; ++c) {
        double dot = bias[c];
        const double* wc = w.data() + static_cast<std::size_t>(c) * f;
        for (std::size_t d = 0; d < f; ++d) dot += wc[d] * xbuf[d];
        if (dot > best) {
          best = dot;
          argmax = c;
        }
      }
      if (argmax == labels[i]) total_correct += 1.0;
    }
  }
  return total_correct / static_cast<double>(rows.size());
}

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::kFp: return "fp";
    case Engine::kArb: return "arb";
    case Engine::kArbNoVe: return "arb-no-ve";
    case Engine::kArbNoBc: return "arb-no-bc";
  }
  return "unknown";
}

Engine parse_engine(const std::string& name) {
  if (name == "fp") return Engine::kFp;
  if (name == "arb") return Engine::kArb;
  if (name == "arb-no-ve") return Engine::kArbNoVe;
  if (name == "arb-no-bc") return Engine::kArbNoBc;
  throw InputError("unknown engine: " + name);
}

ReconstructionResult run_engine_by_name(Engine engine, const Graph& graph,
                                        const FeatureMatrix& z,
                                        const KnownSet& known,
                                        const ArbConfig& config) {
  switch (engine) {
    case Engine::kFp:
      return run_fp(graph, z, known, config.max_iters, config.tolerance);
    case Engine::kArb:
      return run_arb(graph, z, known, config);
    case Engine::kArbNoVe:
      return run_boundary_only(graph, z, known, config.beta, config.max_iters,
                               config.tolerance);
    case Engine::kArbNoBc:
      return run_virtual_only(graph, z, known, config.alpha, config.max_iters,
                              config.tolerance);
  }
  throw InputError("unknown engine");
}

EvalReport evaluate_reconstruction(const FeatureMatrix& predicted,
                                   const FeatureMatrix& truth,
                                   const std::vector<NodeId>& rows,
                                   const std::vector<std::size_t>& k_list,
                                   bool binary_features) {
  EvalReport report;
  report.n_eval_nodes = rows.size();
  if (binary_features) {
    for (std::size_t k : k_list) {
      report.recall_at[k] = recall_at_k(predicted, truth, rows, k);
      report.ndcg_at[k] = ndcg_at_k(predicted, truth, rows, k);
    }
  } else {
    report.rmse = rmse(predicted, truth, rows);
    report.corr = corr(predicted, truth, rows);
  }
  return report;
}

std::vector<SweepCell> run_missing_rate_sweep(
    const Graph& graph, const FeatureMatrix& z,
    const std::vector<double>& rates, const std::vector<Engine>& engines,
    const SweepOptions& options) {
  std::vector<SweepCell> table;
  for (double rate : rates) {
    Split split = [&] {
      SplitSpec spec;
      std::uint64_t rate_bits;
      static_assert(sizeof(rate_bits) == sizeof(rate));
      std::memcpy(&rate_bits, &rate, sizeof(rate_bits));
      spec.seed = options.seed ^ rate_bits;
      spec.known_fraction = std::max(1.0 - rate, 1e-9);
      return make_split(graph.n_nodes(), spec);
    }();
    const FeatureMatrix masked = mask_features(z, split.known);
    for (Engine engine : engines) {
      SweepCell cell;
      cell.missing_rate = rate;
      cell.engine = engine;
      try {
        const auto result =
            run_engine_by_name(engine, graph, masked, split.known,
                               options.config);
        cell.outcome = evaluate_reconstruction(
            result.features, z, split.test, options.k_list,
            options.binary_features);
      } catch (const std::exception& err) {
        cell.outcome = std::string(err.what());
      }
      table.push_back(std::move(cell));
    }
  }
  return table;
}

}  // namespace arb
