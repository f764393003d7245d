#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slotprobe/activation_store.hpp"
#include "slotprobe/error.hpp"
#include "slotprobe/evaluation.hpp"
#include "slotprobe/probe.hpp"
#include "slotprobe/random.hpp"

namespace slotprobe {

struct TrainConfig {
  std::size_t slots = 4;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t epochs = 20;
  std::size_t batch_size = 256;  // token positions per step
  std::uint64_t seed = 0;
  double init_scale = 0.0;       // <= 0 selects 1/sqrt(d)
  bool slot_bias = false;
  bool router_bias = false;
  std::size_t restarts = 1;  // independent initializations; lowest final training loss wins
};

inline void validate(const TrainConfig& cfg) {
  require(cfg.slots >= 1, ErrorCode::invalid_argument, "slots must be >= 1");
  require(std::isfinite(cfg.learning_rate) && cfg.learning_rate >= 0.0, ErrorCode::invalid_argument,
          "learning rate must be finite and >= 0");
  require(cfg.epochs >= 1, ErrorCode::invalid_argument, "epochs must be >= 1");
  require(cfg.batch_size >= 1, ErrorCode::invalid_argument, "batch_size must be >= 1");
  require(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0 && cfg.beta2 >= 0.0 && cfg.beta2 < 1.0, ErrorCode::invalid_argument,
          "adam betas must be in [0, 1)");
  require(cfg.epsilon > 0.0, ErrorCode::invalid_argument, "adam epsilon must be > 0");
  require(cfg.restarts >= 1, ErrorCode::invalid_argument, "restarts must be >= 1");
}

// Adam with bias correction over a fixed list of parameter blocks.
template <typename T>
class Adam {
 public:
  Adam(std::size_t parameter_count, double lr, double beta1, double beta2, double epsilon)
      : lr_(lr), beta1_(beta1), beta2_(beta2), epsilon_(epsilon), m_(parameter_count, 0.0), v_(parameter_count, 0.0) {}

  // params and grads must list blocks in the same order and shapes.
  void step(const std::vector<std::span<T>>& params, const std::vector<std::span<const T>>& grads, double grad_scale) {
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    std::size_t i = 0;
    for (std::size_t b = 0; b < params.size(); ++b) {
      for (std::size_t j = 0; j < params[b].size(); ++j, ++i) {
        const double g = static_cast<double>(grads[b][j]) * grad_scale;
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g * g;
        const double m_hat = m_[i] / c1;
        const double v_hat = v_[i] / c2;
        params[b][j] -= static_cast<T>(lr_ * m_hat / (std::sqrt(v_hat) + epsilon_));
      }
    }
  }

  std::uint64_t steps() const { return t_; }

 private:
  double lr_, beta1_, beta2_, epsilon_;
  std::uint64_t t_ = 0;
  std::vector<double> m_, v_;
};

template <typename T>
MultiSlotProbe<T> init_probe(const TrainConfig& cfg, std::size_t dim, std::size_t traits, std::size_t entities) {
  auto probe = MultiSlotProbe<T>::zeros(dim, traits, cfg.slots, entities, cfg.slot_bias, cfg.router_bias);
  const double scale = cfg.init_scale > 0.0 ? cfg.init_scale : 1.0 / std::sqrt(static_cast<double>(dim));
  Rng rng(derive_seed(cfg.seed, 0x1A17));
  // Biases stay zero; only weight matrices are randomized.
  for (auto& w : probe.slot_weights)
    for (auto& v : w.flat()) v = static_cast<T>(rng.uniform(-scale, scale));
  for (auto& r : probe.router_weights)
    for (auto& v : r.flat()) v = static_cast<T>(rng.uniform(-scale, scale));
  return probe;
}

template <typename T>
struct TrainResult {
  MultiSlotProbe<T> probe;
  // loss_history[0] is the training loss at initialization; entry i is the
  // training loss after epoch i. All values are summed (not averaged) losses.
  std::vector<double> loss_history;
  std::uint64_t steps = 0;
  std::size_t restart = 0;                  // index of the selected restart
  std::vector<double> restart_final_losses;  // one per restart
};

namespace detail {

template <typename T>
TrainResult<T> train_once(const TrainConfig& cfg, const ActivationDataset& ds, std::span<const std::size_t> train) {
  TrainResult<T> result;
  result.probe = init_probe<T>(cfg, ds.meta.hidden_dim, ds.meta.num_traits(), ds.meta.entities_per_prompt);
  auto& probe = result.probe;
  check_probe_matches(probe, ds);

  std::vector<TokenRef> order = all_tokens(ds, train);
  Adam<T> adam(probe.parameter_count(), cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon);
  Rng shuffle_rng(derive_seed(cfg.seed, 0x5EED));

  auto check_finite = [](double loss, const std::string& where) {
    if (!std::isfinite(loss)) fail(ErrorCode::divergence, "loss became non-finite " + where);
  };
  result.loss_history.push_back(probe_loss(probe, ds, train));
  check_finite(result.loss_history.back(), "at initialization");

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(std::span<TokenRef>(order));
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t n = std::min(cfg.batch_size, order.size() - start);
      const auto batch = std::span<const TokenRef>(order).subspan(start, n);
      auto g = probe_gradients(probe, ds, batch);
      check_finite(g.loss, "in epoch " + std::to_string(epoch + 1));
      adam.step(probe.parameter_blocks(), std::as_const(g.grad).parameter_blocks(), 1.0 / static_cast<double>(n));
    }
    result.loss_history.push_back(probe_loss(probe, ds, train));
    check_finite(result.loss_history.back(), "after epoch " + std::to_string(epoch + 1));
    if (!probe.all_finite()) fail(ErrorCode::divergence, "weights became non-finite after epoch " + std::to_string(epoch + 1));
  }
  result.steps = adam.steps();
  return result;
}

}  // namespace detail

// Joint training of all slot and router weights with Adam on shuffled
// mini-batches of training token positions. Losses are summed as in the
// objective; each step's gradient is divided by the batch's token count
// before it reaches Adam. Restart r > 0 reseeds with derive_seed(seed, r).
template <typename T = float>
TrainResult<T> train_probe(const TrainConfig& cfg, const ActivationDataset& ds, const SplitAssignment& split) {
  validate(cfg);
  require(!split.train_prompt_ids.empty(), ErrorCode::empty_split, "training split is empty");
  const auto train = prompt_indices(ds, split.train_prompt_ids);

  TrainResult<T> best;
  std::vector<double> finals;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    TrainConfig run = cfg;
    if (r > 0) run.seed = derive_seed(cfg.seed, r);
    auto result = detail::train_once<T>(run, ds, train);
    finals.push_back(result.loss_history.back());
    if (r == 0 || result.loss_history.back() < best.loss_history.back()) {
      best = std::move(result);
      best.restart = r;
    }
  }
  best.restart_final_losses = std::move(finals);
  return best;
}

// Configuration used by slot-count sweeps: a larger step size than the
// single-probe default plus restarts selected by training loss.
inline TrainConfig default_sweep_config() {
  TrainConfig cfg;
  cfg.learning_rate = 1e-2;
  cfg.restarts = 4;
  return cfg;
}

struct SweepRow {
  std::size_t slots = 0;
  double overall_accuracy = 0.0;  // count-weighted over unmasked test cells
  double train_loss = 0.0;        // final summed training loss of the selected restart
  std::size_t restart = 0;
};

template <typename T = float>
std::vector<SweepRow> sweep_slot_counts(const TrainConfig& base, const ActivationDataset& ds,
                                        const SplitAssignment& split, std::span<const std::size_t> slot_counts) {
  const auto test = prompt_indices(ds, split.test_prompt_ids);
  std::vector<SweepRow> rows;
  for (const std::size_t k : slot_counts) {
    TrainConfig cfg = base;
    cfg.slots = k;
    const auto result = train_probe<T>(cfg, ds, split);
    rows.push_back({k, evaluate_heatmap(result.probe, ds, test).overall(), result.loss_history.back(), result.restart});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Independent per-(token, entity) linear classifiers.

struct GridConfig {
  double learning_rate = 1e-2;
  std::size_t epochs = 30;
  std::size_t batch_size = 64;
  std::uint64_t seed = 0;
};

struct IndependentGrid {
  HeatmapLayout layout;
  std::vector<Matrix<float>> weights;  // [rows * cols], [d, c] for valid cells, empty otherwise
  AccuracyHeatmap heatmap;

  const Matrix<float>& cell(std::size_t t, std::size_t e) const { return weights[t * layout.cols() + e]; }
};

namespace detail {

// Plain multinomial logistic regression without bias, trained with Adam.
inline Matrix<float> fit_linear_classifier(const std::vector<std::span<const float>>& xs,
                                           const std::vector<std::size_t>& ys, std::size_t dim, std::size_t traits,
                                           const GridConfig& cfg, std::uint64_t seed) {
  Matrix<float> w(dim, traits);
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (auto& v : w.flat()) v = static_cast<float>(rng.uniform(-scale, scale));

  Adam<float> adam(w.size(), cfg.learning_rate, 0.9, 0.999, 1e-8);
  Matrix<float> grad(dim, traits);
  std::vector<float> logits(traits);
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t n = std::min(cfg.batch_size, order.size() - start);
      grad.fill(0.0f);
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t i = order[start + b];
        transposed_matvec(w, xs[i], std::span<float>(logits));
        softmax_inplace(std::span<float>(logits));
        logits[ys[i]] -= 1.0f;
        add_outer(grad, xs[i], std::span<const float>(logits));
      }
      adam.step({w.flat()}, {std::as_const(grad).flat()}, 1.0 / static_cast<double>(n));
    }
  }
  return w;
}

}  // namespace detail

inline IndependentGrid train_independent_grid(const ActivationDataset& ds, const SplitAssignment& split,
                                              const GridConfig& cfg = {}) {
  const auto train = prompt_indices(ds, split.train_prompt_ids);
  const auto test = prompt_indices(ds, split.test_prompt_ids);
  require(!test.empty(), ErrorCode::empty_split, "no test prompts");
  const std::size_t c = ds.meta.num_traits();
  require(train.size() >= c, ErrorCode::insufficient_data,
          "each cell needs >= " + std::to_string(c) + " training examples, have " + std::to_string(train.size()));

  IndependentGrid grid;
  grid.layout = layout_of(ds);
  grid.weights.resize(grid.layout.rows() * grid.layout.cols());
  grid.heatmap = empty_accuracy_heatmap(grid.layout);
  const std::size_t d = ds.meta.hidden_dim;

  std::vector<float> logits(c);
  for (std::size_t t = 0; t < grid.layout.rows(); ++t) {
    std::vector<std::span<const float>> xs;
    xs.reserve(train.size());
    for (const std::size_t p : train) xs.push_back(ds.token(p, t));
    for (std::size_t e = 0; e < grid.layout.cols(); ++e) {
      if (!grid.layout.valid(t, e)) continue;
      std::vector<std::size_t> ys;
      ys.reserve(train.size());
      for (const std::size_t p : train) ys.push_back(static_cast<std::size_t>(ds.label(p, e)));
      const auto cell_seed = derive_seed(cfg.seed, t * grid.layout.cols() + e);
      Matrix<float> w = detail::fit_linear_classifier(xs, ys, d, c, cfg, cell_seed);

      for (const std::size_t p : test) {
        transposed_matvec(w, ds.token(p, t), std::span<float>(logits));
        const std::size_t pred = argmax(std::span<const float>(logits));
        grid.heatmap.accuracy(t, e) += pred == static_cast<std::size_t>(ds.label(p, e)) ? 1.0 : 0.0;
        grid.heatmap.counts(t, e) += 1;
      }
      grid.weights[t * grid.layout.cols() + e] = std::move(w);
    }
  }
  finalize_accuracy(grid.heatmap);
  return grid;
}

}  // namespace slotprobe
