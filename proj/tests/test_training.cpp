#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "slotprobe/synthetic.hpp"
#include "slotprobe/training.hpp"

using namespace slotprobe;
using slotprobe::testing::random_dataset;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::invariant_violation;
}

struct Planted {
  SlotBank bank;
  ActivationDataset ds;
  SplitAssignment split;
};

Planted planted(std::size_t prompts, double sigma, std::uint64_t seed) {
  SlotBankOptions o;
  o.noise_sigma = sigma;
  o.position_slots = 8;
  const std::vector<Placement> schemes{Placement::current, Placement::prior};
  Planted p{make_slot_bank(64, 15, schemes, seed, o), {}, {}};
  SyntheticConfig cfg;
  cfg.num_prompts = prompts;
  cfg.seed = seed + 1;
  cfg.position_gain = 1.0;
  p.ds = generate_synthetic(cfg, p.bank);
  p.split = split_dataset(p.ds, 0.8, seed + 2);
  return p;
}

}  // namespace

TEST(Adam, FirstStepMovesByLearningRate) {
  // bias-corrected first step is lr * g / (|g| + eps)
  std::vector<double> x{1.0, -2.0, 0.5};
  const std::vector<double> g{4.0, -0.25, 0.0};
  Adam<double> adam(3, 0.1, 0.9, 0.999, 1e-8);
  adam.step({std::span<double>(x)}, {std::span<const double>(g)}, 1.0);
  EXPECT_NEAR(x[0], 0.9, 1e-8);
  EXPECT_NEAR(x[1], -1.9, 1e-8);
  EXPECT_EQ(x[2], 0.5);
  EXPECT_EQ(adam.steps(), 1u);
}

TEST(Adam, MinimizesQuadratic) {
  std::vector<double> x{3.0, -4.0};
  Adam<double> adam(2, 0.05, 0.9, 0.999, 1e-8);
  for (int i = 0; i < 2000; ++i) {
    const std::vector<double> g{2 * (x[0] - 1), 2 * (x[1] + 2)};
    adam.step({std::span<double>(x)}, {std::span<const double>(g)}, 1.0);
  }
  EXPECT_NEAR(x[0], 1.0, 1e-3);
  EXPECT_NEAR(x[1], -2.0, 1e-3);
}

TEST(Train, ConfigValidation) {
  TrainConfig c;
  c.epochs = 0;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::invalid_argument);
  c = {};
  c.learning_rate = -1;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::invalid_argument);
  c = {};
  c.slots = 0;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::invalid_argument);
  c = {};
  c.beta1 = 1.0;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::invalid_argument);
  const auto ds = random_dataset(4, 2, 1, 3, 3, 1);
  EXPECT_EQ(code_of([&] { train_probe(TrainConfig{}, ds, SplitAssignment{}); }), ErrorCode::empty_split);
}

TEST(Train, InitializationRange) {
  TrainConfig c;
  c.seed = 5;
  const auto q = init_probe<double>(c, 16, 3, 2);
  for (const auto b : q.parameter_blocks())
    for (double v : b) EXPECT_LE(std::abs(v), 0.25);
  EXPECT_EQ(q, init_probe<double>(c, 16, 3, 2));
  c.seed = 6;
  EXPECT_NE(q, init_probe<double>(c, 16, 3, 2));
}

TEST(Train, ZeroLearningRateReturnsInitialization) {
  const auto ds = random_dataset(20, 2, 2, 5, 3, 2);
  const auto split = split_dataset(ds, 0.8, 1);
  TrainConfig c;
  c.learning_rate = 0.0;
  c.epochs = 2;
  c.seed = 3;
  const auto r = train_probe(c, ds, split);
  EXPECT_EQ(r.probe, init_probe<float>(c, 5, 3, 2));
  EXPECT_EQ(r.loss_history.front(), r.loss_history.back());
}

TEST(Train, BitIdenticalForSameSeed) {
  const auto ds = random_dataset(30, 3, 2, 6, 4, 4);
  const auto split = split_dataset(ds, 0.8, 2);
  TrainConfig c;
  c.slots = 2;
  c.epochs = 3;
  c.batch_size = 16;
  c.seed = 9;
  c.restarts = 2;
  const auto a = train_probe(c, ds, split);
  const auto b = train_probe(c, ds, split);
  EXPECT_EQ(a.probe, b.probe);
  EXPECT_EQ(a.loss_history, b.loss_history);
  c.seed = 10;
  EXPECT_NE(train_probe(c, ds, split).probe, a.probe);
}

TEST(Train, RestartsPickLowestTrainingLoss) {
  const auto ds = random_dataset(30, 2, 2, 6, 4, 5);
  const auto split = split_dataset(ds, 0.8, 3);
  TrainConfig c;
  c.epochs = 2;
  c.restarts = 3;
  c.seed = 1;
  const auto r = train_probe(c, ds, split);
  ASSERT_EQ(r.restart_final_losses.size(), 3u);
  for (double l : r.restart_final_losses) EXPECT_LE(r.loss_history.back(), l);
  EXPECT_EQ(r.loss_history.back(), r.restart_final_losses[r.restart]);

  TrainConfig first = c;
  first.restarts = 1;
  EXPECT_EQ(train_probe(first, ds, split).loss_history.back(), r.restart_final_losses[0]);
}

TEST(Train, DivergenceIsReported) {
  auto ds = random_dataset(10, 2, 1, 3, 3, 6);
  for (auto& v : ds.activations) v *= 1e30f;
  TrainConfig c;
  c.learning_rate = 1e30;
  c.epochs = 3;
  EXPECT_EQ(code_of([&] { train_probe(c, ds, split_dataset(ds, 0.8, 1)); }), ErrorCode::divergence);
}

TEST(Train, NoiseFreePlantedSlotsAreRecovered) {
  const auto p = planted(400, 0.0, 30);
  TrainConfig c;
  c.slots = 2;
  c.seed = 4;
  const auto r = train_probe(c, p.ds, p.split);
  EXPECT_LT(r.loss_history.back(), r.loss_history.front());
  const auto test = prompt_indices(p.ds, p.split.test_prompt_ids);
  const auto hm = evaluate_heatmap(r.probe, p.ds, test);
  const auto routing = routing_heatmap(r.probe, p.ds, test);
  const auto& L = hm.layout;
  // the slot that dominates the first diagonal cell must dominate every diagonal cell
  const std::size_t cur = routing.mass[0](0, 0) > 0.5 ? 0 : 1;
  for (std::size_t t = 0; t < L.rows(); ++t)
    for (std::size_t e = 0; e < L.cols(); ++e) {
      if (L.diagonal(t, e)) {
        EXPECT_EQ(hm.accuracy(t, e), 1.0) << t << "," << e;
        EXPECT_GE(routing.mass[cur](t, e), 0.9) << t << "," << e;
      }
      if (L.subdiagonal(t, e)) {
        EXPECT_EQ(hm.accuracy(t, e), 1.0) << t << "," << e;
        EXPECT_GE(routing.mass[1 - cur](t, e), 0.9) << t << "," << e;
      }
    }
}

TEST(Train, ShiftOrthogonalToBankKeepsRecoveryPerfect) {
  auto p = planted(400, 0.0, 31);
  // unit vector orthogonal to every bank direction
  Rng rng(77);
  std::vector<double> shift(64);
  for (auto& v : shift) v = rng.normal();
  std::vector<std::span<const double>> basis;
  for (const auto& s : p.bank.schemes)
    for (std::size_t x = 0; x < 15; ++x) basis.push_back(s.directions.row(x));
  for (std::size_t i = 0; i < 8; ++i) basis.push_back(p.bank.position_directions.row(i));
  for (const auto& b : basis) {
    double d = 0;
    for (std::size_t i = 0; i < 64; ++i) d += shift[i] * b[i];
    for (std::size_t i = 0; i < 64; ++i) shift[i] -= d * b[i];
  }
  double norm = 0;
  for (double v : shift) norm += v * v;
  for (auto& v : shift) v /= std::sqrt(norm);
  for (std::size_t k = 0; k < p.ds.activations.size(); ++k) p.ds.activations[k] += static_cast<float>(shift[k % 64]);

  TrainConfig c;
  c.slots = 2;
  c.seed = 4;
  const auto r = train_probe(c, p.ds, p.split);
  const auto hm = evaluate_heatmap(r.probe, p.ds, prompt_indices(p.ds, p.split.test_prompt_ids));
  for (std::size_t t = 0; t < hm.layout.rows(); ++t)
    for (std::size_t e = 0; e < hm.layout.cols(); ++e)
      if (hm.layout.diagonal(t, e) || hm.layout.subdiagonal(t, e)) EXPECT_EQ(hm.accuracy(t, e), 1.0);
}

TEST(IndependentGrid, PlantedCellsPerfectDistantCellsChance) {
  const auto p = planted(500, 0.0, 40);
  GridConfig g;
  g.seed = 2;
  const auto grid = train_independent_grid(p.ds, p.split, g);
  const auto& L = grid.layout;
  EXPECT_EQ(L, layout_of(p.ds));
  const double n_test = static_cast<double>(p.split.test_prompt_ids.size());
  double far_sum = 0;
  std::size_t far_n = 0;
  for (std::size_t t = 0; t < L.rows(); ++t)
    for (std::size_t e = 0; e < L.cols(); ++e) {
      if (!L.valid(t, e)) {
        EXPECT_EQ(grid.heatmap.counts(t, e), 0u);
        EXPECT_TRUE(grid.cell(t, e).flat().empty());
      } else if (L.diagonal(t, e) || L.subdiagonal(t, e)) {
        EXPECT_EQ(grid.heatmap.accuracy(t, e), 1.0);
      } else {
        far_sum += grid.heatmap.accuracy(t, e);
        ++far_n;
      }
    }
  // pooled over far cells; chance is 1/15
  const double mean = far_sum / static_cast<double>(far_n);
  EXPECT_NEAR(mean, 1.0 / 15.0, 4 * std::sqrt((1.0 / 15) * (14.0 / 15) / n_test));
}

TEST(IndependentGrid, NeedsEnoughTrainingPrompts) {
  const auto ds = random_dataset(10, 2, 1, 3, 15, 7);
  EXPECT_EQ(code_of([&] { train_independent_grid(ds, split_dataset(ds, 0.5, 1)); }), ErrorCode::insufficient_data);
}
