#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "slotprobe/evaluation.hpp"
#include "slotprobe/probe.hpp"

using namespace slotprobe;
using namespace slotprobe::testing;

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

std::vector<std::size_t> all_prompts(const ActivationDataset& ds) {
  std::vector<std::size_t> v(ds.num_prompts());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

double max_relative_fd_error(MultiSlotProbe<double> q, const ActivationDataset& ds) {
  const auto prompts = all_prompts(ds);
  const auto refs = all_tokens(ds, prompts);
  const auto g = probe_gradients(q, ds, refs);
  const auto gblocks = g.grad.parameter_blocks();
  auto blocks = q.parameter_blocks();
  const double h = 1e-4;
  double worst = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      const double orig = blocks[b][i];
      blocks[b][i] = orig + h;
      const double up = naive_loss(q, ds);
      blocks[b][i] = orig - h;
      const double down = naive_loss(q, ds);
      blocks[b][i] = orig;
      const double fd = (up - down) / (2 * h);
      const double an = gblocks[b][i];
      worst = std::max(worst, std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-8}));
    }
  return worst;
}

}  // namespace

TEST(ProbeForward, ZeroRouterGivesUniformAlpha) {
  auto q = random_probe<double>(5, 4, 3, 2, 1);
  for (auto& v : q.router_weights[1].flat()) v = 0;
  const std::vector<double> h{0.3, -1, 2, 0.5, 0.1};
  const auto out = probe_forward(q, std::span<const double>(h), 1);
  for (double a : out.alpha) EXPECT_NEAR(a, 1.0 / 3.0, 1e-15);
}

TEST(ProbeForward, SingleSlotIsPlainSoftmax) {
  const auto q = random_probe<double>(6, 5, 1, 3, 2);
  const std::vector<double> h{0.2, -0.4, 1.1, 0.0, -2.0, 0.7};
  const auto out = probe_forward(q, std::span<const double>(h), 2);
  std::vector<double> z(5, 0.0);
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t i = 0; i < 6; ++i) z[j] += q.slot_weights[0](i, j) * h[i];
  const auto p = naive_softmax(z);
  EXPECT_EQ(out.alpha[0], 1.0);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(out.p[j], p[j], 1e-15);
}

TEST(ProbeForward, MatchesScalarReference) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const bool biases = seed % 2 == 1;
    const auto q = random_probe<double>(4, 3, 2, 2, seed, biases, 1.0);
    Rng rng(seed + 100);
    std::vector<double> h(4);
    for (auto& v : h) v = rng.normal();
    for (std::size_t e = 0; e < 2; ++e) {
      const auto out = probe_forward(q, std::span<const double>(h), e);
      const auto ref = naive_forward(q, std::span<const double>(h), e);
      double sa = 0, sp = 0;
      for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_NEAR(out.alpha[k], ref.alpha[k], 1e-9);
        sa += out.alpha[k];
      }
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_NEAR(out.p[j], ref.p[j], 1e-9);
        sp += out.p[j];
      }
      EXPECT_NEAR(sa, 1.0, 1e-12);
      EXPECT_NEAR(sp, 1.0, 1e-12);
    }
  }
}

TEST(ProbeForward, StableForLargeLogits) {
  auto q = MultiSlotProbe<float>::zeros(2, 3, 2, 1);
  q.slot_weights[0](0, 1) = 1e4f;
  q.router_weights[0](1, 0) = 1e4f;
  const std::vector<float> h{1.0f, 1.0f};
  const auto out = probe_forward(q, std::span<const float>(h), 0);
  EXPECT_NEAR(out.alpha[0], 1.0f, 1e-6);
  EXPECT_NEAR(out.p[1], 1.0f, 1e-6);
  for (float v : out.p) EXPECT_TRUE(std::isfinite(v));
}

TEST(ProbeForward, Errors) {
  const auto q = random_probe<double>(3, 3, 2, 2, 3);
  const std::vector<double> h{1, 2, 3}, nan{1, NAN, 3}, shortv{1, 2};
  EXPECT_EQ(code_of([&] { probe_forward(q, std::span<const double>(h), 2); }), ErrorCode::entity_out_of_range);
  EXPECT_EQ(code_of([&] { probe_forward(q, std::span<const double>(nan), 0); }), ErrorCode::non_finite_input);
  EXPECT_EQ(code_of([&] { probe_forward(q, std::span<const double>(shortv), 0); }), ErrorCode::dimension_mismatch);
}

TEST(ProbeLoss, TermCount) {
  EXPECT_EQ(terms_per_prompt(8, 4), 144u);
  EXPECT_EQ(terms_per_prompt(1, 1), 1u);
  EXPECT_EQ(terms_per_prompt(3, 2), 12u);
  const auto ds = random_dataset(2, 8, 4, 3, 4, 1);
  std::size_t n = 0;
  naive_loss(MultiSlotProbe<double>::zeros(3, 4, 2, 8), ds, &n);
  EXPECT_EQ(n, 288u);
}

TEST(ProbeLoss, UniformProbe) {
  const auto ds = random_dataset(3, 8, 4, 5, 15, 2);
  const auto q = MultiSlotProbe<float>::zeros(5, 15, 3, 8);
  const auto prompts = all_prompts(ds);
  EXPECT_NEAR(probe_loss(q, ds, prompts), 3 * 144 * std::log(15.0), 1e-3);
}

TEST(ProbeLoss, MatchesNaiveOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto ds = random_dataset(3, 3, 2, 5, 4, seed);
    const auto q = random_probe<double>(5, 4, 3, 3, seed + 50, seed % 2 == 0);
    const auto prompts = all_prompts(ds);
    const double ref = naive_loss(q, ds);
    EXPECT_NEAR(probe_loss(q, ds, prompts), ref, 1e-9 * std::abs(ref));
    // float kernel against the same parameters
    EXPECT_NEAR(probe_loss(q.cast<float>(), ds, prompts), naive_loss(q.cast<float>(), ds), 1e-5 * std::abs(ref));
  }
}

TEST(ProbeLoss, SubsetSelectsPrompts) {
  const auto ds = random_dataset(4, 2, 2, 3, 3, 4);
  const auto q = random_probe<double>(3, 3, 2, 2, 5);
  const std::vector<std::size_t> a{0, 2}, b{1, 3}, all{0, 1, 2, 3};
  EXPECT_NEAR(probe_loss(q, ds, a) + probe_loss(q, ds, b), probe_loss(q, ds, all), 1e-10);
}

TEST(ProbeLoss, DimensionMismatch) {
  const auto ds = random_dataset(2, 2, 2, 3, 3, 4);
  const std::vector<std::size_t> all{0, 1};
  EXPECT_EQ(code_of([&] { probe_loss(MultiSlotProbe<double>::zeros(4, 3, 2, 2), ds, all); }), ErrorCode::dimension_mismatch);
  EXPECT_EQ(code_of([&] { probe_loss(MultiSlotProbe<double>::zeros(3, 4, 2, 2), ds, all); }), ErrorCode::dimension_mismatch);
  EXPECT_EQ(code_of([&] { probe_loss(MultiSlotProbe<double>::zeros(3, 3, 2, 3), ds, all); }), ErrorCode::dimension_mismatch);
}

TEST(ProbeGradients, MatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ds = random_dataset(2, 2, 2, 8, 3, seed);
    EXPECT_LE(max_relative_fd_error(random_probe<double>(8, 3, 2, 2, seed + 10), ds), 1e-4);
  }
  const auto ds = random_dataset(2, 3, 2, 4, 3, 9);
  EXPECT_LE(max_relative_fd_error(random_probe<double>(4, 3, 3, 3, 11, true), ds), 1e-4);
}

TEST(ProbeGradients, VanishAtStationaryPoint) {
  // Same activation, opposite labels: the uniform prediction is the optimum
  // whatever the routers do.
  DatasetMeta m;
  m.hidden_dim = 3;
  m.num_prompts = 2;
  m.entities_per_prompt = 1;
  m.tokens_per_entity = 2;
  m.trait_vocab = {"a", "b"};
  auto ds = ActivationDataset::allocate(m);
  for (std::size_t p = 0; p < 2; ++p) {
    ds.prompt_ids[p] = "p" + std::to_string(p);
    for (std::size_t t = 0; t < 2; ++t) {
      auto h = ds.token(p, t);
      h[0] = 1.0f, h[1] = -0.5f, h[2] = 2.0f;
    }
  }
  ds.labels = {0, 1};
  auto q = random_probe<double>(3, 2, 2, 1, 3);
  for (auto& w : q.slot_weights)
    for (std::size_t i = 0; i < 3; ++i) w(i, 1) = w(i, 0);
  const std::vector<std::size_t> all{0, 1};
  const auto g = probe_gradients(q, ds, all_tokens(ds, all));
  double n2 = 0;
  for (const auto b : std::as_const(g.grad).parameter_blocks())
    for (double v : b) n2 += v * v;
  EXPECT_LE(std::sqrt(n2), 1e-6);
  EXPECT_NEAR(g.loss, 4 * std::log(2.0), 1e-12);
}

TEST(ProbeGradients, DuplicatedBatchDoublesGradient) {
  const auto ds = random_dataset(3, 2, 2, 4, 3, 12);
  const auto q = random_probe<double>(4, 3, 2, 2, 13, true);
  const std::vector<std::size_t> all{0, 1, 2};
  const auto refs = all_tokens(ds, all);
  auto twice = refs;
  twice.insert(twice.end(), refs.begin(), refs.end());
  const auto g1 = probe_gradients(q, ds, refs);
  const auto g2 = probe_gradients(q, ds, twice);
  EXPECT_NEAR(g2.loss, 2 * g1.loss, 1e-12);
  const auto b1 = std::as_const(g1.grad).parameter_blocks();
  const auto b2 = std::as_const(g2.grad).parameter_blocks();
  for (std::size_t b = 0; b < b1.size(); ++b)
    for (std::size_t i = 0; i < b1[b].size(); ++i) EXPECT_NEAR(b2[b][i], 2 * b1[b][i], 1e-12);
  EXPECT_EQ(code_of([&] { probe_gradients(q, ds, std::span<const TokenRef>()); }), ErrorCode::invalid_argument);
}

TEST(Heatmap, HandCountedTwoPromptDataset) {
  // Identity slot classifier over one-hot activations; predictions are
  // the index of the hot coordinate.
  DatasetMeta m;
  m.hidden_dim = 3;
  m.num_prompts = 2;
  m.entities_per_prompt = 2;
  m.tokens_per_entity = 1;
  m.trait_vocab = {"a", "b", "c"};
  auto ds = ActivationDataset::allocate(m);
  ds.prompt_ids = {"x", "y"};
  ds.labels = {0, 1, 2, 2};
  const int hot[2][2] = {{0, 1}, {1, 2}};
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t t = 0; t < 2; ++t) ds.token(p, t)[static_cast<std::size_t>(hot[p][t])] = 1.0f;
  auto q = MultiSlotProbe<double>::zeros(3, 3, 1, 2);
  for (std::size_t i = 0; i < 3; ++i) q.slot_weights[0](i, i) = 1.0;

  // cells: (t0,e0): x->0 vs 0 ok, y->1 vs 2 no
  //        (t1,e0): x->1 vs 0 no, y->2 vs 2 ok
  //        (t1,e1): x->1 vs 1 ok, y->2 vs 2 ok
  const std::vector<std::size_t> all{0, 1};
  const auto hm = evaluate_heatmap(q, ds, all);
  EXPECT_EQ(hm.total_count, 6u);
  EXPECT_EQ(hm.total_correct, 4u);
  EXPECT_DOUBLE_EQ(hm.overall(), 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(hm.accuracy(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(hm.accuracy(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(hm.accuracy(1, 1), 1.0);
  EXPECT_TRUE(hm.masked(0, 1));
  EXPECT_EQ(hm.counts(0, 1), 0u);
}

TEST(Heatmap, UniformProbeScoresChance) {
  // argmax ties go to index 0, so each cell measures how often label 0 occurs
  const auto ds = random_dataset(1500, 2, 1, 3, 15, 21);
  const auto q = MultiSlotProbe<float>::zeros(3, 15, 2, 2);
  std::vector<std::size_t> all(1500);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto hm = evaluate_heatmap(q, ds, all);
  const double p0 = 1.0 / 15.0, half = 3.29 * std::sqrt(p0 * (1 - p0) / 1500.0);
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t e = 0; e <= t; ++e) EXPECT_NEAR(hm.accuracy(t, e), p0, half);
}

TEST(Heatmap, RoutingIsNormalizedAndMasked) {
  const auto ds = random_dataset(20, 3, 2, 4, 3, 22);
  const auto q = random_probe<float>(4, 3, 3, 3, 23);
  std::vector<std::size_t> all(20);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto r = routing_heatmap(q, ds, all);
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t e = 0; e < 3; ++e) {
      double s = 0;
      for (const auto& m : r.mass) s += m(t, e);
      EXPECT_NEAR(s, r.masked(t, e) ? 0.0 : 1.0, 1e-6);
    }
  const auto one = routing_heatmap(random_probe<float>(4, 3, 1, 3, 24), ds, all);
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t e = 0; e <= t / 2; ++e) EXPECT_NEAR(one.mass[0](t, e), 1.0, 1e-12);
  EXPECT_EQ(code_of([&] { routing_heatmap(q, ds, std::span<const std::size_t>()); }), ErrorCode::empty_split);
  EXPECT_EQ(code_of([&] { evaluate_heatmap(q, ds, std::span<const std::size_t>()); }), ErrorCode::empty_split);
}

TEST(Heatmap, DocumentRoundTrip) {
  const auto ds = random_dataset(10, 3, 2, 4, 3, 25);
  std::vector<std::size_t> all(10);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto hm = evaluate_heatmap(random_probe<float>(4, 3, 2, 3, 26), ds, all);
  const auto back = heatmap_from_document(KvDocument::parse(accuracy_to_document(hm).to_string()));
  EXPECT_EQ(back.layout, hm.layout);
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t e = 0; e < 3; ++e)
      if (!hm.masked(t, e)) EXPECT_EQ(back.values(t, e), hm.accuracy(t, e));
}
