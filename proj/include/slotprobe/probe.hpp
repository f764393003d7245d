#pragma once

// Multi-slot probe: K shared linear slot classifiers plus one router per
// entity. For activation h at token t and entity e:
//
//   alpha = softmax(R_e^T h)            routing weights over slots   [K]
//   z_k   = W_k^T h                     slot logits                  [c]
//   p     = softmax(sum_k alpha_k z_k)  trait distribution           [c]
//
// Optional biases (off by default) add b_k to z_k and a per-entity bias to
// the routing logits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "slotprobe/activation_store.hpp"
#include "slotprobe/error.hpp"
#include "slotprobe/matrix.hpp"

namespace slotprobe {

template <typename T>
struct MultiSlotProbe {
  std::size_t dim = 0;
  std::size_t traits = 0;
  std::size_t slots = 0;
  std::size_t entities = 0;
  std::vector<Matrix<T>> slot_weights;      // K x [d, c]
  std::vector<Matrix<T>> router_weights;    // E x [d, K]
  std::vector<std::vector<T>> slot_bias;    // K x [c], empty when disabled
  std::vector<std::vector<T>> router_bias;  // E x [K], empty when disabled

  static MultiSlotProbe zeros(std::size_t d, std::size_t c, std::size_t k, std::size_t e, bool with_slot_bias = false,
                              bool with_router_bias = false) {
    require(d > 0 && c >= 2 && k >= 1 && e >= 1, ErrorCode::invalid_argument, "probe dims must be positive (c >= 2)");
    MultiSlotProbe p;
    p.dim = d;
    p.traits = c;
    p.slots = k;
    p.entities = e;
    p.slot_weights.assign(k, Matrix<T>(d, c));
    p.router_weights.assign(e, Matrix<T>(d, k));
    if (with_slot_bias) p.slot_bias.assign(k, std::vector<T>(c, T{}));
    if (with_router_bias) p.router_bias.assign(e, std::vector<T>(k, T{}));
    return p;
  }

  bool has_slot_bias() const { return !slot_bias.empty(); }
  bool has_router_bias() const { return !router_bias.empty(); }

  // Parameter blocks in checkpoint order: W_1..W_K, R_0..R_{E-1}, then
  // slot biases and router biases when present.
  std::vector<std::span<T>> parameter_blocks() {
    std::vector<std::span<T>> blocks;
    for (auto& w : slot_weights) blocks.push_back(w.flat());
    for (auto& r : router_weights) blocks.push_back(r.flat());
    for (auto& b : slot_bias) blocks.push_back(b);
    for (auto& b : router_bias) blocks.push_back(b);
    return blocks;
  }
  std::vector<std::span<const T>> parameter_blocks() const {
    std::vector<std::span<const T>> blocks;
    for (auto& w : slot_weights) blocks.push_back(w.flat());
    for (auto& r : router_weights) blocks.push_back(r.flat());
    for (auto& b : slot_bias) blocks.push_back(b);
    for (auto& b : router_bias) blocks.push_back(b);
    return blocks;
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& b : parameter_blocks()) n += b.size();
    return n;
  }

  template <typename U>
  MultiSlotProbe<U> cast() const {
    MultiSlotProbe<U> out = MultiSlotProbe<U>::zeros(dim, traits, slots, entities, has_slot_bias(), has_router_bias());
    auto dst = out.parameter_blocks();
    const auto src = parameter_blocks();
    for (std::size_t b = 0; b < src.size(); ++b)
      std::transform(src[b].begin(), src[b].end(), dst[b].begin(), [](T v) { return static_cast<U>(v); });
    return out;
  }

  bool all_finite() const {
    for (const auto& b : parameter_blocks())
      for (const T v : b)
        if (!std::isfinite(v)) return false;
    return true;
  }

  bool operator==(const MultiSlotProbe&) const = default;
};

// Gradients share the probe's layout.
template <typename T>
using ProbeGradients = MultiSlotProbe<T>;

template <typename T>
struct ProbeForwardResult {
  std::vector<T> alpha;    // [K]
  Matrix<T> slot_logits;   // [K, c]
  std::vector<T> p;        // [c]
};

// One datapoint of the duplicated training set is a token position; each
// token contributes one term per entity introduced up to that token.
struct TokenRef {
  std::uint32_t prompt = 0;
  std::uint32_t token = 0;
};

// Number of (entity, token) loss terms per prompt: T * N(N+1)/2.
inline std::size_t terms_per_prompt(std::size_t entities, std::size_t tokens_per_entity) {
  return tokens_per_entity * entities * (entities + 1) / 2;
}

template <typename T>
inline void check_probe_matches(const MultiSlotProbe<T>& probe, const ActivationDataset& ds) {
  require(probe.dim == ds.meta.hidden_dim, ErrorCode::dimension_mismatch, "probe dim != dataset hidden_dim");
  require(probe.traits == ds.meta.num_traits(), ErrorCode::dimension_mismatch, "probe traits != dataset trait count");
  require(probe.entities == ds.meta.entities_per_prompt, ErrorCode::dimension_mismatch,
          "probe router count != dataset entities_per_prompt");
}

namespace detail {

// Scratch buffers for evaluating all entities at one token.
template <typename T>
class TokenKernel {
 public:
  explicit TokenKernel(const MultiSlotProbe<T>& probe)
      : probe_(probe),
        h_(probe.dim),
        z_(probe.slots, probe.traits),
        alpha_(probe.slots),
        s_(probe.traits),
        ds_(probe.traits),
        dalpha_(probe.slots),
        dr_(probe.slots),
        g_(probe.slots, probe.traits) {}

  template <typename X>
  void load(std::span<const X> h) {
    for (std::size_t i = 0; i < h_.size(); ++i) h_[i] = static_cast<T>(h[i]);
    for (std::size_t k = 0; k < probe_.slots; ++k) {
      auto zk = z_.row(k);
      transposed_matvec(probe_.slot_weights[k], std::span<const T>(h_), zk);
      if (probe_.has_slot_bias())
        for (std::size_t j = 0; j < zk.size(); ++j) zk[j] += probe_.slot_bias[k][j];
    }
  }

  // Routing weights and mixed logits for entity e at the loaded token.
  void route(std::size_t e) {
    transposed_matvec(probe_.router_weights[e], std::span<const T>(h_), std::span<T>(alpha_));
    if (probe_.has_router_bias())
      for (std::size_t k = 0; k < alpha_.size(); ++k) alpha_[k] += probe_.router_bias[e][k];
    softmax_inplace(std::span<T>(alpha_));
    std::fill(s_.begin(), s_.end(), T{});
    for (std::size_t k = 0; k < probe_.slots; ++k) {
      const auto zk = z_.row(k);
      for (std::size_t j = 0; j < s_.size(); ++j) s_[j] += alpha_[k] * zk[j];
    }
  }

  // Cross-entropy of the current mixed logits against `label`; optionally
  // accumulates router gradients for entity e and stages slot gradients.
  T cross_entropy(std::size_t e, std::size_t label, ProbeGradients<T>* grad) {
    const T lse = log_sum_exp(std::span<const T>(s_));
    const T loss = lse - s_[label];
    if (grad == nullptr) return loss;

    for (std::size_t j = 0; j < s_.size(); ++j) ds_[j] = std::exp(s_[j] - lse);
    ds_[label] -= T{1};

    T weighted = T{};
    for (std::size_t k = 0; k < probe_.slots; ++k) {
      const auto zk = z_.row(k);
      T acc{};
      for (std::size_t j = 0; j < zk.size(); ++j) acc += ds_[j] * zk[j];
      dalpha_[k] = acc;
      weighted += alpha_[k] * acc;
      auto gk = g_.row(k);
      for (std::size_t j = 0; j < gk.size(); ++j) gk[j] += alpha_[k] * ds_[j];
    }
    for (std::size_t k = 0; k < probe_.slots; ++k) dr_[k] = alpha_[k] * (dalpha_[k] - weighted);
    add_outer(grad->router_weights[e], std::span<const T>(h_), std::span<const T>(dr_));
    if (grad->has_router_bias())
      for (std::size_t k = 0; k < dr_.size(); ++k) grad->router_bias[e][k] += dr_[k];
    return loss;
  }

  void begin_token_gradient() { g_.fill(T{}); }

  void flush_slot_gradient(ProbeGradients<T>& grad) {
    for (std::size_t k = 0; k < probe_.slots; ++k) {
      const auto gk = g_.row(k);
      add_outer(grad.slot_weights[k], std::span<const T>(h_), gk);
      if (grad.has_slot_bias())
        for (std::size_t j = 0; j < gk.size(); ++j) grad.slot_bias[k][j] += gk[j];
    }
  }

  // Loss (and gradient) over all entities introduced up to token t.
  T token_terms(std::size_t t, std::size_t tokens_per_entity, std::span<const std::int32_t> labels,
                ProbeGradients<T>* grad) {
    const std::size_t n_ent = std::min(entity_of_token(t, tokens_per_entity) + 1, probe_.entities);
    if (grad) begin_token_gradient();
    T loss{};
    for (std::size_t e = 0; e < n_ent; ++e) {
      route(e);
      loss += cross_entropy(e, static_cast<std::size_t>(labels[e]), grad);
    }
    if (grad) flush_slot_gradient(*grad);
    return loss;
  }

  std::span<const T> alpha() const { return alpha_; }
  std::span<const T> mixed_logits() const { return s_; }
  const Matrix<T>& slot_logits() const { return z_; }

 private:
  const MultiSlotProbe<T>& probe_;
  std::vector<T> h_;
  Matrix<T> z_;
  std::vector<T> alpha_;
  std::vector<T> s_;
  std::vector<T> ds_;
  std::vector<T> dalpha_;
  std::vector<T> dr_;
  Matrix<T> g_;
};

inline std::span<const std::int32_t> prompt_labels(const ActivationDataset& ds, std::size_t prompt) {
  return {ds.labels.data() + prompt * ds.meta.entities_per_prompt, ds.meta.entities_per_prompt};
}

}  // namespace detail

template <typename T, typename X>
ProbeForwardResult<T> probe_forward(const MultiSlotProbe<T>& probe, std::span<const X> h, std::size_t entity) {
  require(entity < probe.entities, ErrorCode::entity_out_of_range,
          "entity " + std::to_string(entity) + " >= E=" + std::to_string(probe.entities));
  require(h.size() == probe.dim, ErrorCode::dimension_mismatch, "activation length != probe dim");
  for (const X v : h) require(std::isfinite(static_cast<double>(v)), ErrorCode::non_finite_input, "activation not finite");

  detail::TokenKernel<T> kernel(probe);
  kernel.load(h);
  kernel.route(entity);
  ProbeForwardResult<T> out;
  out.alpha.assign(kernel.alpha().begin(), kernel.alpha().end());
  out.slot_logits = kernel.slot_logits();
  out.p.assign(kernel.mixed_logits().begin(), kernel.mixed_logits().end());
  softmax_inplace(std::span<T>(out.p));
  return out;
}

// Summed cross-entropy over every prompt in `prompts`, every entity e and
// every token t >= t_e (the duplicated datapoints).
template <typename T>
double probe_loss(const MultiSlotProbe<T>& probe, const ActivationDataset& ds, std::span<const std::size_t> prompts) {
  check_probe_matches(probe, ds);
  detail::TokenKernel<T> kernel(probe);
  const std::size_t tpe = ds.meta.tokens_per_entity;
  double total = 0.0;
  for (const std::size_t p : prompts) {
    const auto labels = detail::prompt_labels(ds, p);
    for (std::size_t t = 0; t < ds.meta.tokens_per_prompt(); ++t) {
      kernel.load(ds.token(p, t));
      total += static_cast<double>(kernel.token_terms(t, tpe, labels, nullptr));
    }
  }
  return total;
}

template <typename T>
struct GradientResult {
  double loss = 0.0;
  ProbeGradients<T> grad;
};

// Exact gradient of the summed loss over the token positions in `batch`.
template <typename T>
GradientResult<T> probe_gradients(const MultiSlotProbe<T>& probe, const ActivationDataset& ds,
                                  std::span<const TokenRef> batch) {
  check_probe_matches(probe, ds);
  require(!batch.empty(), ErrorCode::invalid_argument, "empty batch");
  GradientResult<T> out;
  out.grad = ProbeGradients<T>::zeros(probe.dim, probe.traits, probe.slots, probe.entities, probe.has_slot_bias(),
                                      probe.has_router_bias());
  detail::TokenKernel<T> kernel(probe);
  const std::size_t tpe = ds.meta.tokens_per_entity;
  for (const TokenRef& ref : batch) {
    require(ref.prompt < ds.num_prompts() && ref.token < ds.meta.tokens_per_prompt(), ErrorCode::dimension_mismatch,
            "token reference outside dataset");
    kernel.load(ds.token(ref.prompt, ref.token));
    out.loss += static_cast<double>(kernel.token_terms(ref.token, tpe, detail::prompt_labels(ds, ref.prompt), &out.grad));
  }
  return out;
}

// All token positions of the given prompts, prompt-major.
inline std::vector<TokenRef> all_tokens(const ActivationDataset& ds, std::span<const std::size_t> prompts) {
  std::vector<TokenRef> refs;
  refs.reserve(prompts.size() * ds.meta.tokens_per_prompt());
  for (const std::size_t p : prompts)
    for (std::size_t t = 0; t < ds.meta.tokens_per_prompt(); ++t)
      refs.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(t)});
  return refs;
}

}  // namespace slotprobe
