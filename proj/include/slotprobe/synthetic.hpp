#pragma once

// Synthetic activations with planted slot structure.
//
// Every scheme owns one unit direction per trait. A token of entity e gets,
// for each scheme, the direction of the trait of whichever entity that
// scheme's placement rule points at, plus an optional per-entity position
// direction, a shared base offset and isotropic Gaussian noise:
//
//   h = base + sum_k gain_k * D_k[y_src(k, e)] + position_gain * U[e] + sigma * n
//
// All trait and position directions are mutually orthonormal.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotprobe/activation_store.hpp"
#include "slotprobe/error.hpp"
#include "slotprobe/matrix.hpp"
#include "slotprobe/random.hpp"

namespace slotprobe {

enum class Placement {
  current,            // entity e's own trait
  prior,              // trait of entity e-1 (e >= 1)
  first_entity,       // trait of entity 0 on every later entity (e >= 1)
  same_role_history,  // trait of entity e-2 (e >= 2), the previous same-speaker turn
};

inline std::string_view to_string(Placement p) {
  switch (p) {
    case Placement::current: return "current";
    case Placement::prior: return "prior";
    case Placement::first_entity: return "first-entity";
    case Placement::same_role_history: return "same-role-history";
  }
  return "?";
}

inline Placement parse_placement(std::string_view s) {
  if (s == "current") return Placement::current;
  if (s == "prior") return Placement::prior;
  if (s == "first-entity" || s == "first") return Placement::first_entity;
  if (s == "same-role-history" || s == "same-role") return Placement::same_role_history;
  fail(ErrorCode::invalid_argument, "unknown placement '" + std::string(s) + "'");
}

// Entity whose trait the placement writes onto entity `e`'s tokens, or -1.
inline std::ptrdiff_t placement_source(Placement p, std::size_t e) {
  const auto i = static_cast<std::ptrdiff_t>(e);
  switch (p) {
    case Placement::current: return i;
    case Placement::prior: return i >= 1 ? i - 1 : -1;
    case Placement::first_entity: return i >= 1 ? 0 : -1;
    case Placement::same_role_history: return i >= 2 ? i - 2 : -1;
  }
  return -1;
}

struct SlotScheme {
  Placement placement = Placement::current;
  Matrix<double> directions;  // [c, d], unit rows
};

struct SlotBank {
  std::vector<SlotScheme> schemes;
  Matrix<double> position_directions;  // [n_positions, d], may be empty
  std::vector<double> base_offset;     // [d]
  double noise_sigma = 0.0;

  std::size_t dim() const { return base_offset.size(); }
  std::size_t traits() const { return schemes.empty() ? 0 : schemes.front().directions.rows(); }

  const SlotScheme* find(Placement p) const {
    for (const auto& s : schemes)
      if (s.placement == p) return &s;
    return nullptr;
  }
};

struct SlotBankOptions {
  double noise_sigma = 0.0;
  std::size_t position_slots = 0;
  double base_offset_norm = 1.0;
};

// Orthonormal rows via modified Gram-Schmidt, applied twice for stability.
inline Matrix<double> random_orthonormal_rows(std::size_t count, std::size_t dim, Rng& rng) {
  Matrix<double> m(count, dim);
  for (auto& v : m.flat()) v = rng.normal();
  for (std::size_t i = 0; i < count; ++i) {
    auto ri = m.row(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto rj = m.row(j);
        const double proj = dot(std::span<const double>(ri), rj);
        for (std::size_t k = 0; k < dim; ++k) ri[k] -= proj * rj[k];
      }
    }
    const double n = norm(std::span<const double>(ri));
    require(n > 1e-12, ErrorCode::dimension_too_small, "degenerate orthogonalization");
    for (auto& v : ri) v /= n;
  }
  return m;
}

inline SlotBank make_slot_bank(std::size_t dim, std::size_t traits, std::span<const Placement> placements,
                               std::uint64_t seed, const SlotBankOptions& options = {}) {
  require(!placements.empty(), ErrorCode::invalid_argument, "need at least one scheme");
  require(traits >= 2, ErrorCode::invalid_argument, "need at least two traits");
  const std::size_t needed = placements.size() * traits + options.position_slots;
  require(dim >= needed, ErrorCode::dimension_too_small,
          "d=" + std::to_string(dim) + " cannot hold " + std::to_string(needed) + " orthonormal directions");
  require(options.noise_sigma >= 0.0, ErrorCode::invalid_argument, "noise_sigma must be >= 0");

  Rng rng(seed);
  const Matrix<double> basis = random_orthonormal_rows(needed, dim, rng);

  SlotBank bank;
  bank.noise_sigma = options.noise_sigma;
  std::size_t next = 0;
  for (const Placement p : placements) {
    SlotScheme s;
    s.placement = p;
    s.directions = Matrix<double>(traits, dim);
    for (std::size_t x = 0; x < traits; ++x, ++next)
      std::copy(basis.row(next).begin(), basis.row(next).end(), s.directions.row(x).begin());
    bank.schemes.push_back(std::move(s));
  }
  bank.position_directions = Matrix<double>(options.position_slots, dim);
  for (std::size_t i = 0; i < options.position_slots; ++i, ++next)
    std::copy(basis.row(next).begin(), basis.row(next).end(), bank.position_directions.row(i).begin());

  bank.base_offset.resize(dim);
  for (auto& v : bank.base_offset) v = rng.normal();
  const double n = norm(std::span<const double>(bank.base_offset));
  for (auto& v : bank.base_offset) v *= options.base_offset_norm / n;
  return bank;
}

struct SyntheticConfig {
  std::size_t num_prompts = 1000;
  std::size_t entities = 8;
  std::size_t tokens_per_entity = 4;
  std::size_t dim = 64;
  std::size_t traits = 15;
  std::uint64_t seed = 0;
  double position_gain = 0.0;
  std::vector<double> scheme_gains;      // one per bank scheme; empty means all 1
  std::vector<std::string> trait_names;  // empty means trait_0 .. trait_{c-1}
  std::vector<Role> roles;               // optional, one per entity
  std::string model_id = "synthetic";
  std::int64_t layer_index = 0;
};

inline std::string synthetic_prompt_id(std::size_t p) {
  std::string digits = std::to_string(p);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return "synth-" + digits;
}

inline ActivationDataset generate_synthetic(const SyntheticConfig& cfg, const SlotBank& bank) {
  auto mismatch = [](const std::string& what) { fail(ErrorCode::config_bank_mismatch, what); };
  if (cfg.dim != bank.dim()) mismatch("config dim " + std::to_string(cfg.dim) + " != bank dim " + std::to_string(bank.dim()));
  if (cfg.traits != bank.traits()) mismatch("config traits != bank traits");
  if (!cfg.scheme_gains.empty() && cfg.scheme_gains.size() != bank.schemes.size())
    mismatch("scheme_gains must list one gain per scheme");
  if (cfg.position_gain != 0.0 && bank.position_directions.rows() < cfg.entities)
    mismatch("position_gain set but bank has fewer position directions than entities");
  if (!cfg.trait_names.empty() && cfg.trait_names.size() != cfg.traits) mismatch("trait_names size != traits");

  DatasetMeta meta;
  meta.model_id = cfg.model_id;
  meta.layer_index = cfg.layer_index;
  meta.hidden_dim = cfg.dim;
  meta.num_prompts = cfg.num_prompts;
  meta.entities_per_prompt = cfg.entities;
  meta.tokens_per_entity = cfg.tokens_per_entity;
  meta.role_per_entity = cfg.roles;
  if (cfg.trait_names.empty()) {
    for (std::size_t x = 0; x < cfg.traits; ++x) meta.trait_vocab.push_back("trait_" + std::to_string(x));
  } else {
    meta.trait_vocab = cfg.trait_names;
  }
  validate_meta(meta);

  ActivationDataset ds = ActivationDataset::allocate(meta);
  const std::size_t d = cfg.dim;
  std::vector<double> h(d);

  // Each prompt draws from its own derived stream, so prompts are
  // independent of generation order.
  for (std::size_t p = 0; p < cfg.num_prompts; ++p) {
    Rng rng(derive_seed(cfg.seed, p));
    ds.prompt_ids[p] = synthetic_prompt_id(p);
    for (std::size_t e = 0; e < cfg.entities; ++e)
      ds.label(p, e) = static_cast<std::int32_t>(rng.below(cfg.traits));

    for (std::size_t e = 0; e < cfg.entities; ++e) {
      for (std::size_t j = 0; j < cfg.tokens_per_entity; ++j) {
        std::copy(bank.base_offset.begin(), bank.base_offset.end(), h.begin());
        for (std::size_t k = 0; k < bank.schemes.size(); ++k) {
          const auto src = placement_source(bank.schemes[k].placement, e);
          if (src < 0) continue;
          const double gain = cfg.scheme_gains.empty() ? 1.0 : cfg.scheme_gains[k];
          const auto dir = bank.schemes[k].directions.row(static_cast<std::size_t>(ds.label(p, static_cast<std::size_t>(src))));
          for (std::size_t i = 0; i < d; ++i) h[i] += gain * dir[i];
        }
        if (cfg.position_gain != 0.0) {
          const auto u = bank.position_directions.row(e);
          for (std::size_t i = 0; i < d; ++i) h[i] += cfg.position_gain * u[i];
        }
        if (bank.noise_sigma > 0.0)
          for (std::size_t i = 0; i < d; ++i) h[i] += bank.noise_sigma * rng.normal();

        auto out = ds.token(p, first_token_of(e, cfg.tokens_per_entity) + j);
        for (std::size_t i = 0; i < d; ++i) out[i] = static_cast<float>(h[i]);
      }
    }
  }
  return ds;
}

}  // namespace slotprobe
