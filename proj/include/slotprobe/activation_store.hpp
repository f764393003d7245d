#pragma once

// On-disk activation datasets and prompt-level train/test splitting.
//
// File layout (all integers little-endian):
//   "ASLT" | version u32 (=1) | header length u32 | key/value header
//   | activations float32 [P, N*T, d] row-major | labels int32 [P, N] row-major

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "slotprobe/binary_io.hpp"
#include "slotprobe/error.hpp"
#include "slotprobe/kv_document.hpp"
#include "slotprobe/random.hpp"

namespace slotprobe {

inline constexpr std::string_view kDatasetMagic = "ASLT";
inline constexpr std::uint32_t kDatasetFormatVersion = 1;

enum class Role { user, assistant };

inline std::string_view to_string(Role r) { return r == Role::user ? "user" : "assistant"; }

inline Role parse_role(std::string_view s) {
  if (s == "user") return Role::user;
  if (s == "assistant") return Role::assistant;
  fail(ErrorCode::parse_error, "unknown role '" + std::string(s) + "'");
}

struct DatasetMeta {
  std::string model_id;
  std::int64_t layer_index = 0;
  std::size_t hidden_dim = 0;
  std::size_t num_prompts = 0;
  std::size_t entities_per_prompt = 0;
  std::size_t tokens_per_entity = 0;
  std::vector<std::string> trait_vocab;
  std::vector<Role> role_per_entity;  // empty when roles are not tracked
  std::uint32_t format_version = kDatasetFormatVersion;

  std::size_t tokens_per_prompt() const { return entities_per_prompt * tokens_per_entity; }
  std::size_t num_traits() const { return trait_vocab.size(); }

  bool operator==(const DatasetMeta&) const = default;
};

// Token position t belongs to entity floor(t / T); entity e starts at T * e.
inline std::size_t entity_of_token(std::size_t token, std::size_t tokens_per_entity) {
  return token / tokens_per_entity;
}
inline std::size_t first_token_of(std::size_t entity, std::size_t tokens_per_entity) {
  return entity * tokens_per_entity;
}

struct ActivationDataset {
  DatasetMeta meta;
  std::vector<float> activations;   // [P, N*T, d]
  std::vector<std::int32_t> labels;  // [P, N]
  std::vector<std::string> prompt_ids;

  std::size_t num_prompts() const { return meta.num_prompts; }
  std::size_t dim() const { return meta.hidden_dim; }

  std::span<const float> token(std::size_t prompt, std::size_t t) const {
    const std::size_t d = meta.hidden_dim;
    return {activations.data() + (prompt * meta.tokens_per_prompt() + t) * d, d};
  }
  std::span<float> token(std::size_t prompt, std::size_t t) {
    const std::size_t d = meta.hidden_dim;
    return {activations.data() + (prompt * meta.tokens_per_prompt() + t) * d, d};
  }

  std::int32_t label(std::size_t prompt, std::size_t entity) const {
    return labels[prompt * meta.entities_per_prompt + entity];
  }
  std::int32_t& label(std::size_t prompt, std::size_t entity) {
    return labels[prompt * meta.entities_per_prompt + entity];
  }

  bool operator==(const ActivationDataset&) const = default;

  // Allocates zeroed storage matching `m`.
  static ActivationDataset allocate(DatasetMeta m) {
    ActivationDataset ds;
    ds.activations.assign(m.num_prompts * m.tokens_per_prompt() * m.hidden_dim, 0.0f);
    ds.labels.assign(m.num_prompts * m.entities_per_prompt, 0);
    ds.prompt_ids.resize(m.num_prompts);
    ds.meta = std::move(m);
    return ds;
  }
};

inline void validate_meta(const DatasetMeta& m) {
  auto bad = [](const std::string& what) { fail(ErrorCode::invariant_violation, what); };
  if (m.hidden_dim == 0) bad("hidden_dim must be positive");
  if (m.num_prompts == 0) bad("num_prompts must be positive");
  if (m.entities_per_prompt == 0) bad("entities_per_prompt must be positive");
  if (m.tokens_per_entity == 0) bad("tokens_per_entity must be positive");
  if (m.trait_vocab.size() < 2) bad("trait_vocab needs at least two traits");
  if (std::set<std::string>(m.trait_vocab.begin(), m.trait_vocab.end()).size() != m.trait_vocab.size())
    bad("trait_vocab entries must be unique");
  if (!m.role_per_entity.empty() && m.role_per_entity.size() != m.entities_per_prompt)
    bad("role_per_entity must list one role per entity");
  if (m.format_version != kDatasetFormatVersion) bad("unsupported format_version");
}

inline void validate(const ActivationDataset& ds) {
  const auto& m = ds.meta;
  validate_meta(m);
  auto bad = [](const std::string& what) { fail(ErrorCode::invariant_violation, what); };
  if (ds.activations.size() != m.num_prompts * m.tokens_per_prompt() * m.hidden_dim)
    bad("activation tensor size does not match meta");
  if (ds.labels.size() != m.num_prompts * m.entities_per_prompt) bad("label tensor size does not match meta");
  if (ds.prompt_ids.size() != m.num_prompts) bad("need one prompt id per prompt");
  const auto c = static_cast<std::int32_t>(m.num_traits());
  for (const auto y : ds.labels)
    if (y < 0 || y >= c) bad("label " + std::to_string(y) + " outside [0, " + std::to_string(c) + ")");
  for (std::size_t i = 0; i < ds.activations.size(); ++i)
    if (!std::isfinite(ds.activations[i])) bad("non-finite activation at flat index " + std::to_string(i));
  std::set<std::string_view> seen;
  for (const auto& id : ds.prompt_ids) {
    if (id.empty()) bad("empty prompt id");
    if (!seen.insert(id).second) bad("duplicate prompt id '" + id + "'");
  }
}

namespace detail {

inline KvDocument dataset_header(const ActivationDataset& ds) {
  const auto& m = ds.meta;
  KvDocument h;
  h.set("model_id", m.model_id);
  h.set("layer_index", static_cast<std::int64_t>(m.layer_index));
  h.set("hidden_dim", m.hidden_dim);
  h.set("num_prompts", m.num_prompts);
  h.set("entities_per_prompt", m.entities_per_prompt);
  h.set("tokens_per_entity", m.tokens_per_entity);
  h.set_list("trait_vocab", m.trait_vocab);
  std::vector<std::string> roles;
  for (auto r : m.role_per_entity) roles.emplace_back(to_string(r));
  h.set_list("role_per_entity", roles);
  h.set_list("prompt_ids", ds.prompt_ids);
  return h;
}

}  // namespace detail

inline std::string serialize_dataset(const ActivationDataset& ds) {
  validate(ds);
  std::string out = binary::make_preamble(kDatasetMagic, kDatasetFormatVersion, detail::dataset_header(ds).to_string());
  out.reserve(out.size() + 4 * (ds.activations.size() + ds.labels.size()));
  for (const float v : ds.activations) binary::put_f32(out, v);
  for (const auto y : ds.labels) binary::put_i32(out, y);
  return out;
}

inline ActivationDataset deserialize_dataset(std::string_view bytes) {
  const auto container = binary::open_container(bytes, kDatasetMagic, kDatasetFormatVersion);
  const auto h = KvDocument::parse(container.header);

  ActivationDataset ds;
  auto& m = ds.meta;
  m.model_id = h.get("model_id");
  m.layer_index = h.get_int("layer_index");
  m.hidden_dim = h.get_count("hidden_dim");
  m.num_prompts = h.get_count("num_prompts");
  m.entities_per_prompt = h.get_count("entities_per_prompt");
  m.tokens_per_entity = h.get_count("tokens_per_entity");
  m.trait_vocab = h.get_list("trait_vocab");
  for (const auto& r : h.get_list("role_per_entity")) m.role_per_entity.push_back(parse_role(r));
  m.format_version = container.version;
  ds.prompt_ids = h.get_list("prompt_ids");
  validate_meta(m);

  // Declared sizes are checked against the payload before any allocation.
  const std::size_t avail = container.payload.size() / 4;
  auto times = [&](std::size_t x, std::size_t y) {
    if (y != 0 && x > avail / y) fail(ErrorCode::truncated_payload, "declared tensor sizes exceed file length");
    return x * y;
  };
  const std::size_t n_act = times(times(m.num_prompts, times(m.entities_per_prompt, m.tokens_per_entity)), m.hidden_dim);
  const std::size_t n_lab = times(m.num_prompts, m.entities_per_prompt);
  if (n_act + n_lab > avail) fail(ErrorCode::truncated_payload, "declared tensor sizes exceed file length");
  if (4 * (n_act + n_lab) < container.payload.size())
    fail(ErrorCode::invariant_violation, "trailing bytes after label tensor");

  ds.activations.resize(n_act);
  ds.labels.resize(n_lab);
  const auto payload = container.payload;
  for (std::size_t i = 0; i < ds.activations.size(); ++i) ds.activations[i] = binary::get_f32(payload, 4 * i);
  const std::size_t label_base = 4 * ds.activations.size();
  for (std::size_t i = 0; i < ds.labels.size(); ++i) ds.labels[i] = binary::get_i32(payload, label_base + 4 * i);
  validate(ds);
  return ds;
}

inline void write_dataset(const ActivationDataset& ds, const std::string& path) {
  binary::write_all(path, serialize_dataset(ds));
}

inline ActivationDataset read_dataset(const std::string& path) { return deserialize_dataset(binary::read_all(path)); }

// ---------------------------------------------------------------------------
// Splits

struct SplitAssignment {
  std::vector<std::string> train_prompt_ids;
  std::vector<std::string> test_prompt_ids;
  std::uint64_t seed = 0;

  bool operator==(const SplitAssignment&) const = default;
};

// Sorts ids, shuffles them with Rng(seed) and takes the first
// round(train_fraction * P) as the training split. The result depends only on
// the set of ids and the seed, never on dataset order.
inline SplitAssignment split_prompt_ids(std::vector<std::string> ids, double train_fraction, std::uint64_t seed) {
  require(ids.size() >= 2, ErrorCode::degenerate_split, "need at least two prompts to split");
  require(train_fraction > 0.0 && train_fraction < 1.0, ErrorCode::invalid_argument, "train_fraction must be in (0, 1)");
  std::sort(ids.begin(), ids.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::string>(ids));
  const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(ids.size())));
  require(n_train > 0 && n_train < ids.size(), ErrorCode::degenerate_split,
          "train_fraction leaves one side of the split empty");
  SplitAssignment s;
  s.seed = seed;
  s.train_prompt_ids.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test_prompt_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train), ids.end());
  return s;
}

inline SplitAssignment split_dataset(const ActivationDataset& ds, double train_fraction, std::uint64_t seed) {
  return split_prompt_ids(ds.prompt_ids, train_fraction, seed);
}

// Maps prompt ids to dataset row indices, preserving the order of `ids`.
inline std::vector<std::size_t> prompt_indices(const ActivationDataset& ds, std::span<const std::string> ids) {
  std::unordered_map<std::string_view, std::size_t> pos;
  pos.reserve(ds.prompt_ids.size());
  for (std::size_t i = 0; i < ds.prompt_ids.size(); ++i) pos.emplace(ds.prompt_ids[i], i);
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = pos.find(id);
    require(it != pos.end(), ErrorCode::invalid_argument, "prompt id '" + id + "' not in dataset");
    out.push_back(it->second);
  }
  return out;
}

inline KvDocument split_to_document(const SplitAssignment& s) {
  KvDocument doc;
  doc.set("format", "slotprobe-split");
  doc.set("version", 1);
  doc.set("seed", std::to_string(s.seed));
  doc.set_list("train", s.train_prompt_ids);
  doc.set_list("test", s.test_prompt_ids);
  return doc;
}

inline SplitAssignment split_from_document(const KvDocument& doc) {
  require(doc.get("format") == "slotprobe-split", ErrorCode::parse_error, "not a split document");
  SplitAssignment s;
  s.seed = std::stoull(doc.get("seed"));
  s.train_prompt_ids = doc.get_list("train");
  s.test_prompt_ids = doc.get_list("test");
  std::set<std::string> train(s.train_prompt_ids.begin(), s.train_prompt_ids.end());
  for (const auto& id : s.test_prompt_ids)
    require(!train.contains(id), ErrorCode::invariant_violation, "prompt '" + id + "' is in both splits");
  return s;
}

}  // namespace slotprobe
