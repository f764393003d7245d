#pragma once

// Probe checkpoint: "ASPB", u32 version, u32 header length, key/value header,
// then little-endian float32 blocks W_1..W_K, R_0..R_{E-1}, then slot and
// router biases when present.

#include <string>
#include <string_view>
#include <vector>

#include "slotprobe/binary_io.hpp"
#include "slotprobe/error.hpp"
#include "slotprobe/kv_document.hpp"
#include "slotprobe/probe.hpp"

namespace slotprobe {

inline constexpr std::string_view kCheckpointMagic = "ASPB";
inline constexpr std::uint32_t kCheckpointFormatVersion = 1;

struct ProbeCheckpoint {
  MultiSlotProbe<float> probe;
  std::vector<std::string> trait_vocab;  // optional
  KvDocument extra;                      // free-form provenance (training config etc.)

  bool operator==(const ProbeCheckpoint& o) const {
    return probe == o.probe && trait_vocab == o.trait_vocab && extra.entries() == o.extra.entries();
  }
};

inline std::string serialize_checkpoint(const ProbeCheckpoint& ck) {
  const auto& p = ck.probe;
  require(p.all_finite(), ErrorCode::invariant_violation, "refusing to write a probe with non-finite weights");
  require(ck.trait_vocab.empty() || ck.trait_vocab.size() == p.traits, ErrorCode::invariant_violation,
          "trait_vocab size != probe traits");
  KvDocument h;
  h.set("dim", p.dim);
  h.set("traits", p.traits);
  h.set("slots", p.slots);
  h.set("entities", p.entities);
  h.set("slot_bias", p.has_slot_bias());
  h.set("router_bias", p.has_router_bias());
  h.set_list("trait_vocab", ck.trait_vocab);
  for (const auto& [k, v] : ck.extra.entries()) h.set("extra." + k, v);

  std::string out = binary::make_preamble(kCheckpointMagic, kCheckpointFormatVersion, h.to_string());
  out.reserve(out.size() + 4 * p.parameter_count());
  for (const auto& block : p.parameter_blocks())
    for (const float v : block) binary::put_f32(out, v);
  return out;
}

inline ProbeCheckpoint deserialize_checkpoint(std::string_view bytes) {
  const auto container = binary::open_container(bytes, kCheckpointMagic, kCheckpointFormatVersion);
  const auto h = KvDocument::parse(container.header);

  ProbeCheckpoint ck;
  const std::size_t d = h.get_count("dim");
  const std::size_t c = h.get_count("traits");
  const std::size_t k = h.get_count("slots");
  const std::size_t e = h.get_count("entities");
  require(d <= (1u << 24) && c <= (1u << 20) && k <= 4096 && e <= 4096, ErrorCode::invariant_violation,
          "implausible checkpoint dimensions");
  ck.probe = MultiSlotProbe<float>::zeros(d, c, k, e, h.get_bool("slot_bias"), h.get_bool("router_bias"));
  ck.trait_vocab = h.get_list("trait_vocab");
  require(ck.trait_vocab.empty() || ck.trait_vocab.size() == c, ErrorCode::invariant_violation,
          "trait_vocab size != traits");
  for (const auto& [key, v] : h.entries())
    if (key.starts_with("extra.")) ck.extra.set(key.substr(6), v);

  const std::size_t need = 4 * ck.probe.parameter_count();
  if (need > container.payload.size()) fail(ErrorCode::truncated_payload, "declared weight blocks exceed file length");
  if (need < container.payload.size()) fail(ErrorCode::invariant_violation, "trailing bytes after weight blocks");
  std::size_t offset = 0;
  for (auto block : ck.probe.parameter_blocks())
    for (float& v : block) {
      v = binary::get_f32(container.payload, offset);
      offset += 4;
    }
  require(ck.probe.all_finite(), ErrorCode::invariant_violation, "checkpoint contains non-finite weights");
  return ck;
}

inline void write_checkpoint(const ProbeCheckpoint& ck, const std::string& path) {
  binary::write_all(path, serialize_checkpoint(ck));
}

inline ProbeCheckpoint read_checkpoint(const std::string& path) {
  return deserialize_checkpoint(binary::read_all(path));
}

}  // namespace slotprobe
