#include <gtest/gtest.h>

#include <cstring>
#include <set>

#include "helpers.hpp"
#include "slotprobe/activation_store.hpp"
#include "slotprobe/checkpoint.hpp"
#include "slotprobe/training.hpp"

using namespace slotprobe;
using slotprobe::testing::random_dataset;
using slotprobe::testing::TempDir;

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

// Rewrites the header of a serialized container, keeping the payload.
std::string with_header(const std::string& bytes, const std::string& header) {
  const auto len = binary::get_u32(bytes, 8);
  std::string out = bytes.substr(0, 8);
  binary::put_u32(out, static_cast<std::uint32_t>(header.size()));
  out += header;
  out += bytes.substr(12 + len);
  return out;
}

std::string header_of(const std::string& bytes) { return bytes.substr(12, binary::get_u32(bytes, 8)); }

std::string replace_line(std::string text, const std::string& key, const std::string& value) {
  const auto at = text.find(key + "=");
  const auto end = text.find('\n', at);
  return text.replace(at, end - at, key + "=" + value);
}

}  // namespace

TEST(ActivationStore, RoundTripIsBitExact) {
  auto ds = random_dataset(5, 3, 2, 4, 6, 1);
  ds.meta.model_id = "model with spaces\nand newline";
  ds.meta.layer_index = -3;
  ds.meta.role_per_entity = {Role::user, Role::assistant, Role::user};
  ds.activations[7] = -0.0f;
  ds.activations[8] = std::numeric_limits<float>::denorm_min();
  const std::string bytes = serialize_dataset(ds);
  const auto back = deserialize_dataset(bytes);
  EXPECT_EQ(back, ds);
  EXPECT_EQ(serialize_dataset(back), bytes);
  EXPECT_EQ(std::memcmp(back.activations.data(), ds.activations.data(), 4 * ds.activations.size()), 0);
}

TEST(ActivationStore, FileLayout) {
  const auto ds = random_dataset(2, 2, 1, 3, 2, 2);
  const std::string bytes = serialize_dataset(ds);
  EXPECT_EQ(bytes.substr(0, 4), "ASLT");
  EXPECT_EQ(binary::get_u32(bytes, 4), 1u);
  const std::size_t payload = 12 + binary::get_u32(bytes, 8);
  ASSERT_EQ(bytes.size(), payload + 4 * (ds.activations.size() + ds.labels.size()));
  // activations first in [P, N*T, d] order, then int32 labels
  EXPECT_EQ(binary::get_f32(bytes, payload), ds.token(0, 0)[0]);
  EXPECT_EQ(binary::get_f32(bytes, payload + 4 * 3), ds.token(0, 1)[0]);
  EXPECT_EQ(binary::get_i32(bytes, payload + 4 * ds.activations.size()), ds.label(0, 0));
}

TEST(ActivationStore, FileRoundTrip) {
  TempDir dir("store");
  const auto ds = random_dataset(4, 2, 3, 5, 3, 3);
  write_dataset(ds, dir.file("a.spa"));
  EXPECT_EQ(read_dataset(dir.file("a.spa")), ds);
}

TEST(ActivationStore, CorruptedFilesRaiseDesignatedErrors) {
  const auto ds = random_dataset(3, 2, 2, 4, 3, 4);
  const std::string bytes = serialize_dataset(ds);
  const std::string header = header_of(bytes);

  std::string magic = bytes;
  magic[0] = 'X';
  EXPECT_EQ(code_of([&] { deserialize_dataset(magic); }), ErrorCode::bad_magic);

  std::string version = bytes;
  version[4] = 9;
  EXPECT_EQ(code_of([&] { deserialize_dataset(version); }), ErrorCode::version_unsupported);

  EXPECT_EQ(code_of([&] { deserialize_dataset(bytes.substr(0, bytes.size() - 1)); }), ErrorCode::truncated_payload);
  EXPECT_EQ(code_of([&] { deserialize_dataset(bytes.substr(0, 20)); }), ErrorCode::truncated_payload);
  EXPECT_EQ(code_of([&] { deserialize_dataset(bytes + "xxxx"); }), ErrorCode::invariant_violation);

  // header claims more prompts than the payload holds
  EXPECT_EQ(code_of([&] { deserialize_dataset(with_header(bytes, replace_line(header, "num_prompts", "4"))); }),
            ErrorCode::truncated_payload);
  // huge declared sizes must not overflow or allocate
  EXPECT_EQ(code_of([&] {
              deserialize_dataset(with_header(bytes, replace_line(header, "hidden_dim", "4611686018427387904")));
            }),
            ErrorCode::truncated_payload);
  EXPECT_EQ(code_of([&] { deserialize_dataset(with_header(bytes, replace_line(header, "hidden_dim", "abc"))); }),
            ErrorCode::parse_error);
  EXPECT_EQ(code_of([&] { deserialize_dataset(with_header(bytes, replace_line(header, "hidden_dim", "0"))); }),
            ErrorCode::invariant_violation);
  EXPECT_EQ(code_of([&] { deserialize_dataset(with_header(bytes, "garbage\n")); }), ErrorCode::parse_error);
}

TEST(ActivationStore, ValidationCatchesBadContent) {
  auto ds = random_dataset(2, 2, 1, 2, 3, 5);
  ds.labels[0] = 3;
  EXPECT_EQ(code_of([&] { serialize_dataset(ds); }), ErrorCode::invariant_violation);
  ds.labels[0] = 0;
  ds.activations[1] = std::numeric_limits<float>::quiet_NaN();
  EXPECT_EQ(code_of([&] { serialize_dataset(ds); }), ErrorCode::invariant_violation);
  ds.activations[1] = 0.0f;
  ds.prompt_ids[1] = ds.prompt_ids[0];
  EXPECT_EQ(code_of([&] { serialize_dataset(ds); }), ErrorCode::invariant_violation);
  ds.prompt_ids[1] = "other";
  ds.meta.trait_vocab = {"a", "a", "b"};
  EXPECT_EQ(code_of([&] { serialize_dataset(ds); }), ErrorCode::invariant_violation);
}

TEST(ActivationStore, TokenIndexing) {
  EXPECT_EQ(entity_of_token(0, 4), 0u);
  EXPECT_EQ(entity_of_token(3, 4), 0u);
  EXPECT_EQ(entity_of_token(4, 4), 1u);
  EXPECT_EQ(first_token_of(3, 4), 12u);
}

TEST(Split, DeterministicDisjointAndOrderIndependent) {
  auto ds = random_dataset(50, 2, 1, 2, 2, 6);
  const auto a = split_dataset(ds, 0.8, 10);
  EXPECT_EQ(a, split_dataset(ds, 0.8, 10));
  EXPECT_EQ(a.train_prompt_ids.size(), 40u);
  EXPECT_EQ(a.test_prompt_ids.size(), 10u);
  std::set<std::string> all(a.train_prompt_ids.begin(), a.train_prompt_ids.end());
  all.insert(a.test_prompt_ids.begin(), a.test_prompt_ids.end());
  EXPECT_EQ(all.size(), 50u);

  std::vector<std::string> reversed(ds.prompt_ids.rbegin(), ds.prompt_ids.rend());
  EXPECT_EQ(split_prompt_ids(reversed, 0.8, 10), a);
  EXPECT_NE(split_dataset(ds, 0.8, 11).test_prompt_ids, a.test_prompt_ids);
}

TEST(Split, DocumentRoundTripAndValidation) {
  auto ds = random_dataset(10, 2, 1, 2, 2, 7);
  const auto s = split_dataset(ds, 0.5, 0xFFFFFFFFFFFFFFFFULL);
  EXPECT_EQ(split_from_document(KvDocument::parse(split_to_document(s).to_string())), s);

  auto doc = split_to_document(s);
  doc.set("test.0", s.train_prompt_ids[0]);
  EXPECT_EQ(code_of([&] { split_from_document(doc); }), ErrorCode::invariant_violation);
}

TEST(Split, DegenerateInputs) {
  EXPECT_EQ(code_of([] { split_prompt_ids({"a"}, 0.5, 1); }), ErrorCode::degenerate_split);
  EXPECT_EQ(code_of([] { split_prompt_ids({"a", "b", "c"}, 0.01, 1); }), ErrorCode::degenerate_split);
  EXPECT_EQ(code_of([] { split_prompt_ids({"a", "b"}, 1.0, 1); }), ErrorCode::invalid_argument);
  auto ds = random_dataset(3, 2, 1, 2, 2, 8);
  const std::vector<std::string> ids{"nope"};
  EXPECT_EQ(code_of([&] { prompt_indices(ds, ids); }), ErrorCode::invalid_argument);
}

TEST(Checkpoint, RoundTripIsBitExact) {
  TrainConfig cfg;
  cfg.slots = 3;
  cfg.seed = 12;
  cfg.slot_bias = true;
  cfg.router_bias = true;
  ProbeCheckpoint ck{init_probe<float>(cfg, 5, 4, 3), {"a", "b", "c", "d"}, {}};
  ck.probe.slot_bias[1][2] = -0.0f;
  ck.extra.set("note", "line1\nline2");
  const std::string bytes = serialize_checkpoint(ck);
  const auto back = deserialize_checkpoint(bytes);
  EXPECT_EQ(back, ck);
  EXPECT_EQ(serialize_checkpoint(back), bytes);
  EXPECT_EQ(bytes.substr(0, 4), "ASPB");
  EXPECT_EQ(bytes.size(), 12 + binary::get_u32(bytes, 8) + 4 * ck.probe.parameter_count());

  TempDir dir("ckpt");
  write_checkpoint(ck, dir.file("c.spk"));
  EXPECT_EQ(read_checkpoint(dir.file("c.spk")), ck);
}

TEST(Checkpoint, CorruptedFilesRaiseDesignatedErrors) {
  TrainConfig cfg;
  cfg.slots = 2;
  const ProbeCheckpoint ck{init_probe<float>(cfg, 4, 3, 2), {}, {}};
  const std::string bytes = serialize_checkpoint(ck);
  const std::string header = header_of(bytes);

  std::string magic = bytes;
  magic[3] = 'A';
  EXPECT_EQ(code_of([&] { deserialize_checkpoint(magic); }), ErrorCode::bad_magic);
  std::string version = bytes;
  version[5] = 1;
  EXPECT_EQ(code_of([&] { deserialize_checkpoint(version); }), ErrorCode::version_unsupported);
  EXPECT_EQ(code_of([&] { deserialize_checkpoint(bytes.substr(0, bytes.size() - 4)); }), ErrorCode::truncated_payload);
  EXPECT_EQ(code_of([&] { deserialize_checkpoint(bytes + "abcd"); }), ErrorCode::invariant_violation);
  EXPECT_EQ(code_of([&] { deserialize_checkpoint(with_header(bytes, replace_line(header, "slots", "3"))); }),
            ErrorCode::truncated_payload);
  EXPECT_EQ(code_of([&] { deserialize_checkpoint(with_header(bytes, replace_line(header, "dim", "999999999"))); }),
            ErrorCode::invariant_violation);

  std::string nan = bytes;
  const std::size_t payload = 12 + binary::get_u32(bytes, 8);
  std::string nan_bits;
  binary::put_f32(nan_bits, std::numeric_limits<float>::quiet_NaN());
  nan.replace(payload, 4, nan_bits);
  EXPECT_EQ(code_of([&] { deserialize_checkpoint(nan); }), ErrorCode::invariant_violation);
}
