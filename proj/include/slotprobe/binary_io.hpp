#pragma once

// Little-endian encoding helpers and the shared container layout used by
// dataset and checkpoint files:
//
//   bytes 0-3   magic
//   bytes 4-7   format version, u32 LE
//   bytes 8-11  header length H, u32 LE
//   12..12+H    UTF-8 key/value header
//   ...         payload

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "slotprobe/error.hpp"

namespace slotprobe::binary {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

inline std::uint32_t get_u32(std::string_view in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  return v;
}

inline void put_f32(std::string& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }
inline void put_i32(std::string& out, std::int32_t v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }
inline float get_f32(std::string_view in, std::size_t offset) { return std::bit_cast<float>(get_u32(in, offset)); }
inline std::int32_t get_i32(std::string_view in, std::size_t offset) {
  return std::bit_cast<std::int32_t>(get_u32(in, offset));
}

inline std::string make_preamble(std::string_view magic, std::uint32_t version, std::string_view header) {
  if (header.size() > std::numeric_limits<std::uint32_t>::max())
    fail(ErrorCode::invalid_argument, "header too large");
  std::string out(magic);
  put_u32(out, version);
  put_u32(out, static_cast<std::uint32_t>(header.size()));
  out.append(header);
  return out;
}

struct Container {
  std::uint32_t version = 0;
  std::string header;
  std::string_view payload;  // view into the owning buffer
};

// Validates magic and version and splits header from payload. `bytes` must
// outlive the returned view.
inline Container open_container(std::string_view bytes, std::string_view magic, std::uint32_t supported_version) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != magic)
    fail(ErrorCode::bad_magic, "expected magic '" + std::string(magic) + "'");
  if (bytes.size() < 12) fail(ErrorCode::truncated_payload, "file shorter than the fixed preamble");
  Container c;
  c.version = get_u32(bytes, 4);
  if (c.version != supported_version)
    fail(ErrorCode::version_unsupported, "format version " + std::to_string(c.version) + " (supported: " +
                                             std::to_string(supported_version) + ")");
  const std::uint64_t header_len = get_u32(bytes, 8);
  if (12 + header_len > bytes.size()) fail(ErrorCode::truncated_payload, "header length exceeds file size");
  c.header = std::string(bytes.substr(12, header_len));
  c.payload = bytes.substr(12 + header_len);
  return c;
}

inline std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_failure, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::io_failure, "read of '" + path + "' failed");
  return ss.str();
}

inline void write_all(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io_failure, "cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) fail(ErrorCode::io_failure, "write to '" + path + "' failed");
}

}  // namespace slotprobe::binary
