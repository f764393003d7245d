#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotprobe/binary_io.hpp"
#include "slotprobe/error.hpp"

namespace slotprobe::base64 {

inline constexpr std::string_view kAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

inline std::string encode(std::string_view bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t n = (static_cast<unsigned char>(bytes[i]) << 16) |
                            (static_cast<unsigned char>(bytes[i + 1]) << 8) | static_cast<unsigned char>(bytes[i + 2]);
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += kAlphabet[(n >> 6) & 63];
    out += kAlphabet[n & 63];
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const std::uint32_t n = static_cast<unsigned char>(bytes[i]) << 16;
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += "==";
  } else if (rest == 2) {
    const std::uint32_t n = (static_cast<unsigned char>(bytes[i]) << 16) | (static_cast<unsigned char>(bytes[i + 1]) << 8);
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += kAlphabet[(n >> 6) & 63];
    out += '=';
  }
  return out;
}

inline std::string decode(std::string_view text) {
  if (text.size() % 4 != 0) fail(ErrorCode::parse_error, "base64 length not a multiple of 4");
  auto value = [](char ch) -> int {
    const auto pos = kAlphabet.find(ch);
    if (pos == std::string_view::npos) fail(ErrorCode::parse_error, "invalid base64 character");
    return static_cast<int>(pos);
  };
  std::string out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    const bool last = i + 4 == text.size();
    const int pad = last ? (text[i + 3] == '=') + (text[i + 2] == '=') : 0;
    if (pad == 1 && text[i + 2] == '=') fail(ErrorCode::parse_error, "malformed base64 padding");
    const std::uint32_t n = (value(text[i]) << 18) | (value(text[i + 1]) << 12) |
                            ((pad >= 2 ? 0 : value(text[i + 2])) << 6) | (pad >= 1 ? 0 : value(text[i + 3]));
    out += static_cast<char>((n >> 16) & 0xFF);
    if (pad < 2) out += static_cast<char>((n >> 8) & 0xFF);
    if (pad < 1) out += static_cast<char>(n & 0xFF);
  }
  return out;
}

// float32 little-endian vector <-> base64 text.
template <typename T>
inline std::string encode_f32(std::span<const T> values) {
  std::string bytes;
  bytes.reserve(values.size() * 4);
  for (const T v : values) binary::put_f32(bytes, static_cast<float>(v));
  return encode(bytes);
}

inline std::vector<float> decode_f32(std::string_view text) {
  const std::string bytes = decode(text);
  if (bytes.size() % 4 != 0) fail(ErrorCode::parse_error, "float32 payload not a multiple of 4 bytes");
  std::vector<float> out(bytes.size() / 4);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = binary::get_f32(bytes, 4 * i);
  return out;
}

// float64 little-endian vector <-> base64 text.
inline std::string encode_f64(std::span<const double> values) {
  std::string bytes;
  bytes.reserve(values.size() * 8);
  for (const double v : values) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    binary::put_u32(bytes, static_cast<std::uint32_t>(bits & 0xFFFFFFFFu));
    binary::put_u32(bytes, static_cast<std::uint32_t>(bits >> 32));
  }
  return encode(bytes);
}

inline std::vector<double> decode_f64(std::string_view text) {
  const std::string bytes = decode(text);
  if (bytes.size() % 8 != 0) fail(ErrorCode::parse_error, "float64 payload not a multiple of 8 bytes");
  std::vector<double> out(bytes.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t lo = binary::get_u32(bytes, 8 * i);
    const std::uint64_t hi = binary::get_u32(bytes, 8 * i + 4);
    out[i] = std::bit_cast<double>(lo | (hi << 32));
  }
  return out;
}

}  // namespace slotprobe::base64
