#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "slotprobe/error.hpp"
#include "slotprobe/evaluation.hpp"
#include "slotprobe/matrix.hpp"

namespace slotprobe {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

// Viridis-like ramp sampled at nine stops.
inline Rgb ramp_color(double t) {
  static constexpr std::array<std::array<double, 3>, 9> stops{{
      {68, 1, 84},
      {71, 44, 122},
      {59, 81, 139},
      {44, 113, 142},
      {33, 144, 141},
      {39, 173, 129},
      {92, 200, 99},
      {170, 220, 50},
      {253, 231, 37},
  }};
  if (!(t >= 0.0)) t = 0.0;
  if (t > 1.0) t = 1.0;
  const double x = t * static_cast<double>(stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(x), stops.size() - 2);
  const double f = x - static_cast<double>(i);
  auto mix = [&](int c) {
    return static_cast<std::uint8_t>(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
  };
  return Rgb{mix(0), mix(1), mix(2)};
}

inline constexpr Rgb kMaskColor{255, 255, 255};

struct HeatmapRender {
  Matrix<double> values;
  std::vector<bool> mask;  // row-major, true = masked; empty means nothing masked
  double lo = 0.0, hi = 1.0;

  bool masked(std::size_t r, std::size_t c) const { return !mask.empty() && mask[r * values.cols() + c]; }
};

inline HeatmapRender heatmap_render(const Matrix<double>& values, const HeatmapLayout& layout, double lo = 0.0,
                                    double hi = 1.0) {
  HeatmapRender h{values, std::vector<bool>(values.rows() * values.cols(), false), lo, hi};
  for (std::size_t t = 0; t < values.rows(); ++t)
    for (std::size_t e = 0; e < values.cols(); ++e) h.mask[t * values.cols() + e] = !layout.valid(t, e);
  return h;
}

inline void validate(const HeatmapRender& h) {
  require(h.values.rows() > 0 && h.values.cols() > 0, ErrorCode::invalid_argument, "heatmap is empty");
  require(std::isfinite(h.lo) && std::isfinite(h.hi) && h.lo <= h.hi, ErrorCode::invalid_argument,
          "scale bounds must be finite with lo <= hi");
  require(h.mask.empty() || h.mask.size() == h.values.rows() * h.values.cols(), ErrorCode::dimension_mismatch,
          "mask size != matrix size");
  for (std::size_t r = 0; r < h.values.rows(); ++r)
    for (std::size_t c = 0; c < h.values.cols(); ++c)
      require(h.masked(r, c) || std::isfinite(h.values(r, c)), ErrorCode::non_finite_input,
              "unmasked heatmap cell is not finite");
}

inline double scale_position(const HeatmapRender& h, double v) {
  if (h.hi == h.lo) return v >= h.hi ? 1.0 : 0.0;
  return (v - h.lo) / (h.hi - h.lo);
}

inline Rgb cell_color(const HeatmapRender& h, std::size_t r, std::size_t c) {
  return h.masked(r, c) ? kMaskColor : ramp_color(scale_position(h, h.values(r, c)));
}

// Uncompressed 24-bit BMP, matrix row 0 at the top, one square of
// `cell_px` pixels per cell.
inline std::string render_bmp(const HeatmapRender& h, std::size_t cell_px = 16) {
  validate(h);
  require(cell_px >= 1 && cell_px <= 256, ErrorCode::invalid_argument, "cell size must be 1..256 pixels");
  const std::size_t width = h.values.cols() * cell_px, height = h.values.rows() * cell_px;
  const std::size_t stride = (width * 3 + 3) / 4 * 4;
  const std::size_t image = stride * height;

  std::string out;
  out.reserve(54 + image);
  auto u16 = [&](std::uint32_t v) {
    out += static_cast<char>(v & 0xFF);
    out += static_cast<char>((v >> 8) & 0xFF);
  };
  auto u32 = [&](std::uint32_t v) {
    u16(v & 0xFFFF);
    u16(v >> 16);
  };
  out += "BM";
  u32(static_cast<std::uint32_t>(54 + image));
  u32(0);
  u32(54);
  u32(40);
  u32(static_cast<std::uint32_t>(width));
  u32(static_cast<std::uint32_t>(height));
  u16(1);
  u16(24);
  u32(0);
  u32(static_cast<std::uint32_t>(image));
  u32(2835);
  u32(2835);
  u32(0);
  u32(0);

  for (std::size_t y = height; y-- > 0;) {
    const std::size_t r = y / cell_px;
    std::size_t written = 0;
    for (std::size_t x = 0; x < width; ++x) {
      const Rgb col = cell_color(h, r, x / cell_px);
      out += static_cast<char>(col.b);
      out += static_cast<char>(col.g);
      out += static_cast<char>(col.r);
      written += 3;
    }
    out.append(stride - written, '\0');
  }
  return out;
}

inline std::string render_text(const HeatmapRender& h, int precision = 2) {
  validate(h);
  std::string out;
  char buf[32];
  for (std::size_t r = 0; r < h.values.rows(); ++r) {
    for (std::size_t c = 0; c < h.values.cols(); ++c) {
      if (c) out += ' ';
      if (h.masked(r, c)) {
        std::snprintf(buf, sizeof buf, "%*s", precision + 3, "--");
      } else {
        std::snprintf(buf, sizeof buf, "%*.*f", precision + 3, precision, h.values(r, c));
      }
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace slotprobe
