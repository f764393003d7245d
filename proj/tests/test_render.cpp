#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "slotprobe/render.hpp"

using namespace slotprobe;

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

std::uint32_t le32(const std::string& s, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[at + static_cast<std::size_t>(i)]);
  return v;
}

std::uint16_t le16(const std::string& s, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(s[at]) | (static_cast<unsigned char>(s[at + 1]) << 8));
}

// Pixel (x, y) with y counted from the top of the image.
Rgb pixel(const std::string& bmp, std::size_t x, std::size_t y) {
  const std::size_t w = le32(bmp, 18), h = le32(bmp, 22);
  const std::size_t stride = (w * 3 + 3) & ~std::size_t{3};
  const std::size_t at = le32(bmp, 10) + (h - 1 - y) * stride + x * 3;
  return Rgb{static_cast<std::uint8_t>(bmp[at + 2]), static_cast<std::uint8_t>(bmp[at + 1]),
             static_cast<std::uint8_t>(bmp[at])};
}

}  // namespace

TEST(Ramp, EndpointsAndClamping) {
  EXPECT_EQ(ramp_color(0.0), (Rgb{68, 1, 84}));
  EXPECT_EQ(ramp_color(1.0), (Rgb{253, 231, 37}));
  EXPECT_EQ(ramp_color(-3.0), ramp_color(0.0));
  EXPECT_EQ(ramp_color(7.0), ramp_color(1.0));
  EXPECT_EQ(ramp_color(std::nan("")), ramp_color(0.0));
  // halfway between the first two stops
  EXPECT_EQ(ramp_color(1.0 / 16.0), (Rgb{70, 23, 103}));
}

TEST(Bmp, HeaderFieldsAndSize) {
  Matrix<double> m(3, 5, 0.5);
  HeatmapRender h{m, {}, 0.0, 1.0};
  const auto bmp = render_bmp(h, 3);
  ASSERT_GE(bmp.size(), 54u);
  EXPECT_EQ(bmp.substr(0, 2), "BM");
  // width 15 px -> 45 bytes per row, padded to 48
  EXPECT_EQ(le32(bmp, 18), 15u);
  EXPECT_EQ(le32(bmp, 22), 9u);
  EXPECT_EQ(le16(bmp, 26), 1u);
  EXPECT_EQ(le16(bmp, 28), 24u);
  EXPECT_EQ(le32(bmp, 10), 54u);
  EXPECT_EQ(le32(bmp, 34), 48u * 9u);
  EXPECT_EQ(le32(bmp, 2), bmp.size());
  EXPECT_EQ(bmp.size(), 54u + 48u * 9u);
  for (std::size_t y = 0; y < 9; ++y)
    for (std::size_t p = 45; p < 48; ++p) EXPECT_EQ(bmp[54 + y * 48 + p], '\0');
}

TEST(Bmp, AllOnesIsUniformMaximalColor) {
  HeatmapRender h{Matrix<double>(4, 4, 1.0), {}, 0.0, 1.0};
  const auto bmp = render_bmp(h, 2);
  for (std::size_t y = 0; y < 8; ++y)
    for (std::size_t x = 0; x < 8; ++x) EXPECT_EQ(pixel(bmp, x, y), ramp_color(1.0));
  EXPECT_EQ(render_bmp(h, 2), bmp);
}

TEST(Bmp, CellsLandWhereExpectedAndMaskIsWhite) {
  const HeatmapLayout L{2, 2};  // rows 0-1 for entity 0, rows 2-3 for entity 1
  Matrix<double> m(4, 2, 0.0);
  m(0, 0) = 1.0;
  m(3, 1) = 0.25;
  const auto h = heatmap_render(m, L);
  EXPECT_TRUE(h.masked(0, 1));
  EXPECT_TRUE(h.masked(1, 1));
  EXPECT_FALSE(h.masked(2, 1));
  const auto bmp = render_bmp(h, 4);
  EXPECT_EQ(pixel(bmp, 0, 0), ramp_color(1.0));
  EXPECT_EQ(pixel(bmp, 3, 3), ramp_color(1.0));
  EXPECT_EQ(pixel(bmp, 4, 0), kMaskColor);
  EXPECT_EQ(pixel(bmp, 7, 7), kMaskColor);
  EXPECT_EQ(pixel(bmp, 4, 12), ramp_color(0.25));
  EXPECT_EQ(pixel(bmp, 0, 15), ramp_color(0.0));
  EXPECT_EQ(kMaskColor, (Rgb{255, 255, 255}));
}

TEST(Bmp, CustomScale) {
  Matrix<double> m(1, 3);
  m(0, 0) = 10;
  m(0, 1) = 15;
  m(0, 2) = 20;
  HeatmapRender h{m, {}, 10, 20};
  const auto bmp = render_bmp(h, 1);
  EXPECT_EQ(pixel(bmp, 0, 0), ramp_color(0.0));
  EXPECT_EQ(pixel(bmp, 1, 0), ramp_color(0.5));
  EXPECT_EQ(pixel(bmp, 2, 0), ramp_color(1.0));
  HeatmapRender flat{m, {}, 15, 15};
  EXPECT_EQ(cell_color(flat, 0, 0), ramp_color(0.0));
  EXPECT_EQ(cell_color(flat, 0, 2), ramp_color(1.0));
}

TEST(Render, ValidationErrors) {
  Matrix<double> m(2, 2, 0.5);
  EXPECT_EQ(code_of([&] { render_bmp(HeatmapRender{Matrix<double>(), {}, 0, 1}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { render_bmp(HeatmapRender{m, {}, 1, 0}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { render_bmp(HeatmapRender{m, {true}, 0, 1}); }), ErrorCode::dimension_mismatch);
  EXPECT_EQ(code_of([&] { render_bmp(HeatmapRender{m, {}, 0, 1}, 0); }), ErrorCode::invalid_argument);
  auto bad = m;
  bad(1, 0) = std::numeric_limits<double>::infinity();
  EXPECT_EQ(code_of([&] { render_text(HeatmapRender{bad, {}, 0, 1}); }), ErrorCode::non_finite_input);
  // a masked non-finite cell is fine
  EXPECT_NO_THROW(render_bmp(HeatmapRender{bad, {false, false, true, false}, 0, 1}));
}

TEST(Render, TextTable) {
  Matrix<double> m(2, 2);
  m(0, 0) = 0.5;
  m(1, 0) = 1.0;
  m(1, 1) = 0.125;
  const auto h = heatmap_render(m, HeatmapLayout{2, 1});
  EXPECT_EQ(render_text(h), " 0.50    --\n 1.00  0.12\n");
  EXPECT_EQ(render_text(h, 1), " 0.5   --\n 1.0  0.1\n");
}
