#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "slotprobe/base64.hpp"
#include "slotprobe/binary_io.hpp"
#include "slotprobe/error.hpp"
#include "slotprobe/kv_document.hpp"
#include "slotprobe/matrix.hpp"
#include "slotprobe/random.hpp"

using namespace slotprobe;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::invariant_violation;
}

TEST(KvDocument, EscapesSurviveRoundTrip) {
  KvDocument doc;
  doc.set("plain", "abc");
  doc.set("multi", "line one\nline two\r\nback\\slash");
  doc.set("eq", "a=b=c");
  doc.set("empty", "");
  doc.set("n", std::int64_t{-42});
  doc.set("x", 0.1);
  const auto back = KvDocument::parse(doc.to_string());
  EXPECT_EQ(back.entries(), doc.entries());
  EXPECT_EQ(back.get_int("n"), -42);
  EXPECT_EQ(back.get_double("x"), 0.1);
}

TEST(KvDocument, DoublesRoundTripExactly) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double v = rng.normal() * std::pow(10.0, static_cast<double>(rng.below(40)) - 20.0);
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
}

TEST(KvDocument, PreservesInsertionOrderAndOverwrites) {
  KvDocument doc;
  doc.set("b", "1");
  doc.set("a", "2");
  doc.set("b", "3");
  ASSERT_EQ(doc.entries().size(), 2u);
  EXPECT_EQ(doc.entries()[0].first, "b");
  EXPECT_EQ(doc.entries()[0].second, "3");
  EXPECT_EQ(doc.to_string(), "b=3\na=2\n");
}

TEST(KvDocument, SkipsCommentsAndBlankLines) {
  const auto doc = KvDocument::parse("# header\n\nk=v\r\n#x=y\n");
  EXPECT_EQ(doc.entries().size(), 1u);
  EXPECT_EQ(doc.get("k"), "v");
}

TEST(KvDocument, Lists) {
  KvDocument doc;
  doc.set_list("names", {"a", "b c", ""});
  EXPECT_EQ(KvDocument::parse(doc.to_string()).get_list("names"), (std::vector<std::string>{"a", "b c", ""}));
}

TEST(KvDocument, MalformedInputIsAParseError) {
  EXPECT_EQ(code_of([] { KvDocument::parse("novalue\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { KvDocument::parse("=v\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { KvDocument::parse("k=1\nk=2\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { KvDocument::parse("k=a\\q\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { KvDocument::parse("k=a\\\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { KvDocument{}.get("missing"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { KvDocument::parse("k=1.5\n").get_int("k"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { KvDocument::parse("k=-1\n").get_count("k"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { KvDocument::parse("k=yes\n").get_bool("k"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { KvDocument{}.set("a=b", "x"); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { parse_int("12x"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { parse_double(""); }), ErrorCode::parse_error);
}

TEST(Base64, KnownVectors) {
  // RFC 4648 test vectors.
  const std::map<std::string, std::string> v{{"", ""},         {"f", "Zg=="},         {"fo", "Zm8="},
                                             {"foo", "Zm9v"}, {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="},
                                             {"foobar", "Zm9vYmFy"}};
  for (const auto& [plain, enc] : v) {
    EXPECT_EQ(base64::encode(plain), enc);
    EXPECT_EQ(base64::decode(enc), plain);
  }
}

TEST(Base64, FloatPayloadsAreBitExact) {
  std::vector<float> f{0.0f, -0.0f, 1.5f, std::numeric_limits<float>::denorm_min(),
                       std::numeric_limits<float>::max(), -3.25e-7f};
  const auto back = base64::decode_f32(base64::encode_f32(std::span<const float>(f)));
  ASSERT_EQ(back.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(std::bit_cast<std::uint32_t>(back[i]), std::bit_cast<std::uint32_t>(f[i]));

  std::vector<double> d{0.1, -2.0, 1e300, std::numeric_limits<double>::denorm_min()};
  EXPECT_EQ(base64::decode_f64(base64::encode_f64(d)), d);
}

TEST(Base64, RejectsMalformedText) {
  EXPECT_EQ(code_of([] { base64::decode("abc"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { base64::decode("ab!d"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { base64::decode_f32(base64::encode("abc")); }), ErrorCode::parse_error);
}

TEST(BinaryIo, LittleEndianLayout) {
  std::string out;
  binary::put_u32(out, 0x04030201u);
  binary::put_f32(out, 1.0f);
  EXPECT_EQ(out.substr(0, 4), std::string("\x01\x02\x03\x04", 4));
  EXPECT_EQ(out.substr(4), std::string("\x00\x00\x80\x3f", 4));
  EXPECT_EQ(binary::get_u32(out, 0), 0x04030201u);
  EXPECT_EQ(binary::get_f32(out, 4), 1.0f);
}

TEST(BinaryIo, ContainerChecks) {
  const std::string good = binary::make_preamble("ABCD", 3, "k=v\n") + "payload";
  const auto c = binary::open_container(good, "ABCD", 3);
  EXPECT_EQ(c.header, "k=v\n");
  EXPECT_EQ(c.payload, "payload");

  EXPECT_EQ(code_of([&] { binary::open_container(good, "WXYZ", 3); }), ErrorCode::bad_magic);
  EXPECT_EQ(code_of([&] { binary::open_container(good, "ABCD", 4); }), ErrorCode::version_unsupported);
  EXPECT_EQ(code_of([&] { binary::open_container(good.substr(0, 10), "ABCD", 3); }), ErrorCode::truncated_payload);
  EXPECT_EQ(code_of([&] { binary::open_container(good.substr(0, 14), "ABCD", 3); }), ErrorCode::truncated_payload);
  EXPECT_EQ(code_of([] { binary::read_all("/nonexistent/dir/file"); }), ErrorCode::io_failure);
}

TEST(Rng, DeterministicAndSeedSensitive) {
  Rng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, ReferenceSplitmix) {
  // splitmix64 reference outputs for state 0.
  std::uint64_t s = 0;
  EXPECT_EQ(splitmix64(s), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(splitmix64(s), 0x6E789E6AA1B965F4ULL);
}

TEST(Rng, UniformAndNormalMoments) {
  Rng rng(11);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.02);
}

TEST(Rng, BelowIsUnbiased) {
  Rng rng(3);
  std::vector<int> hist(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++hist[rng.below(7)];
  // chi-square with 6 dof; 22.46 is the 0.999 quantile
  double chi = 0;
  for (int h : hist) chi += (h - n / 7.0) * (h - n / 7.0) / (n / 7.0);
  EXPECT_LT(chi, 22.46);
  EXPECT_EQ(rng.below(1), 0u);
  EXPECT_EQ(rng.below(0), 0u);
}

TEST(Rng, ShuffleIsAPermutation) {
  Rng rng(9);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.shuffle(std::span<int>(v));
  EXPECT_EQ(std::set<int>(v.begin(), v.end()).size(), 50u);
  EXPECT_NE(v[0] * 1000 + v[1], 1);
}

TEST(Rng, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4; ++s)
    for (std::uint64_t i = 0; i < 256; ++i) seen.insert(derive_seed(s, i));
  EXPECT_EQ(seen.size(), 4u * 256u);
}

TEST(Matrix, SoftmaxAndLogSumExpAreStable) {
  std::vector<double> v{1000.0, 1000.0, -1000.0};
  EXPECT_NEAR(log_sum_exp(std::span<const double>(v)), 1000.0 + std::log(2.0), 1e-12);
  softmax_inplace(std::span<double>(v));
  EXPECT_NEAR(v[0], 0.5, 1e-15);
  EXPECT_NEAR(v[2], 0.0, 1e-300);
}

TEST(Matrix, TransposedMatvecMatchesLoops) {
  Rng rng(1);
  Matrix<double> m(5, 3);
  for (auto& x : m.flat()) x = rng.normal();
  std::vector<double> x(5), out(3), ref(3, 0.0);
  for (auto& v : x) v = rng.normal();
  transposed_matvec(m, x, out);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 5; ++i) ref[j] += m(i, j) * x[i];
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(out[j], ref[j], 1e-12);
}

TEST(Errors, MessageCarriesCode) {
  try {
    fail(ErrorCode::span_mismatch, "details");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::span_mismatch);
    EXPECT_EQ(std::string(e.what()), "span-mismatch: details");
  }
}
