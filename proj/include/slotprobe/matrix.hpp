#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <ranges>
#include <type_traits>
#include <span>
#include <vector>

namespace slotprobe {

// Dense row-major matrix. Deliberately minimal: the probe only needs
// per-row access, transposed mat-vec products and rank-1 updates.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<T> flat() { return data_; }
  std::span<const T> flat() const { return data_; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  bool operator==(const Matrix&) const = default;

  template <typename U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    std::transform(data_.begin(), data_.end(), out.flat().begin(), [](T v) { return static_cast<U>(v); });
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename R>
using element_t = std::remove_cvref_t<std::ranges::range_value_t<R>>;

// out = m^T x, accumulated in the output element type.
template <typename T, typename X, typename Out>
inline void transposed_matvec(const Matrix<T>& m, const X& x, Out&& out) {
  using O = element_t<Out>;
  assert(std::size(x) == m.rows() && std::size(out) == m.cols());
  std::fill(std::begin(out), std::end(out), O{});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const O xi = static_cast<O>(x[i]);
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out[j] += static_cast<O>(r[j]) * xi;
  }
}

// m += scale * x y^T
template <typename T, typename X, typename Y>
inline void add_outer(Matrix<T>& m, const X& x, const Y& y, T scale = T{1}) {
  assert(std::size(x) == m.rows() && std::size(y) == m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const T xi = static_cast<T>(x[i]) * scale;
    if (xi == T{}) continue;
    auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += xi * static_cast<T>(y[j]);
  }
}

template <typename A, typename B>
inline double dot(const A& a, const B& b) {
  assert(std::size(a) == std::size(b));
  double s = 0.0;
  for (std::size_t i = 0; i < std::size(a); ++i) s += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return s;
}

template <typename A>
inline double norm(const A& a) {
  return std::sqrt(dot(a, a));
}

template <typename A, typename B>
inline double cosine(const A& a, const B& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

// Numerically stable in-place softmax.
template <typename V>
inline void softmax_inplace(V&& v) {
  using T = element_t<V>;
  if (std::empty(v)) return;
  const T mx = *std::max_element(std::begin(v), std::end(v));
  T sum{};
  for (auto& x : v) {
    x = std::exp(x - mx);
    sum += x;
  }
  for (auto& x : v) x /= sum;
}

template <typename V>
inline auto log_sum_exp(const V& v) {
  using T = element_t<V>;
  const T mx = *std::max_element(std::begin(v), std::end(v));
  T sum{};
  for (const auto x : v) sum += std::exp(x - mx);
  return static_cast<T>(mx + std::log(sum));
}

// Index of the largest element; ties resolve to the lowest index.
template <typename V>
inline std::size_t argmax(const V& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < std::size(v); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace slotprobe
