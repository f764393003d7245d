#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotprobe/error.hpp"
#include "slotprobe/evaluation.hpp"
#include "slotprobe/kv_document.hpp"
#include "slotprobe/matrix.hpp"
#include "slotprobe/probe.hpp"

namespace slotprobe {

enum class SlotRole { current, prior, other };

inline std::string_view to_string(SlotRole r) {
  switch (r) {
    case SlotRole::current: return "current";
    case SlotRole::prior: return "prior";
    case SlotRole::other: return "other";
  }
  return "?";
}

struct SlotRoleAssignment {
  // order[i] is the original slot index placed at canonical position i:
  // current first, then prior (if K >= 2), then the rest ascending.
  std::vector<std::size_t> order;
  std::vector<SlotRole> roles;          // indexed by original slot
  std::vector<double> diagonal_mass;    // mean routing mass on diagonal cells, per original slot
  std::vector<double> subdiagonal_mass; // same over subdiagonal cells
  std::size_t current_slot = 0;
  std::optional<std::size_t> prior_slot;
};

namespace detail {

inline double mean_over(const Matrix<double>& m, const HeatmapLayout& layout, bool subdiagonal) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t t = 0; t < layout.rows(); ++t)
    for (std::size_t e = 0; e < layout.cols(); ++e)
      if (subdiagonal ? layout.subdiagonal(t, e) : layout.diagonal(t, e)) {
        sum += m(t, e);
        ++n;
      }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace detail

inline SlotRoleAssignment canonicalize_slots(const RoutingHeatmap& routing) {
  const std::size_t k = routing.slots();
  require(k >= 1, ErrorCode::invalid_argument, "routing heatmap has no slots");
  SlotRoleAssignment out;
  out.roles.assign(k, SlotRole::other);
  for (const auto& m : routing.mass) {
    out.diagonal_mass.push_back(detail::mean_over(m, routing.layout, false));
    out.subdiagonal_mass.push_back(detail::mean_over(m, routing.layout, true));
  }

  out.current_slot = argmax(out.diagonal_mass);
  out.roles[out.current_slot] = SlotRole::current;
  out.order.push_back(out.current_slot);

  if (k >= 2) {
    std::size_t best = k;
    for (std::size_t s = 0; s < k; ++s) {
      if (s == out.current_slot) continue;
      if (best == k || out.subdiagonal_mass[s] > out.subdiagonal_mass[best]) best = s;
    }
    out.prior_slot = best;
    out.roles[best] = SlotRole::prior;
    out.order.push_back(best);
  }
  for (std::size_t s = 0; s < k; ++s)
    if (out.roles[s] == SlotRole::other) out.order.push_back(s);
  return out;
}

// Reorders slot weights and router columns into canonical order. Outputs of
// the probe are unchanged.
template <typename T>
MultiSlotProbe<T> apply_slot_order(const MultiSlotProbe<T>& probe, std::span<const std::size_t> order) {
  require(order.size() == probe.slots, ErrorCode::dimension_mismatch, "slot order length != K");
  std::vector<bool> seen(probe.slots, false);
  for (const std::size_t s : order) {
    require(s < probe.slots && !seen[s], ErrorCode::invalid_argument, "slot order is not a permutation");
    seen[s] = true;
  }
  MultiSlotProbe<T> out = probe;
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.slot_weights[i] = probe.slot_weights[order[i]];
    if (probe.has_slot_bias()) out.slot_bias[i] = probe.slot_bias[order[i]];
  }
  for (std::size_t e = 0; e < probe.entities; ++e) {
    for (std::size_t r = 0; r < probe.dim; ++r)
      for (std::size_t i = 0; i < order.size(); ++i) out.router_weights[e](r, i) = probe.router_weights[e](r, order[i]);
    if (probe.has_router_bias())
      for (std::size_t i = 0; i < order.size(); ++i) out.router_bias[e][i] = probe.router_bias[e][order[i]];
  }
  return out;
}

inline RoutingHeatmap apply_slot_order(const RoutingHeatmap& routing, std::span<const std::size_t> order) {
  require(order.size() == routing.slots(), ErrorCode::dimension_mismatch, "slot order length != K");
  RoutingHeatmap out;
  out.layout = routing.layout;
  for (const std::size_t s : order) out.mass.push_back(routing.mass.at(s));
  return out;
}

// ---------------------------------------------------------------------------
// Similarity statistics

template <typename A, typename B>
double pearson(const A& a, const B& b) {
  const std::size_t n = std::size(a);
  require(n == std::size(b), ErrorCode::dimension_mismatch, "pearson inputs differ in length");
  require(n >= 2, ErrorCode::invalid_argument, "pearson needs at least two values");
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += static_cast<double>(a[i]);
    mb += static_cast<double>(b[i]);
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = static_cast<double>(a[i]) - ma;
    const double db = static_cast<double>(b[i]) - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) fail(ErrorCode::zero_variance, "pearson input has zero variance");
  return sab / std::sqrt(saa * sbb);
}

template <typename T>
double slot_weight_correlation(const Matrix<T>& wa, const Matrix<T>& wb) {
  require(wa.rows() == wb.rows() && wa.cols() == wb.cols(), ErrorCode::dimension_mismatch,
          "slot weight matrices differ in shape");
  return pearson(wa.flat(), wb.flat());
}

// Strict lower triangle of the c x c Pearson correlation matrix among the
// columns (trait weight vectors) of w, row-major over (i > j).
template <typename T>
std::vector<double> trait_similarity_triangle(const Matrix<T>& w) {
  const std::size_t c = w.cols();
  std::vector<std::vector<T>> cols;
  cols.reserve(c);
  for (std::size_t x = 0; x < c; ++x) cols.push_back(w.column(x));
  std::vector<double> tri;
  tri.reserve(c * (c - 1) / 2);
  for (std::size_t i = 1; i < c; ++i)
    for (std::size_t j = 0; j < i; ++j) tri.push_back(pearson(cols[i], cols[j]));
  return tri;
}

template <typename T>
double rsa_second_order(const Matrix<T>& wa, const Matrix<T>& wb) {
  require(wa.cols() == wb.cols(), ErrorCode::dimension_mismatch, "matrices have different trait counts");
  require(wa.cols() >= 3, ErrorCode::invalid_argument, "rsa needs c >= 3");
  return pearson(trait_similarity_triangle(wa), trait_similarity_triangle(wb));
}

// Rows of `directions` ([c, d]) minus their mean row.
template <typename T>
Matrix<double> center_rows(const Matrix<T>& directions) {
  Matrix<double> out(directions.rows(), directions.cols());
  std::vector<double> mean(directions.cols(), 0.0);
  for (std::size_t x = 0; x < directions.rows(); ++x)
    for (std::size_t i = 0; i < directions.cols(); ++i) mean[i] += static_cast<double>(directions(x, i));
  for (auto& m : mean) m /= static_cast<double>(directions.rows());
  for (std::size_t x = 0; x < directions.rows(); ++x)
    for (std::size_t i = 0; i < directions.cols(); ++i) out(x, i) = static_cast<double>(directions(x, i)) - mean[i];
  return out;
}

// Trait columns of a slot matrix [d, c] as rows [c, d].
template <typename T>
Matrix<double> trait_rows(const Matrix<T>& w) {
  Matrix<double> out(w.cols(), w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t x = 0; x < w.cols(); ++x) out(x, i) = static_cast<double>(w(i, x));
  return out;
}

// Cosine between trait x of `learned` and trait x of `planted` (both [c, d]),
// after subtracting each side's mean over traits. Softmax is invariant to a
// shift shared by all trait columns, so only centered directions are
// identifiable.
inline std::vector<double> centered_trait_cosines(const Matrix<double>& learned, const Matrix<double>& planted) {
  require(learned.rows() == planted.rows() && learned.cols() == planted.cols(), ErrorCode::dimension_mismatch,
          "direction sets differ in shape");
  const Matrix<double> a = center_rows(learned);
  const Matrix<double> b = center_rows(planted);
  std::vector<double> out(a.rows());
  for (std::size_t x = 0; x < a.rows(); ++x) out[x] = cosine(a.row(x), b.row(x));
  return out;
}

// ---------------------------------------------------------------------------
// Report

struct SlotAnalysisReport {
  SlotRoleAssignment assignment;
  std::optional<double> weight_correlation;  // current vs prior slot
  std::optional<double> rsa;                 // current vs prior slot
};

template <typename T>
SlotAnalysisReport analyze_slots(const MultiSlotProbe<T>& probe, const RoutingHeatmap& routing) {
  require(routing.slots() == probe.slots, ErrorCode::dimension_mismatch, "routing heatmap slot count != probe K");
  SlotAnalysisReport r;
  r.assignment = canonicalize_slots(routing);
  if (r.assignment.prior_slot) {
    const auto& wc = probe.slot_weights[r.assignment.current_slot];
    const auto& wp = probe.slot_weights[*r.assignment.prior_slot];
    r.weight_correlation = slot_weight_correlation(wc, wp);
    if (probe.traits >= 3) r.rsa = rsa_second_order(wc, wp);
  }
  return r;
}

inline KvDocument slot_report_to_document(const SlotAnalysisReport& r) {
  KvDocument doc;
  doc.set("format", "slotprobe-slot-analysis");
  doc.set("version", 1);
  const auto& a = r.assignment;
  doc.set("slots", a.roles.size());
  doc.set("current_slot", a.current_slot);
  doc.set("prior_slot", a.prior_slot ? std::to_string(*a.prior_slot) : std::string("none"));
  std::vector<std::string> order;
  for (const auto s : a.order) order.push_back(std::to_string(s));
  doc.set_list("order", order);
  for (std::size_t s = 0; s < a.roles.size(); ++s) {
    const std::string p = "slot." + std::to_string(s);
    doc.set(p + ".role", to_string(a.roles[s]));
    doc.set(p + ".diagonal_mass", a.diagonal_mass[s]);
    doc.set(p + ".subdiagonal_mass", a.subdiagonal_mass[s]);
  }
  if (r.weight_correlation) doc.set("weight_correlation", *r.weight_correlation);
  if (r.rsa) doc.set("rsa_second_order", *r.rsa);
  return doc;
}

}  // namespace slotprobe
