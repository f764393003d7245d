#pragma once

// Per-(token, entity) accuracy and routing heatmaps.
//
// Rows are token positions (N*T), columns are entities (N). Cell (t, e) is
// valid only when t >= t_e; earlier cells are masked.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slotprobe/activation_store.hpp"
#include "slotprobe/error.hpp"
#include "slotprobe/kv_document.hpp"
#include "slotprobe/matrix.hpp"
#include "slotprobe/probe.hpp"

namespace slotprobe {

struct HeatmapLayout {
  std::size_t entities = 0;
  std::size_t tokens_per_entity = 0;

  std::size_t rows() const { return entities * tokens_per_entity; }
  std::size_t cols() const { return entities; }
  bool valid(std::size_t t, std::size_t e) const { return t >= first_token_of(e, tokens_per_entity); }
  bool diagonal(std::size_t t, std::size_t e) const { return entity_of_token(t, tokens_per_entity) == e; }
  bool subdiagonal(std::size_t t, std::size_t e) const { return entity_of_token(t, tokens_per_entity) == e + 1; }

  bool operator==(const HeatmapLayout&) const = default;
};

struct AccuracyHeatmap {
  HeatmapLayout layout;
  Matrix<double> accuracy;      // [rows, cols]; 0 where masked
  Matrix<std::size_t> counts;   // samples per cell; 0 where masked
  std::size_t total_correct = 0;
  std::size_t total_count = 0;

  bool masked(std::size_t t, std::size_t e) const { return !layout.valid(t, e); }

  // Mean over unmasked cells weighted by sample counts.
  double overall() const { return total_count == 0 ? 0.0 : static_cast<double>(total_correct) / total_count; }
};

struct RoutingHeatmap {
  HeatmapLayout layout;
  std::vector<Matrix<double>> mass;  // K x [rows, cols], mean routing weight per cell

  std::size_t slots() const { return mass.size(); }
  bool masked(std::size_t t, std::size_t e) const { return !layout.valid(t, e); }
};

inline HeatmapLayout layout_of(const ActivationDataset& ds) {
  return {ds.meta.entities_per_prompt, ds.meta.tokens_per_entity};
}

inline AccuracyHeatmap empty_accuracy_heatmap(HeatmapLayout layout) {
  AccuracyHeatmap hm;
  hm.layout = layout;
  hm.accuracy = Matrix<double>(layout.rows(), layout.cols());
  hm.counts = Matrix<std::size_t>(layout.rows(), layout.cols());
  return hm;
}

// Fills accuracy from raw per-cell correct counts already stored in
// `accuracy` and totals in `counts`.
inline void finalize_accuracy(AccuracyHeatmap& hm) {
  hm.total_correct = 0;
  hm.total_count = 0;
  for (std::size_t t = 0; t < hm.layout.rows(); ++t) {
    for (std::size_t e = 0; e < hm.layout.cols(); ++e) {
      const std::size_t n = hm.counts(t, e);
      if (n == 0) continue;
      const auto correct = static_cast<std::size_t>(hm.accuracy(t, e));
      hm.total_correct += correct;
      hm.total_count += n;
      hm.accuracy(t, e) = static_cast<double>(correct) / static_cast<double>(n);
    }
  }
}

template <typename T>
AccuracyHeatmap evaluate_heatmap(const MultiSlotProbe<T>& probe, const ActivationDataset& ds,
                                 std::span<const std::size_t> test_prompts) {
  check_probe_matches(probe, ds);
  require(!test_prompts.empty(), ErrorCode::empty_split, "no test prompts");
  AccuracyHeatmap hm = empty_accuracy_heatmap(layout_of(ds));
  detail::TokenKernel<T> kernel(probe);
  const std::size_t tpe = ds.meta.tokens_per_entity;
  for (const std::size_t p : test_prompts) {
    for (std::size_t t = 0; t < hm.layout.rows(); ++t) {
      kernel.load(ds.token(p, t));
      const std::size_t n_ent = entity_of_token(t, tpe) + 1;
      for (std::size_t e = 0; e < n_ent; ++e) {
        kernel.route(e);
        const std::size_t pred = argmax(kernel.mixed_logits());
        hm.accuracy(t, e) += pred == static_cast<std::size_t>(ds.label(p, e)) ? 1.0 : 0.0;
        hm.counts(t, e) += 1;
      }
    }
  }
  finalize_accuracy(hm);
  return hm;
}

template <typename T>
RoutingHeatmap routing_heatmap(const MultiSlotProbe<T>& probe, const ActivationDataset& ds,
                               std::span<const std::size_t> test_prompts) {
  check_probe_matches(probe, ds);
  require(!test_prompts.empty(), ErrorCode::empty_split, "no test prompts");
  RoutingHeatmap hm;
  hm.layout = layout_of(ds);
  hm.mass.assign(probe.slots, Matrix<double>(hm.layout.rows(), hm.layout.cols()));
  detail::TokenKernel<T> kernel(probe);
  const std::size_t tpe = ds.meta.tokens_per_entity;
  for (const std::size_t p : test_prompts) {
    for (std::size_t t = 0; t < hm.layout.rows(); ++t) {
      kernel.load(ds.token(p, t));
      const std::size_t n_ent = entity_of_token(t, tpe) + 1;
      for (std::size_t e = 0; e < n_ent; ++e) {
        kernel.route(e);
        const auto alpha = kernel.alpha();
        for (std::size_t k = 0; k < probe.slots; ++k) hm.mass[k](t, e) += static_cast<double>(alpha[k]);
      }
    }
  }
  const double n = static_cast<double>(test_prompts.size());
  for (auto& m : hm.mass)
    for (auto& v : m.flat()) v /= n;
  return hm;
}

// ---------------------------------------------------------------------------
// Key/value documents for the CLI.

inline KvDocument heatmap_to_document(const Matrix<double>& values, const HeatmapLayout& layout, std::string_view kind) {
  KvDocument doc;
  doc.set("format", "slotprobe-heatmap");
  doc.set("version", 1);
  doc.set("kind", kind);
  doc.set("rows", layout.rows());
  doc.set("cols", layout.cols());
  doc.set("tokens_per_entity", layout.tokens_per_entity);
  for (std::size_t t = 0; t < layout.rows(); ++t) {
    std::string line;
    for (std::size_t e = 0; e < layout.cols(); ++e) {
      if (e) line += ',';
      line += layout.valid(t, e) ? format_double(values(t, e)) : std::string("-");
    }
    doc.set("row." + std::to_string(t), line);
  }
  return doc;
}

inline KvDocument accuracy_to_document(const AccuracyHeatmap& hm) {
  KvDocument doc = heatmap_to_document(hm.accuracy, hm.layout, "accuracy");
  doc.set("overall_accuracy", hm.overall());
  doc.set("total_correct", hm.total_correct);
  doc.set("total_count", hm.total_count);
  return doc;
}

struct LoadedHeatmap {
  HeatmapLayout layout;
  Matrix<double> values;
  std::vector<std::uint8_t> mask;  // 1 = valid cell, row-major
  std::string kind;
};

// Masked cells are written as "-"; the returned mask is taken from the
// document itself rather than recomputed from the layout.
inline LoadedHeatmap heatmap_from_document(const KvDocument& doc) {
  require(doc.get("format") == "slotprobe-heatmap", ErrorCode::parse_error, "not a heatmap document");
  LoadedHeatmap out;
  const std::size_t rows = doc.get_count("rows");
  const std::size_t cols = doc.get_count("cols");
  out.kind = doc.get("kind");
  out.layout = {cols, doc.get_count("tokens_per_entity")};
  out.values = Matrix<double>(rows, cols);
  out.mask.assign(rows * cols, 0);
  for (std::size_t t = 0; t < rows; ++t) {
    const std::string& line = doc.get("row." + std::to_string(t));
    std::size_t pos = 0;
    for (std::size_t e = 0; e < cols; ++e) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      const std::string cell = line.substr(pos, end - pos);
      if (cell != "-") {
        out.values(t, e) = parse_double(cell);
        out.mask[t * cols + e] = 1;
      }
      require(end < line.size() || e + 1 == cols, ErrorCode::parse_error, "row " + std::to_string(t) + " too short");
      pos = end + 1;
    }
  }
  return out;
}

}  // namespace slotprobe
