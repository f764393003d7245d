#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotprobe/activation_store.hpp"
#include "slotprobe/base64.hpp"
#include "slotprobe/error.hpp"
#include "slotprobe/kv_document.hpp"
#include "slotprobe/lexicon.hpp"
#include "slotprobe/prompt_kit.hpp"
#include "slotprobe/random.hpp"

namespace slotprobe {

// ---------------------------------------------------------------------------
// Condition means

struct ConditionMeans {
  std::vector<std::string> traits;
  std::size_t dim = 0;
  std::int64_t layer = 0;
  std::size_t min_samples = 1;
  std::vector<std::size_t> prior_count, current_count;
  std::vector<std::vector<double>> prior, current;  // empty vector when below min_samples

  std::size_t trait_index(std::string_view trait) const {
    for (std::size_t i = 0; i < traits.size(); ++i)
      if (traits[i] == trait) return i;
    fail(ErrorCode::missing_mean, "trait '" + std::string(trait) + "' is not in the means vocabulary");
  }

  const std::vector<double>& v_prior(std::string_view trait) const { return lookup(prior, trait, "prior"); }
  const std::vector<double>& v_current(std::string_view trait) const { return lookup(current, trait, "current"); }

  bool operator==(const ConditionMeans&) const = default;

 private:
  const std::vector<double>& lookup(const std::vector<std::vector<double>>& table, std::string_view trait,
                                    std::string_view family) const {
    const auto& v = table[trait_index(trait)];
    if (v.empty())
      fail(ErrorCode::missing_mean, "no " + std::string(family) + " mean for trait '" + std::string(trait) + "'");
    return v;
  }
};

// Pools every token of entity i. The prior mean for x averages entities
// i >= 1 whose predecessor has trait x; the current mean averages entities
// with trait x.
inline ConditionMeans compute_condition_means(const ActivationDataset& ds, std::size_t min_samples = 1,
                                              bool allow_missing = false) {
  const auto& m = ds.meta;
  require(m.entities_per_prompt >= 2, ErrorCode::invalid_argument, "condition means need at least two entities");
  require(min_samples >= 1, ErrorCode::invalid_argument, "min_samples must be at least 1");
  const std::size_t c = m.num_traits(), d = m.hidden_dim, T = m.tokens_per_entity;

  ConditionMeans out;
  out.traits = m.trait_vocab;
  out.dim = d;
  out.layer = m.layer_index;
  out.min_samples = min_samples;
  out.prior_count.assign(c, 0);
  out.current_count.assign(c, 0);
  std::vector<std::vector<double>> prior_sum(c, std::vector<double>(d, 0.0)), cur_sum = prior_sum;

  for (std::size_t p = 0; p < ds.num_prompts(); ++p) {
    for (std::size_t e = 0; e < m.entities_per_prompt; ++e) {
      const auto x = static_cast<std::size_t>(ds.label(p, e));
      for (std::size_t j = 0; j < T; ++j) {
        const auto h = ds.token(p, first_token_of(e, T) + j);
        for (std::size_t i = 0; i < d; ++i) cur_sum[x][i] += h[i];
        ++out.current_count[x];
        if (e == 0) continue;
        const auto xp = static_cast<std::size_t>(ds.label(p, e - 1));
        for (std::size_t i = 0; i < d; ++i) prior_sum[xp][i] += h[i];
        ++out.prior_count[xp];
      }
    }
  }

  auto finish = [&](std::vector<std::vector<double>>& sums, const std::vector<std::size_t>& counts,
                    std::string_view family) {
    std::vector<std::vector<double>> means(c);
    for (std::size_t x = 0; x < c; ++x) {
      // counts are per token; the threshold is per entity occurrence
      if (counts[x] / T < min_samples) {
        if (!allow_missing)
          fail(ErrorCode::insufficient_samples, std::string(family) + " mean for trait '" + m.trait_vocab[x] + "' has " +
                                                    std::to_string(counts[x] / T) + " samples, need " +
                                                    std::to_string(min_samples));
        continue;
      }
      means[x] = std::move(sums[x]);
      for (auto& v : means[x]) v /= static_cast<double>(counts[x]);
    }
    return means;
  };
  out.prior = finish(prior_sum, out.prior_count, "prior");
  out.current = finish(cur_sum, out.current_count, "current");
  return out;
}

inline KvDocument means_to_document(const ConditionMeans& cm) {
  KvDocument doc;
  doc.set("format", "slotprobe-means");
  doc.set("version", 1);
  doc.set("dim", cm.dim);
  doc.set("layer", cm.layer);
  doc.set("min_samples", cm.min_samples);
  doc.set_list("traits", cm.traits);
  for (std::size_t x = 0; x < cm.traits.size(); ++x) {
    const std::string k = "trait." + std::to_string(x) + ".";
    doc.set(k + "prior_count", cm.prior_count[x]);
    doc.set(k + "current_count", cm.current_count[x]);
    if (!cm.prior[x].empty()) doc.set(k + "prior", base64::encode_f64(cm.prior[x]));
    if (!cm.current[x].empty()) doc.set(k + "current", base64::encode_f64(cm.current[x]));
  }
  return doc;
}

inline ConditionMeans means_from_document(const KvDocument& doc) {
  if (doc.get("format") != "slotprobe-means") fail(ErrorCode::parse_error, "not a means document");
  if (doc.get_int("version") != 1) fail(ErrorCode::version_unsupported, "unsupported means version");
  ConditionMeans cm;
  cm.dim = doc.get_count("dim");
  cm.layer = doc.get_int("layer");
  cm.min_samples = doc.get_count("min_samples");
  cm.traits = doc.get_list("traits");
  const std::size_t c = cm.traits.size();
  cm.prior_count.resize(c);
  cm.current_count.resize(c);
  cm.prior.resize(c);
  cm.current.resize(c);
  for (std::size_t x = 0; x < c; ++x) {
    const std::string k = "trait." + std::to_string(x) + ".";
    cm.prior_count[x] = doc.get_count(k + "prior_count");
    cm.current_count[x] = doc.get_count(k + "current_count");
    if (auto v = doc.find(k + "prior")) cm.prior[x] = base64::decode_f64(*v);
    if (auto v = doc.find(k + "current")) cm.current[x] = base64::decode_f64(*v);
    for (const auto* vec : {&cm.prior[x], &cm.current[x]})
      if (!vec->empty() && vec->size() != cm.dim) fail(ErrorCode::dimension_mismatch, "mean vector length != dim");
  }
  return cm;
}

// ---------------------------------------------------------------------------
// Steering plans

enum class SlotFamily { prior, current };
enum class SteeringSite { mlp_input, key_value };

inline std::string_view to_string(SlotFamily f) { return f == SlotFamily::prior ? "prior" : "current"; }
inline SlotFamily parse_slot_family(std::string_view s) {
  if (s == "prior") return SlotFamily::prior;
  if (s == "current") return SlotFamily::current;
  fail(ErrorCode::parse_error, "unknown slot family '" + std::string(s) + "'");
}
inline std::string_view to_string(SteeringSite s) { return s == SteeringSite::mlp_input ? "mlp-input" : "key-value"; }
inline SteeringSite parse_steering_site(std::string_view s) {
  if (s == "mlp-input") return SteeringSite::mlp_input;
  if (s == "key-value") return SteeringSite::key_value;
  fail(ErrorCode::parse_error, "unknown steering site '" + std::string(s) + "'");
}

inline constexpr double kDefaultSteeringLambda = 0.1;

struct LayerVector {
  std::int64_t layer = 0;
  std::vector<float> values;
  bool operator==(const LayerVector&) const = default;
};

struct SteeringPlan {
  std::string prompt_id;
  std::vector<Turn> turns;
  SlotFamily family = SlotFamily::prior;
  SteeringSite site = SteeringSite::mlp_input;
  double lambda = kDefaultSteeringLambda;
  int sign = 1;
  std::size_t entity = 0;
  TextSpan span;
  std::string span_text;
  std::string trait_removed;  // x1
  std::string trait_added;    // opposite(x2)
  std::vector<LayerVector> deltas;
  bool operator==(const SteeringPlan&) const = default;
};

// One ConditionMeans per steered layer.
inline SteeringPlan build_steering_plan(const PromptSpec& prompt, std::span<const ConditionMeans> layer_means,
                                        SlotFamily family, double lambda = kDefaultSteeringLambda, int sign = 1,
                                        SteeringSite site = SteeringSite::mlp_input) {
  require(prompt.family == PromptFamily::conflict, ErrorCode::invalid_argument, "steering plans need a conflict prompt");
  require(prompt.roster.size() >= 3, ErrorCode::invalid_argument, "conflict prompt needs at least three entities");
  require(sign == 1 || sign == -1, ErrorCode::invalid_argument, "sign must be +1 or -1");
  require(std::isfinite(lambda), ErrorCode::invalid_argument, "lambda must be finite");
  require(!layer_means.empty(), ErrorCode::invalid_argument, "need means for at least one layer");

  SteeringPlan plan;
  plan.prompt_id = prompt.id;
  plan.turns = prompt.turns;
  plan.family = family;
  plan.site = site;
  plan.lambda = lambda;
  plan.sign = sign;
  plan.entity = family == SlotFamily::prior ? 2 : 1;
  plan.trait_removed = prompt.roster[1].trait;
  plan.trait_added = TraitVocabulary().opposite(prompt.roster[2].trait);
  const auto spans = prompt.spans_of(SpanKind::trait, static_cast<int>(plan.entity));
  require(spans.size() == 1, ErrorCode::invariant_violation, "steered entity needs exactly one trait span");
  plan.span = spans[0];
  plan.span_text = std::string(prompt.span_text(plan.span));

  std::set<std::int64_t> seen;
  const double scale = static_cast<double>(sign) * lambda;
  for (const auto& cm : layer_means) {
    require(seen.insert(cm.layer).second, ErrorCode::invalid_argument, "duplicate layer in means");
    const auto& add = family == SlotFamily::prior ? cm.v_prior(plan.trait_added) : cm.v_current(plan.trait_added);
    const auto& sub = family == SlotFamily::prior ? cm.v_prior(plan.trait_removed) : cm.v_current(plan.trait_removed);
    LayerVector lv{cm.layer, std::vector<float>(cm.dim)};
    for (std::size_t i = 0; i < cm.dim; ++i) lv.values[i] = static_cast<float>(scale * (add[i] - sub[i]));
    plan.deltas.push_back(std::move(lv));
  }
  return plan;
}

inline SteeringPlan build_steering_plan(const PromptSpec& prompt, const ConditionMeans& means, SlotFamily family,
                                        double lambda = kDefaultSteeringLambda, int sign = 1,
                                        SteeringSite site = SteeringSite::mlp_input) {
  return build_steering_plan(prompt, std::span<const ConditionMeans>(&means, 1), family, lambda, sign, site);
}

namespace detail {

inline std::string span_field(const TextSpan& s) {
  return std::to_string(s.turn) + "," + std::to_string(s.begin) + "," + std::to_string(s.length) + "," +
         std::string(to_string(s.kind)) + "," + std::to_string(s.entity);
}

inline void put_turns(KvDocument& doc, const std::string& prefix, const std::vector<Turn>& turns) {
  doc.set(prefix + "turns", turns.size());
  for (std::size_t t = 0; t < turns.size(); ++t) {
    doc.set(prefix + "turn." + std::to_string(t) + ".role", to_string(turns[t].role));
    doc.set(prefix + "turn." + std::to_string(t) + ".text", turns[t].text);
  }
}

inline std::vector<Turn> get_turns(const KvDocument& doc, const std::string& prefix) {
  std::vector<Turn> turns(doc.get_count(prefix + "turns"));
  for (std::size_t t = 0; t < turns.size(); ++t) {
    turns[t].role = parse_role(doc.get(prefix + "turn." + std::to_string(t) + ".role"));
    turns[t].text = doc.get(prefix + "turn." + std::to_string(t) + ".text");
  }
  return turns;
}

inline void check_span(const std::vector<Turn>& turns, const TextSpan& s, std::string_view expected) {
  const bool ok = s.turn < turns.size() && s.begin + s.length <= turns[s.turn].text.size() &&
                  std::string_view(turns[s.turn].text).substr(s.begin, s.length) == expected;
  if (!ok) fail(ErrorCode::invariant_violation, "plan span does not match its recorded text");
}

}  // namespace detail

inline KvDocument steering_plan_to_document(const SteeringPlan& p) {
  KvDocument doc;
  doc.set("format", "slotprobe-steering-plan");
  doc.set("version", 1);
  doc.set("prompt.id", p.prompt_id);
  detail::put_turns(doc, "prompt.", p.turns);
  doc.set("family", to_string(p.family));
  doc.set("site", to_string(p.site));
  doc.set("lambda", p.lambda);
  doc.set("sign", p.sign);
  doc.set("entity", p.entity);
  doc.set("span", detail::span_field(p.span));
  doc.set("span.text", p.span_text);
  doc.set("token_indices", "client");  // resolved against the client's tokenizer from the character span
  doc.set("trait.removed", p.trait_removed);
  doc.set("trait.added", p.trait_added);
  doc.set("layers", p.deltas.size());
  for (std::size_t i = 0; i < p.deltas.size(); ++i) {
    doc.set("layer." + std::to_string(i) + ".index", p.deltas[i].layer);
    doc.set("layer." + std::to_string(i) + ".delta", base64::encode_f32(std::span<const float>(p.deltas[i].values)));
  }
  return doc;
}

inline SteeringPlan steering_plan_from_document(const KvDocument& doc) {
  if (doc.get("format") != "slotprobe-steering-plan") fail(ErrorCode::parse_error, "not a steering plan");
  if (doc.get_int("version") != 1) fail(ErrorCode::version_unsupported, "unsupported steering plan version");
  SteeringPlan p;
  p.prompt_id = doc.get("prompt.id");
  p.turns = detail::get_turns(doc, "prompt.");
  p.family = parse_slot_family(doc.get("family"));
  p.site = parse_steering_site(doc.get("site"));
  p.lambda = doc.get_double("lambda");
  p.sign = static_cast<int>(doc.get_int("sign"));
  p.entity = doc.get_count("entity");
  p.span = detail::parse_span(doc.get("span"));
  p.span_text = doc.get("span.text");
  detail::check_span(p.turns, p.span, p.span_text);
  p.trait_removed = doc.get("trait.removed");
  p.trait_added = doc.get("trait.added");
  const std::size_t n = doc.get_count("layers");
  for (std::size_t i = 0; i < n; ++i)
    p.deltas.push_back(LayerVector{doc.get_int("layer." + std::to_string(i) + ".index"),
                                   base64::decode_f32(doc.get("layer." + std::to_string(i) + ".delta"))});
  return p;
}

// ---------------------------------------------------------------------------
// Patch plans

enum class PatchCondition { current, prior };
enum class PatchTarget { keys, values, keys_values };

inline std::string_view to_string(PatchCondition c) { return c == PatchCondition::current ? "current" : "prior"; }
inline PatchCondition parse_patch_condition(std::string_view s) {
  if (s == "current") return PatchCondition::current;
  if (s == "prior") return PatchCondition::prior;
  fail(ErrorCode::parse_error, "unknown patch condition '" + std::string(s) + "'");
}
inline std::string_view to_string(PatchTarget t) {
  switch (t) {
    case PatchTarget::keys: return "keys";
    case PatchTarget::values: return "values";
    case PatchTarget::keys_values: return "keys+values";
  }
  return "?";
}
inline PatchTarget parse_patch_target(std::string_view s) {
  if (s == "keys") return PatchTarget::keys;
  if (s == "values") return PatchTarget::values;
  if (s == "keys+values") return PatchTarget::keys_values;
  fail(ErrorCode::parse_error, "unknown patch target '" + std::string(s) + "'");
}

struct PatchedEntity {
  std::size_t entity = 0;
  TextSpan source_span;
  TextSpan target_span;
  std::string source_text;
  std::string target_text;
  bool operator==(const PatchedEntity&) const = default;
};

struct PatchPlan {
  std::string source_id, target_id;
  PromptFamily task = PromptFamily::sequence_retrieval;
  PatchCondition condition = PatchCondition::current;
  PatchTarget target_kind = PatchTarget::keys_values;
  std::vector<std::int64_t> layers;  // empty means every layer
  std::vector<Turn> source_turns, target_turns;
  std::vector<PatchedEntity> entities;
  // Patching keys and values together stands in for patching the residual stream.
  bool residual_equivalent() const { return target_kind == PatchTarget::keys_values; }
  bool operator==(const PatchPlan&) const = default;
};

inline std::vector<std::size_t> patched_entities(PromptFamily task, PatchCondition condition) {
  std::vector<std::size_t> swapped;
  switch (task) {
    case PromptFamily::sequence_retrieval:
    case PromptFamily::binding: swapped = {1, 3}; break;
    case PromptFamily::presence: swapped = {1}; break;
    default: fail(ErrorCode::invalid_argument, "patch plans need a sequence-retrieval, presence or binding pair");
  }
  if (condition == PatchCondition::prior)
    for (auto& e : swapped) ++e;
  return swapped;
}

namespace detail {

inline std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  bool in = false;
  for (const char ch : s) {
    const bool space = ch == ' ' || ch == '\n' || ch == '\t';
    if (!space && !in) ++n;
    in = !space;
  }
  return n;
}

}  // namespace detail

inline PatchPlan build_patch_plan(const PromptSpec& source, const PromptSpec& target, PatchCondition condition,
                                  PatchTarget target_kind, std::vector<std::int64_t> layers = {}) {
  if (source.family != target.family || source.roster.size() != target.roster.size() ||
      source.turns.size() != target.turns.size())
    fail(ErrorCode::span_mismatch, "source and target prompts do not share a layout");
  PatchPlan plan;
  plan.source_id = source.id;
  plan.target_id = target.id;
  plan.task = target.family;
  plan.condition = condition;
  plan.target_kind = target_kind;
  plan.layers = std::move(layers);
  plan.source_turns = source.turns;
  plan.target_turns = target.turns;
  for (const std::size_t e : patched_entities(target.family, condition)) {
    const auto ss = source.spans_of(SpanKind::sentence, static_cast<int>(e));
    const auto ts = target.spans_of(SpanKind::sentence, static_cast<int>(e));
    if (ss.size() != 1 || ts.size() != 1)
      fail(ErrorCode::span_mismatch, "entity " + std::to_string(e) + " lacks a sentence span in source or target");
    PatchedEntity pe{e, ss[0], ts[0], std::string(source.span_text(ss[0])), std::string(target.span_text(ts[0]))};
    if (pe.source_span.turn != pe.target_span.turn || detail::word_count(pe.source_text) != detail::word_count(pe.target_text))
      fail(ErrorCode::span_mismatch, "entity " + std::to_string(e) + " spans differ in shape between source and target");
    plan.entities.push_back(std::move(pe));
  }
  return plan;
}

inline PatchPlan build_patch_plan(const PromptPair& pair, PatchCondition condition, PatchTarget target_kind,
                                  std::vector<std::int64_t> layers = {}) {
  return build_patch_plan(pair.source, pair.target, condition, target_kind, std::move(layers));
}

inline KvDocument patch_plan_to_document(const PatchPlan& p) {
  KvDocument doc;
  doc.set("format", "slotprobe-patch-plan");
  doc.set("version", 1);
  doc.set("task", to_string(p.task));
  doc.set("condition", to_string(p.condition));
  doc.set("target_kind", to_string(p.target_kind));
  doc.set("residual_equivalent", p.residual_equivalent());
  std::vector<std::string> layers;
  for (const auto l : p.layers) layers.push_back(std::to_string(l));
  doc.set("layers.all", p.layers.empty());
  doc.set_list("layers", layers);
  doc.set("source.id", p.source_id);
  doc.set("target.id", p.target_id);
  detail::put_turns(doc, "source.", p.source_turns);
  detail::put_turns(doc, "target.", p.target_turns);
  doc.set("token_indices", "client");
  doc.set("entities", p.entities.size());
  for (std::size_t i = 0; i < p.entities.size(); ++i) {
    const auto& e = p.entities[i];
    const std::string k = "entity." + std::to_string(i) + ".";
    doc.set(k + "index", e.entity);
    doc.set(k + "source_span", detail::span_field(e.source_span));
    doc.set(k + "target_span", detail::span_field(e.target_span));
    doc.set(k + "source_text", e.source_text);
    doc.set(k + "target_text", e.target_text);
  }
  return doc;
}

inline PatchPlan patch_plan_from_document(const KvDocument& doc) {
  if (doc.get("format") != "slotprobe-patch-plan") fail(ErrorCode::parse_error, "not a patch plan");
  if (doc.get_int("version") != 1) fail(ErrorCode::version_unsupported, "unsupported patch plan version");
  PatchPlan p;
  p.task = parse_family(doc.get("task"));
  p.condition = parse_patch_condition(doc.get("condition"));
  p.target_kind = parse_patch_target(doc.get("target_kind"));
  for (const auto& l : doc.get_list("layers")) p.layers.push_back(parse_int(l));
  p.source_id = doc.get("source.id");
  p.target_id = doc.get("target.id");
  p.source_turns = detail::get_turns(doc, "source.");
  p.target_turns = detail::get_turns(doc, "target.");
  const std::size_t n = doc.get_count("entities");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string k = "entity." + std::to_string(i) + ".";
    PatchedEntity e;
    e.entity = doc.get_count(k + "index");
    e.source_span = detail::parse_span(doc.get(k + "source_span"));
    e.target_span = detail::parse_span(doc.get(k + "target_span"));
    e.source_text = doc.get(k + "source_text");
    e.target_text = doc.get(k + "target_text");
    detail::check_span(p.source_turns, e.source_span, e.source_text);
    detail::check_span(p.target_turns, e.target_span, e.target_text);
    p.entities.push_back(std::move(e));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Logit records and scoring

struct LogitRecord {
  std::string trial;
  std::string run;        // e.g. "baseline", "patched", "positive", "negative"
  std::string condition;  // free-form grouping tag
  std::string source_answer;
  std::string target_answer;
  std::vector<std::pair<std::string, double>> logits;

  std::optional<double> logit(std::string_view token) const {
    for (const auto& [t, v] : logits)
      if (t == token) return v;
    return std::nullopt;
  }
  bool operator==(const LogitRecord&) const = default;
};

inline KvDocument logit_records_to_document(const std::vector<LogitRecord>& records) {
  KvDocument doc;
  doc.set("format", "slotprobe-logits");
  doc.set("version", 1);
  doc.set("records", records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const std::string k = "record." + std::to_string(i) + ".";
    doc.set(k + "trial", r.trial);
    doc.set(k + "run", r.run);
    doc.set(k + "condition", r.condition);
    doc.set(k + "source_answer", r.source_answer);
    doc.set(k + "target_answer", r.target_answer);
    doc.set(k + "logits", r.logits.size());
    for (std::size_t j = 0; j < r.logits.size(); ++j) {
      doc.set(k + "logit." + std::to_string(j) + ".token", r.logits[j].first);
      doc.set(k + "logit." + std::to_string(j) + ".value", r.logits[j].second);
    }
  }
  return doc;
}

inline std::vector<LogitRecord> logit_records_from_document(const KvDocument& doc) {
  if (doc.get("format") != "slotprobe-logits") fail(ErrorCode::parse_error, "not a logit record file");
  if (doc.get_int("version") != 1) fail(ErrorCode::version_unsupported, "unsupported logit record version");
  std::vector<LogitRecord> out(doc.get_count("records"));
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& r = out[i];
    const std::string k = "record." + std::to_string(i) + ".";
    r.trial = doc.get(k + "trial");
    r.run = doc.get(k + "run");
    r.condition = doc.get(k + "condition");
    r.source_answer = doc.get(k + "source_answer");
    r.target_answer = doc.get(k + "target_answer");
    const std::size_t n = doc.get_count(k + "logits");
    for (std::size_t j = 0; j < n; ++j)
      r.logits.emplace_back(doc.get(k + "logit." + std::to_string(j) + ".token"),
                            doc.get_double(k + "logit." + std::to_string(j) + ".value"));
  }
  return out;
}

enum class EffectMetric { sequence, binding, presence, conflict, conflict_bidirectional };

inline std::string_view to_string(EffectMetric m) {
  switch (m) {
    case EffectMetric::sequence: return "sequence";
    case EffectMetric::binding: return "binding";
    case EffectMetric::presence: return "presence";
    case EffectMetric::conflict: return "conflict";
    case EffectMetric::conflict_bidirectional: return "conflict-bidirectional";
  }
  return "?";
}

inline EffectMetric parse_effect_metric(std::string_view s) {
  for (const auto m : {EffectMetric::sequence, EffectMetric::binding, EffectMetric::presence, EffectMetric::conflict,
                       EffectMetric::conflict_bidirectional})
    if (to_string(m) == s) return m;
  fail(ErrorCode::parse_error, "unknown metric '" + std::string(s) + "'");
}

struct ScoreOptions {
  std::string baseline_run = "baseline";
  std::string intervened_run = "patched";
  std::string positive_run = "positive";
  std::string negative_run = "negative";
  std::string yes_token = " yes";
  std::string no_token = " no";
  std::size_t bootstrap_resamples = 1000;
  double confidence = 0.95;
  std::uint64_t seed = 0;
};

struct TrialEffect {
  std::string trial;
  double value = 0.0;
  std::optional<double> positive, negative;  // bidirectional metric only
};

struct EffectReport {
  EffectMetric metric = EffectMetric::sequence;
  std::vector<TrialEffect> trials;  // sorted by trial id
  double mean = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  std::optional<double> positive_mean, negative_mean;
};

namespace detail {

inline double need_logit(const LogitRecord& r, std::string_view token) {
  const auto v = r.logit(token);
  if (!v)
    fail(ErrorCode::invariant_violation,
         "record for trial '" + r.trial + "' run '" + r.run + "' lacks logit for '" + std::string(token) + "'");
  return *v;
}

inline double answer_effect(const LogitRecord& base, const LogitRecord& run, EffectMetric metric,
                            const ScoreOptions& o) {
  if (metric == EffectMetric::sequence || metric == EffectMetric::binding) {
    if (base.source_answer != run.source_answer || base.target_answer != run.target_answer)
      fail(ErrorCode::mismatched_trial_pairing, "trial '" + base.trial + "' answer tokens differ between runs");
    require(!base.source_answer.empty() && !base.target_answer.empty(), ErrorCode::invariant_violation,
            "trial '" + base.trial + "' lacks answer tokens");
    const double d_src = need_logit(run, base.source_answer) - need_logit(base, base.source_answer);
    const double d_tgt = need_logit(run, base.target_answer) - need_logit(base, base.target_answer);
    return d_src - d_tgt;
  }
  const double d_yes = need_logit(run, o.yes_token) - need_logit(base, o.yes_token);
  const double d_no = need_logit(run, o.no_token) - need_logit(base, o.no_token);
  return d_yes - d_no;
}

}  // namespace detail

inline std::pair<double, double> bootstrap_interval(std::span<const double> values, std::size_t resamples,
                                                    double confidence, std::uint64_t seed) {
  require(!values.empty(), ErrorCode::invalid_argument, "bootstrap needs at least one value");
  require(confidence > 0.0 && confidence < 1.0, ErrorCode::invalid_argument, "confidence must lie in (0, 1)");
  if (resamples == 0) return {0.0, 0.0};
  Rng rng(derive_seed(seed, 0xB007));
  std::vector<double> means(resamples);
  const std::size_t n = values.size();
  for (auto& m : means) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += values[rng.below(n)];
    m = s / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double alpha = (1.0 - confidence) / 2.0;
  auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples - 1) + 0.5));
    return means[std::min(idx, resamples - 1)];
  };
  return {at(alpha), at(1.0 - alpha)};
}

inline EffectReport score_intervention(const std::vector<LogitRecord>& records, EffectMetric metric,
                                       const ScoreOptions& opts = {}) {
  const bool bidir = metric == EffectMetric::conflict_bidirectional;
  std::vector<std::string> wanted = bidir ? std::vector<std::string>{opts.positive_run, opts.negative_run}
                                          : std::vector<std::string>{opts.intervened_run};

  std::map<std::string, std::map<std::string, const LogitRecord*>> by_trial;
  for (const auto& r : records) {
    const bool relevant = r.run == opts.baseline_run || std::find(wanted.begin(), wanted.end(), r.run) != wanted.end();
    if (!relevant) continue;
    auto& slot = by_trial[r.trial][r.run];
    if (slot) fail(ErrorCode::mismatched_trial_pairing, "trial '" + r.trial + "' has two '" + r.run + "' records");
    slot = &r;
  }
  require(!by_trial.empty(), ErrorCode::invalid_argument, "no records for the requested runs");

  EffectReport rep;
  rep.metric = metric;
  const EffectMetric base_metric = bidir ? EffectMetric::conflict : metric;
  for (const auto& [trial, runs] : by_trial) {
    const auto b = runs.find(opts.baseline_run);
    if (b == runs.end()) fail(ErrorCode::missing_baseline, "trial '" + trial + "' has no baseline record");
    std::vector<double> effects;
    for (const auto& w : wanted) {
      const auto it = runs.find(w);
      if (it == runs.end()) fail(ErrorCode::mismatched_trial_pairing, "trial '" + trial + "' has no '" + w + "' record");
      effects.push_back(detail::answer_effect(*b->second, *it->second, base_metric, opts));
    }
    TrialEffect te{trial, effects[0], std::nullopt, std::nullopt};
    if (bidir) {
      te.positive = effects[0];
      te.negative = effects[1];
      te.value = effects[0] - effects[1];
      if (te.value != *te.positive - *te.negative)
        fail(ErrorCode::invariant_violation, "bidirectional decomposition broken");
    }
    rep.trials.push_back(std::move(te));
  }

  std::vector<double> values;
  for (const auto& t : rep.trials) values.push_back(t.value);
  double s = 0.0;
  for (const double v : values) s += v;
  rep.mean = s / static_cast<double>(values.size());
  std::tie(rep.ci_low, rep.ci_high) = bootstrap_interval(values, opts.bootstrap_resamples, opts.confidence, opts.seed);
  if (bidir) {
    double sp = 0.0, sn = 0.0;
    for (const auto& t : rep.trials) {
      sp += *t.positive;
      sn += *t.negative;
    }
    rep.positive_mean = sp / static_cast<double>(rep.trials.size());
    rep.negative_mean = sn / static_cast<double>(rep.trials.size());
  }
  return rep;
}

inline KvDocument effect_report_to_document(const EffectReport& r) {
  KvDocument doc;
  doc.set("format", "slotprobe-effect");
  doc.set("version", 1);
  doc.set("metric", to_string(r.metric));
  doc.set("trials", r.trials.size());
  doc.set("mean", r.mean);
  doc.set("ci_low", r.ci_low);
  doc.set("ci_high", r.ci_high);
  if (r.positive_mean) doc.set("positive_mean", *r.positive_mean);
  if (r.negative_mean) doc.set("negative_mean", *r.negative_mean);
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    const std::string k = "trial." + std::to_string(i) + ".";
    doc.set(k + "id", r.trials[i].trial);
    doc.set(k + "effect", r.trials[i].value);
    if (r.trials[i].positive) doc.set(k + "positive", *r.trials[i].positive);
    if (r.trials[i].negative) doc.set(k + "negative", *r.trials[i].negative);
  }
  return doc;
}

}  // namespace slotprobe
