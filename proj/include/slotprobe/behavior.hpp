#pragma once

#include <array>
#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "slotprobe/error.hpp"
#include "slotprobe/kv_document.hpp"
#include "slotprobe/prompt_kit.hpp"

namespace slotprobe {

struct ResponseLog {
  std::string prompt_id;
  std::string model_id;
  std::string condition;    // optional; must match the prompt when present
  int question = -1;        // optional; must match the prompt when present
  std::string first_token;  // raw text of the first generated token
  std::map<std::string, std::string> metadata;
  bool operator==(const ResponseLog&) const = default;
};

inline KvDocument response_logs_to_document(const std::vector<ResponseLog>& logs) {
  KvDocument doc;
  doc.set("format", "slotprobe-responses");
  doc.set("version", 1);
  doc.set("records", logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto& r = logs[i];
    const std::string k = "record." + std::to_string(i) + ".";
    doc.set(k + "prompt", r.prompt_id);
    doc.set(k + "model", r.model_id);
    doc.set(k + "condition", r.condition);
    doc.set(k + "question", r.question);
    doc.set(k + "token", r.first_token);
    for (const auto& [key, v] : r.metadata) doc.set(k + "meta." + key, v);
  }
  return doc;
}

inline std::vector<ResponseLog> response_logs_from_document(const KvDocument& doc) {
  if (doc.get("format") != "slotprobe-responses") fail(ErrorCode::parse_error, "not a response log file");
  if (doc.get_int("version") != 1) fail(ErrorCode::version_unsupported, "unsupported response log version");
  std::vector<ResponseLog> out(doc.get_count("records"));
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& r = out[i];
    const std::string k = "record." + std::to_string(i) + ".";
    r.prompt_id = doc.get(k + "prompt");
    r.model_id = doc.get(k + "model");
    r.condition = doc.get(k + "condition");
    r.question = static_cast<int>(doc.get_int(k + "question"));
    r.first_token = doc.get(k + "token");
    index.emplace(k + "meta.", i);
  }
  for (const auto& [key, v] : doc.entries()) {
    if (!key.starts_with("record.")) continue;
    const auto meta = key.find(".meta.");
    if (meta == std::string::npos) continue;
    const auto it = index.find(key.substr(0, meta + 6));
    if (it != index.end()) out[it->second].metadata[key.substr(meta + 6)] = v;
  }
  return out;
}

// Strips leading whitespace and lower-cases ASCII.
inline std::string normalize_token(std::string_view raw) {
  std::size_t i = 0;
  while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
  std::string out(raw.substr(i));
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

inline constexpr double kValidityInclusionBar = 0.79;

struct QuestionStats {
  std::size_t total = 0, valid = 0, correct = 0;
  std::optional<double> accuracy() const {
    if (valid == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(valid);
  }
};

struct AccuracyReport {
  std::string model;
  std::string condition;
  QuestionStats overall;
  std::array<QuestionStats, kDualQuestions> per_question{};

  std::optional<double> accuracy() const { return overall.accuracy(); }
  double validity() const {
    return overall.total == 0 ? 0.0 : static_cast<double>(overall.valid) / static_cast<double>(overall.total);
  }
  double invalid_fraction() const {
    return overall.total == 0 ? 0.0
                              : static_cast<double>(overall.total - overall.valid) / static_cast<double>(overall.total);
  }
  bool below_inclusion_bar() const { return validity() < kValidityInclusionBar; }
};

// One report per (model, condition), ordered by model then condition.
inline std::vector<AccuracyReport> score_behavior(const PromptSet& prompts, const std::vector<ResponseLog>& logs) {
  std::unordered_map<std::string_view, const PromptSpec*> by_id;
  for (const auto& p : prompts.prompts) by_id.emplace(p.id, &p);

  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::pair<std::string, std::string>, AccuracyReport> reports;
  for (const auto& log : logs) {
    const auto it = by_id.find(log.prompt_id);
    if (it == by_id.end()) fail(ErrorCode::unmatched_log, "no prompt with id '" + log.prompt_id + "'");
    const PromptSpec& p = *it->second;
    if (p.answer.candidates.empty() || p.answer.expected.empty())
      fail(ErrorCode::unmatched_log, "prompt '" + p.id + "' has no object answer key");
    if (!log.condition.empty() && log.condition != p.condition)
      fail(ErrorCode::unmatched_log, "log for '" + p.id + "' names condition '" + log.condition + "'");
    if (log.question >= 0 && log.question != p.answer.question)
      fail(ErrorCode::unmatched_log, "log for '" + p.id + "' names a different question");
    if (!seen.emplace(log.prompt_id, log.model_id).second)
      fail(ErrorCode::duplicate_log, "second log for prompt '" + log.prompt_id + "' and model '" + log.model_id + "'");

    auto& rep = reports[{log.model_id, p.condition}];
    rep.model = log.model_id;
    rep.condition = p.condition;
    const std::string tok = normalize_token(log.first_token);
    bool valid = false;
    for (const auto& c : p.answer.candidates) valid = valid || tok == normalize_token(c);
    const bool correct = valid && tok == normalize_token(p.answer.expected);

    auto bump = [&](QuestionStats& s) {
      ++s.total;
      s.valid += valid;
      s.correct += correct;
    };
    bump(rep.overall);
    if (p.answer.question >= 0 && p.answer.question < static_cast<int>(kDualQuestions))
      bump(rep.per_question[static_cast<std::size_t>(p.answer.question)]);
  }
  std::vector<AccuracyReport> out;
  for (auto& [key, r] : reports) out.push_back(std::move(r));
  return out;
}

inline KvDocument behavior_report_to_document(const std::vector<AccuracyReport>& reports) {
  KvDocument doc;
  doc.set("format", "slotprobe-behavior");
  doc.set("version", 1);
  doc.set("reports", reports.size());
  doc.set("validity_bar", kValidityInclusionBar);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const std::string k = "report." + std::to_string(i) + ".";
    doc.set(k + "model", r.model);
    doc.set(k + "condition", r.condition);
    doc.set(k + "total", r.overall.total);
    doc.set(k + "valid", r.overall.valid);
    doc.set(k + "correct", r.overall.correct);
    doc.set(k + "validity", r.validity());
    if (auto a = r.accuracy()) doc.set(k + "accuracy", *a);
    doc.set(k + "below_validity_bar", r.below_inclusion_bar());
    for (std::size_t q = 0; q < kDualQuestions; ++q) {
      const std::string qk = k + "q" + std::to_string(q) + ".";
      const auto& s = r.per_question[q];
      doc.set(qk + "total", s.total);
      doc.set(qk + "valid", s.valid);
      doc.set(qk + "correct", s.correct);
      if (auto a = s.accuracy()) doc.set(qk + "accuracy", *a);
    }
  }
  return doc;
}

inline std::string behavior_table(const std::vector<AccuracyReport>& reports) {
  auto pct = [](std::optional<double> v) {
    if (!v) return std::string("   -  ");
    char buf[16];
    std::snprintf(buf, sizeof buf, "%6.1f", 100.0 * *v);
    return std::string(buf);
  };
  std::string out = "model                condition    valid%   acc%     Q0     Q1     Q2     Q3\n";
  for (const auto& r : reports) {
    char head[64];
    std::snprintf(head, sizeof head, "%-20.20s %-10.10s", r.model.c_str(), r.condition.c_str());
    out += head;
    out += " " + pct(r.validity()) + " " + pct(r.accuracy());
    for (const auto& q : r.per_question) out += " " + pct(q.accuracy());
    if (r.below_inclusion_bar()) out += "  (validity below bar)";
    out += "\n";
  }
  return out;
}

}  // namespace slotprobe
