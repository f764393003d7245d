#pragma once

// Reads dual-binding prompt text back into (subject, verb) -> object facts
// and answers the prefill question from those facts alone.

#include <map>
#include <set>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "slotprobe/behavior.hpp"
#include "slotprobe/lexicon.hpp"
#include "slotprobe/prompt_kit.hpp"
#include "slotprobe/random.hpp"

namespace slotprobe::testing {

inline std::vector<std::string> words_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

using Facts = std::map<std::pair<std::string, std::string>, std::vector<std::string>>;

// Returns nullopt when a sentence has none of the three known shapes.
inline std::optional<Facts> interpret_dual_text(const std::string& text) {
  std::map<std::string, std::string> verb_of_participle;
  for (const auto& f : dual_binding_frames()) {
    verb_of_participle[std::string(f.participle0)] = std::string(f.verb0);
    verb_of_participle[std::string(f.participle1)] = std::string(f.verb1);
  }
  Facts facts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('.', pos);
    if (end == std::string::npos) return std::nullopt;
    const auto w = words_of(text.substr(pos, end - pos));
    pos = end + 1;
    if (w.size() == 6 && w[2] == "and") {
      // S1 V1 and S2 V2 OBJ
      facts[{w[0], w[1]}].push_back(w[5]);
      facts[{w[3], w[4]}].push_back(w[5]);
    } else if (w.size() == 3) {
      facts[{w[0], w[1]}].push_back(w[2]);
    } else if (w.size() == 9 && (w[1] == "is" || w[1] == "are") && w[3] == "by" && w[5] == "and" && w[7] == "by") {
      // OBJ is P1 by S1 and P2 by S2
      const std::string obj = lowercase(w[0]);
      if (!verb_of_participle.count(w[2]) || !verb_of_participle.count(w[6])) return std::nullopt;
      facts[{w[4], verb_of_participle[w[2]]}].push_back(obj);
      facts[{w[8], verb_of_participle[w[6]]}].push_back(obj);
    } else {
      return std::nullopt;
    }
  }
  return facts;
}

// Answer for a prompt whose prefill reads "<Subject> is the one who <verb>".
inline std::optional<std::string> interpret_dual_prompt(const PromptSpec& p) {
  if (p.turns.size() != 2) return std::nullopt;
  const auto facts = interpret_dual_text(p.turns[0].text);
  const auto q = words_of(p.turns[1].text);
  if (!facts || q.size() != 6 || q[1] != "is" || q[2] != "the" || q[3] != "one" || q[4] != "who") return std::nullopt;
  const auto it = facts->find({q[0], q[5]});
  if (it == facts->end() || it->second.size() != 1) return std::nullopt;
  return it->second[0];
}

// Knows one of the two bindings of each object, read from the prompt text,
// and guesses between the candidates otherwise. Prompts sharing a pair_id
// share what is known.
inline std::vector<ResponseLog> one_binding_responses(const PromptSet& set, std::uint64_t seed,
                                                      const std::string& model = "m") {
  Rng rng(seed);
  std::map<std::string, std::set<std::pair<std::string, std::string>>> known;
  std::vector<ResponseLog> logs;
  for (const auto& p : set.prompts) {
    const auto facts = interpret_dual_text(p.turns[0].text);
    if (!facts) fail(ErrorCode::invariant_violation, "uninterpretable prompt " + p.id);
    if (!known.count(p.pair_id)) {
      std::map<std::string, std::vector<std::pair<std::string, std::string>>> bindings_of;
      for (const auto& [key, objs] : *facts)
        for (const auto& o : objs) bindings_of[o].push_back(key);
      auto& k = known[p.pair_id];
      for (const auto& [obj, b] : bindings_of) k.insert(b[rng.below(b.size())]);
    }
    const auto q = words_of(p.turns[1].text);
    const std::pair<std::string, std::string> asked{q.at(0), q.at(5)};
    ResponseLog r;
    r.prompt_id = p.id;
    r.model_id = model;
    if (known[p.pair_id].count(asked))
      r.first_token = " " + facts->at(asked).front();
    else
      r.first_token = " " + p.answer.candidates[rng.below(p.answer.candidates.size())];
    logs.push_back(std::move(r));
  }
  return logs;
}

}  // namespace slotprobe::testing
