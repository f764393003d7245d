#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "slotprobe/error.hpp"

namespace slotprobe {

struct TraitPair {
  std::string_view base;
  std::string_view opposite;
};

// Short one-word traits for list prompts. None of these (or their opposites)
// is used as an example in the conflict instruction block.
inline constexpr std::array<TraitPair, 20> kTraitPairs{{
    {"strong", "weak"},     {"tall", "short"},      {"cool", "uncool"},     {"funny", "serious"},
    {"brave", "timid"},     {"organized", "messy"}, {"fit", "unfit"},       {"careless", "careful"},
    {"warm", "cold"},       {"kind", "cruel"},      {"rich", "poor"},       {"quiet", "loud"},
    {"polite", "rude"},     {"smart", "dumb"},      {"young", "old"},       {"lazy", "diligent"},
    {"clean", "dirty"},     {"generous", "greedy"}, {"humble", "arrogant"}, {"gentle", "harsh"},
}};

inline constexpr std::array<std::string_view, 20> kNamePool{
    "Zed",  "Alice", "Bob",  "Carol", "David", "Elaine", "Chuck", "Dani", "Frank", "Grace",
    "Henry", "Ivan", "Jack", "Kate",  "Leo",   "Mark",   "Nina",  "Oscar", "Paul", "Rose",
};

// Traits named in the conflict instruction's example list.
inline constexpr std::array<std::string_view, 8> kConflictExampleTraits{
    "optimistic", "pessimistic", "confident", "insecure", "stoic", "dramatic", "cheerful", "gloomy",
};

// The 15 long-form description traits, in label order.
inline constexpr std::array<std::string_view, 15> kDescriptionTraits{
    "athletic", "analytical", "creative",    "organized",  "social",     "patient",   "brave", "honest",
    "curious",  "nurturing",  "practical",   "ambitious",  "independent", "articulate", "calm",
};

class TraitVocabulary {
 public:
  TraitVocabulary() {
    for (const auto& p : kTraitPairs) base_.emplace_back(p.base);
    for (const auto& p : kTraitPairs) all_.emplace_back(p.base);
    for (const auto& p : kTraitPairs) all_.emplace_back(p.opposite);
  }

  const std::vector<std::string>& base() const { return base_; }
  // Base traits followed by their opposites (40 entries).
  const std::vector<std::string>& all() const { return all_; }

  bool contains(std::string_view t) const {
    for (const auto& x : all_)
      if (x == t) return true;
    return false;
  }

  std::string opposite(std::string_view t) const {
    for (const auto& p : kTraitPairs) {
      if (p.base == t) return std::string(p.opposite);
      if (p.opposite == t) return std::string(p.base);
    }
    fail(ErrorCode::unknown_opposite, "no opposite known for '" + std::string(t) + "'");
  }

  bool are_opposites(std::string_view a, std::string_view b) const {
    for (const auto& p : kTraitPairs)
      if ((p.base == a && p.opposite == b) || (p.base == b && p.opposite == a)) return true;
    return false;
  }

 private:
  std::vector<std::string> base_;
  std::vector<std::string> all_;
};

// ---------------------------------------------------------------------------
// Dual-binding lexicon: verb pairs with their past participles and the
// objects that make sense with them.

struct DualObject {
  std::string_view word;
  bool plural;
};

struct DualVerbFrame {
  std::string_view verb0, verb1;              // third-person singular present
  std::string_view participle0, participle1;  // for the flipped passive form
  std::vector<DualObject> objects;
};

inline const std::vector<DualVerbFrame>& dual_binding_frames() {
  static const std::vector<DualVerbFrame> frames{
      {"prepares", "consumes", "prepared", "consumed",
       {{"food", false}, {"drinks", true}, {"soup", false}, {"bread", false}, {"snacks", true}, {"tea", false}}},
      {"buys", "sells", "bought", "sold",
       {{"books", true}, {"shoes", true}, {"lamps", true}, {"bikes", true}, {"furniture", false}, {"jewelry", false}}},
      {"writes", "reads", "written", "read",
       {{"letters", true}, {"poems", true}, {"reports", true}, {"novels", true}, {"mail", false}, {"news", false}}},
      {"builds", "repairs", "built", "repaired",
       {{"boats", true}, {"fences", true}, {"chairs", true}, {"clocks", true}, {"furniture", false}, {"radios", true}}},
      {"sends", "receives", "sent", "received",
       {{"gifts", true}, {"packages", true}, {"letters", true}, {"money", false}, {"flowers", true}, {"mail", false}}},
      {"grows", "harvests", "grown", "harvested",
       {{"wheat", false}, {"corn", false}, {"apples", true}, {"grapes", true}, {"rice", false}, {"potatoes", true}}},
      {"paints", "sketches", "painted", "sketched",
       {{"portraits", true}, {"landscapes", true}, {"birds", true}, {"flowers", true}, {"boats", true}, {"horses", true}}},
      {"washes", "dries", "washed", "dried",
       {{"dishes", true}, {"clothes", true}, {"laundry", false}, {"towels", true}, {"cups", true}, {"linen", false}}},
  };
  return frames;
}

}  // namespace slotprobe
