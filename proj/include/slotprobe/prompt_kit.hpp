#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "slotprobe/activation_store.hpp"
#include "slotprobe/description_corpus.hpp"
#include "slotprobe/error.hpp"
#include "slotprobe/kv_document.hpp"
#include "slotprobe/lexicon.hpp"
#include "slotprobe/random.hpp"

namespace slotprobe {

enum class PromptFamily {
  probe_list,
  conversation,
  self_description,
  sequence_retrieval,
  conflict,
  presence,
  binding,
  dual_binding,
};

inline constexpr std::array<std::pair<PromptFamily, std::string_view>, 8> kFamilyNames{{
    {PromptFamily::probe_list, "probe-list"},
    {PromptFamily::conversation, "conversation"},
    {PromptFamily::self_description, "self-description"},
    {PromptFamily::sequence_retrieval, "sequence-retrieval"},
    {PromptFamily::conflict, "conflict"},
    {PromptFamily::presence, "presence"},
    {PromptFamily::binding, "binding"},
    {PromptFamily::dual_binding, "dual-binding"},
}};

inline std::string_view to_string(PromptFamily f) {
  for (const auto& [v, name] : kFamilyNames)
    if (v == f) return name;
  return "?";
}

inline PromptFamily parse_family(std::string_view s) {
  for (const auto& [v, name] : kFamilyNames)
    if (name == s) return v;
  fail(ErrorCode::parse_error, "unknown prompt family '" + std::string(s) + "'");
}

enum class SpanKind { period, sentence, name, trait, object, prefill };

inline constexpr std::array<std::pair<SpanKind, std::string_view>, 6> kSpanKindNames{{
    {SpanKind::period, "period"},
    {SpanKind::sentence, "sentence"},
    {SpanKind::name, "name"},
    {SpanKind::trait, "trait"},
    {SpanKind::object, "object"},
    {SpanKind::prefill, "prefill"},
}};

inline std::string_view to_string(SpanKind k) {
  for (const auto& [v, name] : kSpanKindNames)
    if (v == k) return name;
  return "?";
}

inline SpanKind parse_span_kind(std::string_view s) {
  for (const auto& [v, name] : kSpanKindNames)
    if (name == s) return v;
  fail(ErrorCode::parse_error, "unknown span kind '" + std::string(s) + "'");
}

struct Turn {
  Role role = Role::user;
  std::string text;
  bool operator==(const Turn&) const = default;
};

// Character span inside one turn. `entity` is -1 when the span is not tied
// to a roster entry; object spans use it for the object index.
struct TextSpan {
  std::size_t turn = 0;
  std::size_t begin = 0;
  std::size_t length = 0;
  SpanKind kind = SpanKind::period;
  int entity = -1;
  bool operator==(const TextSpan&) const = default;
};

struct RosterEntry {
  std::string name;
  std::string trait;
  Role role = Role::user;
  bool operator==(const RosterEntry&) const = default;
};

struct AnswerKey {
  std::string expected;                // empty for probe prompts
  std::vector<std::string> candidates;
  std::string polarity;                // "Yes" / "No" for yes-no tasks
  int question = -1;                   // dual-binding question index
  bool operator==(const AnswerKey&) const = default;
};

struct PromptSpec {
  std::string id;
  PromptFamily family = PromptFamily::probe_list;
  std::string condition;
  std::string pair_id;
  std::vector<Turn> turns;
  bool prefill = false;       // last turn is a partial assistant response
  bool think_prefix = false;  // client opens a thinking block before the prefill
  std::vector<TextSpan> spans;
  std::vector<RosterEntry> roster;
  AnswerKey answer;
  std::vector<std::string> single_token_words;  // checked against the tokenizer by the client
  std::map<std::string, std::string> attributes;

  std::string_view span_text(const TextSpan& s) const {
    return std::string_view(turns.at(s.turn).text).substr(s.begin, s.length);
  }

  std::vector<TextSpan> spans_of(SpanKind kind, int entity = -2) const {
    std::vector<TextSpan> out;
    for (const auto& s : spans)
      if (s.kind == kind && (entity == -2 || s.entity == entity)) out.push_back(s);
    return out;
  }

  bool operator==(const PromptSpec&) const = default;
};

struct PromptSet {
  std::vector<std::string> trait_vocab;  // label order for probe prompts
  std::vector<PromptSpec> prompts;
  bool operator==(const PromptSet&) const = default;
};

// Every span indexes valid text; trait and name spans spell the roster entry.
inline void validate(const PromptSpec& p) {
  auto bad = [&](const std::string& what) { fail(ErrorCode::invariant_violation, p.id + ": " + what); };
  for (const auto& s : p.spans) {
    if (s.turn >= p.turns.size()) bad("span turn out of range");
    if (s.begin + s.length > p.turns[s.turn].text.size()) bad("span exceeds turn text");
    const auto text = p.span_text(s);
    if (s.kind == SpanKind::period && text != ".") bad("period span does not cover '.'");
    if ((s.kind == SpanKind::trait || s.kind == SpanKind::name) && s.entity >= 0) {
      if (static_cast<std::size_t>(s.entity) >= p.roster.size()) bad("span entity outside roster");
      const auto& r = p.roster[static_cast<std::size_t>(s.entity)];
      if (text != (s.kind == SpanKind::trait ? r.trait : r.name)) bad("span text does not match roster");
    }
    if (s.kind == SpanKind::prefill && (!p.prefill || s.turn + 1 != p.turns.size())) bad("prefill span not in final turn");
  }
  if (p.prefill && (p.turns.empty() || p.turns.back().role != Role::assistant)) bad("prefill needs a final assistant turn");
}

namespace detail {

inline std::string padded(std::size_t v, std::size_t width) {
  std::string s = std::to_string(v);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

class PromptWriter {
 public:
  explicit PromptWriter(PromptSpec& spec) : spec_(spec) {}

  void turn(Role role) { spec_.turns.push_back(Turn{role, {}}); }

  std::size_t append(std::string_view text) {
    auto& t = spec_.turns.back().text;
    const std::size_t at = t.size();
    t += text;
    return at;
  }

  std::size_t append_marked(std::string_view text, SpanKind kind, int entity) {
    const std::size_t at = append(text);
    mark(at, text.size(), kind, entity);
    return at;
  }

  void mark(std::size_t begin, std::size_t length, SpanKind kind, int entity) {
    spec_.spans.push_back(TextSpan{spec_.turns.size() - 1, begin, length, kind, entity});
  }

  std::size_t size() const { return spec_.turns.back().text.size(); }

  void prefill(std::string_view text) {
    turn(Role::assistant);
    append_marked(text, SpanKind::prefill, -1);
    spec_.prefill = true;
  }

 private:
  PromptSpec& spec_;
};

// Draws k distinct indices from [0, n).
inline std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
  idx.resize(k);
  return idx;
}

inline std::vector<std::string> unique_in_order(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& x : items)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

inline std::string capitalize(std::string_view w) {
  std::string s(w);
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Description corpus

struct DescriptionCorpus {
  std::vector<std::string> traits;
  std::vector<std::vector<std::string>> descriptions;  // per trait

  const std::vector<std::string>& of(std::string_view trait) const {
    for (std::size_t i = 0; i < traits.size(); ++i)
      if (traits[i] == trait) return descriptions[i];
    fail(ErrorCode::vocabulary_missing, "no descriptions for trait '" + std::string(trait) + "'");
  }
};

inline constexpr std::size_t kSentencesPerDescription = 4;

inline bool is_well_formed_description(std::string_view d) {
  if (d.empty() || d.back() != '.') return false;
  if (d.find_first_of("?!\n") != std::string_view::npos) return false;
  return static_cast<std::size_t>(std::count(d.begin(), d.end(), '.')) == kSentencesPerDescription;
}

// "[trait]" header lines followed by one description per line; blank lines
// and lines starting with '#' are skipped.
inline DescriptionCorpus parse_description_corpus(std::string_view text) {
  DescriptionCorpus c;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        fail(ErrorCode::parse_error, "corpus line " + std::to_string(line_no) + ": bad trait header");
      c.traits.emplace_back(line.substr(1, line.size() - 2));
      c.descriptions.emplace_back();
      continue;
    }
    if (c.traits.empty()) fail(ErrorCode::parse_error, "corpus line " + std::to_string(line_no) + ": text before header");
    if (!is_well_formed_description(line))
      fail(ErrorCode::parse_error, "corpus line " + std::to_string(line_no) + ": description must be four sentences");
    c.descriptions.back().emplace_back(line);
  }
  return c;
}

inline const DescriptionCorpus& bundled_corpus() {
  static const DescriptionCorpus corpus = parse_description_corpus(kDescriptionCorpus);
  return corpus;
}

// Rewrites a third-person singular-"they" description into first person.
inline std::string to_first_person(std::string_view text) {
  static const std::map<std::string, std::string, std::less<>> words{
      {"they", "I"},        {"their", "my"},      {"them", "me"},      {"themselves", "myself"},
      {"themself", "myself"}, {"theirs", "mine"}, {"they're", "I'm"},  {"they've", "I've"},
      {"they'd", "I'd"},    {"they'll", "I'll"},
  };
  static const std::map<std::string, std::string, std::less<>> be{{"are", "am"}, {"were", "was"}, {"aren't", "am not"}, {"weren't", "wasn't"}};

  auto is_word = [](char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '\''; };
  auto lower = [](std::string_view w) {
    std::string s(w);
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
  };

  std::string out;
  out.reserve(text.size());
  bool after_they = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word(text[i])) {
      if (text[i] != ' ') after_they = false;
      out += text[i++];
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word(text[j])) ++j;
    const std::string_view w = text.substr(i, j - i);
    const std::string lw = lower(w);
    const bool cap = std::isupper(static_cast<unsigned char>(w[0]));
    if (after_they && be.count(lw)) {
      out += be.find(lw)->second;
      after_they = false;
    } else if (auto it = words.find(lw); it != words.end()) {
      std::string r = it->second;
      if (cap) r = detail::capitalize(r);
      out += r;
      after_they = lw == "they";
    } else {
      out += w;
      after_they = false;
    }
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probe prompts

enum class ProbeVariant { user_only, conversation, self_description };

inline std::string_view to_string(ProbeVariant v) {
  switch (v) {
    case ProbeVariant::user_only: return "user-only";
    case ProbeVariant::conversation: return "conversation";
    case ProbeVariant::self_description: return "self-description";
  }
  return "?";
}

inline ProbeVariant parse_probe_variant(std::string_view s) {
  if (s == "user-only") return ProbeVariant::user_only;
  if (s == "conversation") return ProbeVariant::conversation;
  if (s == "self-description") return ProbeVariant::self_description;
  fail(ErrorCode::parse_error, "unknown probe variant '" + std::string(s) + "'");
}

inline constexpr std::size_t kProbeEntities = 8;
inline constexpr std::string_view kStoryIntro = "I'm writing a story. What do you think about this list of potential characters:\n\n";
inline constexpr std::string_view kGameIntro =
    "Let's play a game! Let's each describe a hypothetical third party character or ourselves. I'll start.\n\n";
inline constexpr std::string_view kDescriptionClosing = " That's the full description of this character.";

struct ProbeOptions {
  std::vector<std::string> names;  // empty means the bundled name pool
};

namespace detail {

inline void write_description(PromptWriter& w, std::string_view label, std::string_view desc, int entity) {
  w.append_marked(label, SpanKind::name, entity);
  w.append(": ");
  const std::size_t start = w.size();
  w.append(desc);
  std::size_t sentence_begin = start;
  for (std::size_t k = 0; k < desc.size(); ++k) {
    if (desc[k] != '.') continue;
    w.mark(start + k, 1, SpanKind::period, entity);
    w.mark(sentence_begin, start + k + 1 - sentence_begin, SpanKind::sentence, entity);
    sentence_begin = start + k + 1;
    while (sentence_begin < start + desc.size() && desc[sentence_begin - start] == ' ') ++sentence_begin;
  }
  w.append(kDescriptionClosing);
}

}  // namespace detail

inline PromptSpec make_probe_prompt(std::size_t index, ProbeVariant variant, std::uint64_t seed,
                                    const DescriptionCorpus& corpus, std::span<const std::string> names) {
  if (names.size() < kProbeEntities)
    fail(ErrorCode::pool_exhausted, "need at least " + std::to_string(kProbeEntities) + " names");
  Rng rng(derive_seed(seed, index));

  PromptSpec p;
  p.id = "probe-" + std::string(to_string(variant)) + "-" + detail::padded(index, 6);
  p.family = variant == ProbeVariant::user_only      ? PromptFamily::probe_list
             : variant == ProbeVariant::conversation ? PromptFamily::conversation
                                                     : PromptFamily::self_description;
  p.condition = std::string(to_string(variant));

  const auto name_idx = detail::sample_distinct(rng, names.size(), kProbeEntities);
  std::vector<std::size_t> label(kProbeEntities), pick(kProbeEntities);
  for (std::size_t e = 0; e < kProbeEntities; ++e) {
    label[e] = rng.below(corpus.traits.size());
    pick[e] = rng.below(corpus.descriptions[label[e]].size());
  }

  detail::PromptWriter w(p);
  for (std::size_t e = 0; e < kProbeEntities; ++e) {
    const bool self = variant == ProbeVariant::self_description && (e == 1 || e == 2);
    const Role role = variant == ProbeVariant::user_only ? Role::user : (e % 2 == 0 ? Role::user : Role::assistant);
    const std::string name = self ? "Me" : names[name_idx[e]];
    p.roster.push_back(RosterEntry{name, corpus.traits[label[e]], role});

    if (variant == ProbeVariant::user_only) {
      if (e == 0) {
        w.turn(Role::user);
        w.append(kStoryIntro);
      } else {
        w.append("\n\n");
      }
    } else {
      w.turn(role);
      if (e == 0) w.append(kGameIntro);
    }
    const std::string& desc = corpus.descriptions[label[e]][pick[e]];
    detail::write_description(w, name, self ? to_first_person(desc) : desc, static_cast<int>(e));
    if (!self) p.single_token_words.push_back(name);
  }
  p.attributes["labels"] = [&] {
    std::string s;
    for (std::size_t e = 0; e < kProbeEntities; ++e) s += (e ? "," : "") + std::to_string(label[e]);
    return s;
  }();
  return p;
}

inline PromptSet make_probe_prompts(std::size_t n, ProbeVariant variant, std::uint64_t seed,
                                    const DescriptionCorpus& corpus = bundled_corpus(), const ProbeOptions& opts = {}) {
  if (corpus.traits.empty()) fail(ErrorCode::vocabulary_missing, "description corpus has no traits");
  for (std::size_t i = 0; i < corpus.traits.size(); ++i)
    if (corpus.descriptions[i].empty())
      fail(ErrorCode::vocabulary_missing, "trait '" + corpus.traits[i] + "' has no descriptions");
  std::vector<std::string> names = opts.names;
  if (names.empty()) names.assign(kNamePool.begin(), kNamePool.end());

  PromptSet set;
  set.trait_vocab = corpus.traits;
  set.prompts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) set.prompts.push_back(make_probe_prompt(i, variant, seed, corpus, names));
  return set;
}

// ---------------------------------------------------------------------------
// List prompts (sequence retrieval, presence, binding, conflict)

inline constexpr std::size_t kListEntities = 6;

enum class ListTask { sequence_retrieval, presence, binding };

inline std::string_view to_string(ListTask t) {
  switch (t) {
    case ListTask::sequence_retrieval: return "sequence-retrieval";
    case ListTask::presence: return "presence";
    case ListTask::binding: return "binding";
  }
  return "?";
}

inline ListTask parse_list_task(std::string_view s) {
  if (s == "sequence-retrieval") return ListTask::sequence_retrieval;
  if (s == "presence") return ListTask::presence;
  if (s == "binding") return ListTask::binding;
  fail(ErrorCode::parse_error, "unknown list task '" + std::string(s) + "'");
}

struct ListRoster {
  std::vector<std::string> names;
  std::vector<std::string> traits;
  std::string query_trait;  // presence only: the trait swapped onto entity #1 in the source
};

struct PromptPair {
  PromptSpec target;
  PromptSpec source;
  // Entities whose text differs between source and target, and which span
  // kind covers the difference.
  std::vector<std::size_t> swapped_entities;
  SpanKind swap_kind = SpanKind::sentence;
};

struct ListPools {
  std::vector<std::string> names;   // empty means kNamePool
  std::vector<std::string> traits;  // empty means the 20 base traits
};

inline constexpr std::string_view kPresenceProbedA = "careless";
inline constexpr std::string_view kPresenceProbedB = "brave";

namespace detail {

// Writes "Name is trait." for each entity separated by single spaces.
inline void write_roster_list(PromptWriter& w, const std::vector<RosterEntry>& roster) {
  for (std::size_t e = 0; e < roster.size(); ++e) {
    if (e) w.append(" ");
    const int ent = static_cast<int>(e);
    const std::size_t start = w.size();
    w.append_marked(roster[e].name, SpanKind::name, ent);
    w.append(" is ");
    w.append_marked(roster[e].trait, SpanKind::trait, ent);
    w.append(".");
    w.mark(start, w.size() - start, SpanKind::sentence, ent);
  }
}

inline std::vector<RosterEntry> roster_entries(const std::vector<std::string>& names,
                                               const std::vector<std::string>& traits) {
  std::vector<RosterEntry> r;
  for (std::size_t e = 0; e < names.size(); ++e) r.push_back(RosterEntry{names[e], traits[e], Role::user});
  return r;
}

inline PromptSpec list_prompt(ListTask task, const std::vector<RosterEntry>& roster, std::string_view query_trait,
                              std::string id, std::string condition) {
  PromptSpec p;
  p.id = std::move(id);
  p.condition = std::move(condition);
  p.roster = roster;
  p.think_prefix = true;
  for (const auto& r : roster) {
    p.single_token_words.push_back(r.name);
    p.single_token_words.push_back(r.trait);
  }
  PromptWriter w(p);
  w.turn(Role::user);
  switch (task) {
    case ListTask::sequence_retrieval:
      p.family = PromptFamily::sequence_retrieval;
      w.append("Look over this list of characters. ");
      write_roster_list(w, roster);
      w.append(" Who came after " + std::string(query_trait) + "?");
      w.prefill("The character that comes after " + std::string(query_trait) + " is");
      break;
    case ListTask::presence:
      p.family = PromptFamily::presence;
      w.append("I am writing a short story. What do you think about this list of characters: ");
      write_roster_list(w, roster);
      w.append(" What do you think? Can you suggest a possible plot involving these characters?");
      w.prefill(
          "The user is asking me to review their list of potential story characters and to suggest a possible plot. "
          "Hmm, I should think. Does the list contain any character that is careless? Yes. Does the list contain any "
          "character that is brave? Yes. Does their list include any character who is " +
          std::string(query_trait) + "?");
      break;
    case ListTask::binding:
      p.family = PromptFamily::binding;
      w.append("I'm writing a short story. What do you think about this list of potential characters: ");
      write_roster_list(w, roster);
      w.append("\n\nWhat do you think? Can you suggest a possible plot involving these characters?");
      w.prefill("The user is asking me to review their list of potential story characters. I should think about the " +
                std::string(query_trait) + " character. The " + std::string(query_trait) + " character is named");
      break;
  }
  return p;
}

inline void check_roster(const ListRoster& r) {
  auto bad = [](const std::string& what) { fail(ErrorCode::invalid_argument, what); };
  if (r.names.size() != kListEntities || r.traits.size() != kListEntities)
    bad("list roster needs exactly " + std::to_string(kListEntities) + " names and traits");
  if (std::set<std::string>(r.names.begin(), r.names.end()).size() != r.names.size()) bad("roster names must be distinct");
  if (std::set<std::string>(r.traits.begin(), r.traits.end()).size() != r.traits.size())
    bad("roster traits must be distinct");
}

}  // namespace detail

inline PromptPair make_list_prompt_pair(ListTask task, const ListRoster& roster, const std::string& id) {
  detail::check_roster(roster);
  PromptPair pair;
  const auto target_roster = detail::roster_entries(roster.names, roster.traits);
  auto source_roster = target_roster;
  std::string query;
  switch (task) {
    case ListTask::sequence_retrieval:
      std::swap(source_roster[1], source_roster[3]);
      query = roster.names[1];
      pair.swapped_entities = {1, 3};
      pair.swap_kind = SpanKind::sentence;
      break;
    case ListTask::presence: {
      query = roster.query_trait;
      if (query.empty()) fail(ErrorCode::invalid_argument, "presence roster needs a query trait");
      if (std::find(roster.traits.begin(), roster.traits.end(), query) != roster.traits.end())
        fail(ErrorCode::invalid_argument, "query trait must not already appear in the target list");
      if (query == kPresenceProbedA || query == kPresenceProbedB)
        fail(ErrorCode::invalid_argument, "query trait collides with a trait already asked in the prefill");
      source_roster[1].trait = query;
      pair.swapped_entities = {1};
      pair.swap_kind = SpanKind::trait;
      break;
    }
    case ListTask::binding:
      std::swap(source_roster[1].trait, source_roster[3].trait);
      query = roster.traits[1];
      pair.swapped_entities = {1, 3};
      pair.swap_kind = SpanKind::trait;
      break;
  }
  pair.target = detail::list_prompt(task, target_roster, query, id + "-target", "target");
  pair.source = detail::list_prompt(task, source_roster, query, id + "-source", "source");
  pair.target.pair_id = pair.source.pair_id = id;

  switch (task) {
    case ListTask::sequence_retrieval:
      pair.target.answer = AnswerKey{roster.names[2], {roster.names[2], roster.names[4]}, "", -1};
      pair.source.answer = AnswerKey{roster.names[4], {roster.names[2], roster.names[4]}, "", -1};
      break;
    case ListTask::presence:
      pair.target.answer = AnswerKey{"No", {"Yes", "No"}, "No", -1};
      pair.source.answer = AnswerKey{"Yes", {"Yes", "No"}, "Yes", -1};
      pair.target.attributes["query_trait"] = pair.source.attributes["query_trait"] = query;
      pair.source.single_token_words.push_back(query);
      pair.target.single_token_words.push_back(query);
      break;
    case ListTask::binding:
      pair.target.answer = AnswerKey{roster.names[1], {roster.names[1], roster.names[3]}, "", -1};
      pair.source.answer = AnswerKey{roster.names[3], {roster.names[1], roster.names[3]}, "", -1};
      pair.target.attributes["query_trait"] = pair.source.attributes["query_trait"] = query;
      break;
  }
  return pair;
}

inline PromptPair make_list_prompt_pair(ListTask task, std::uint64_t seed, const ListPools& pools = {},
                                        std::size_t index = 0) {
  std::vector<std::string> names = pools.names;
  if (names.empty()) names.assign(kNamePool.begin(), kNamePool.end());
  std::vector<std::string> traits = pools.traits;
  if (traits.empty()) traits = TraitVocabulary().base();
  names = detail::unique_in_order(names);
  traits = detail::unique_in_order(traits);
  if (names.size() < kListEntities) fail(ErrorCode::pool_exhausted, "name pool smaller than list length");

  Rng rng(derive_seed(seed, index));
  ListRoster r;
  for (const auto i : detail::sample_distinct(rng, names.size(), kListEntities)) r.names.push_back(names[i]);

  if (task == ListTask::presence) {
    std::vector<std::string> queryable;
    for (const auto& t : traits)
      if (t != kPresenceProbedA && t != kPresenceProbedB) queryable.push_back(t);
    if (queryable.empty() || traits.size() < kListEntities + 1)
      fail(ErrorCode::pool_exhausted, "trait pool too small for a presence query plus a distinct list");
    r.query_trait = queryable[rng.below(queryable.size())];
    std::vector<std::string> rest;
    for (const auto& t : traits)
      if (t != r.query_trait) rest.push_back(t);
    for (const auto i : detail::sample_distinct(rng, rest.size(), kListEntities)) r.traits.push_back(rest[i]);
  } else {
    if (traits.size() < kListEntities) fail(ErrorCode::pool_exhausted, "trait pool smaller than list length");
    for (const auto i : detail::sample_distinct(rng, traits.size(), kListEntities)) r.traits.push_back(traits[i]);
  }
  return make_list_prompt_pair(task, r, std::string(to_string(task)) + "-" + detail::padded(index, 4));
}

// ---------------------------------------------------------------------------
// Conflict prompts

inline bool has_adjacent_conflict(std::span<const std::string> traits, const TraitVocabulary& vocab) {
  for (std::size_t i = 0; i + 1 < traits.size(); ++i)
    if (vocab.are_opposites(traits[i], traits[i + 1])) return true;
  return false;
}

inline constexpr std::string_view kConflictInstruction =
    "Do any adjacent characters in this list have opposite traits?\n\n"
    "Examples of possible opposites (not exhaustive): optimistic↔pessimistic, confident↔insecure, "
    "stoic↔dramatic, cheerful↔gloomy. There are many other possible examples of opposite traits. "
    "Don't expect exact opposites, just rough ones. Just come up with ones where you believe the two entities would "
    "conflict.\n\nList: ";

struct ConflictOptions {
  std::size_t entities = kListEntities;
  std::vector<std::string> names;   // empty means kNamePool
  std::vector<std::string> traits;  // empty means all 40 traits
  std::size_t max_attempts = 1000;
};

// Builds the prompt for an explicit roster without enforcing the
// no-conflict constraint; the answer key reflects the roster.
inline PromptSpec make_conflict_prompt(const std::vector<std::string>& names, const std::vector<std::string>& traits,
                                       const std::string& id) {
  require(names.size() == traits.size() && names.size() >= 2, ErrorCode::invalid_argument,
          "conflict roster needs matching names and traits (at least two)");
  PromptSpec p;
  p.id = id;
  p.family = PromptFamily::conflict;
  p.condition = "target";
  p.think_prefix = true;
  p.roster = detail::roster_entries(names, traits);
  for (const auto& r : p.roster) {
    p.single_token_words.push_back(r.name);
    p.single_token_words.push_back(r.trait);
  }
  detail::PromptWriter w(p);
  w.turn(Role::user);
  w.append(kConflictInstruction);
  detail::write_roster_list(w, p.roster);
  w.append(" Do any traits conflict? Yes or no?");
  w.prefill("The answer is");
  const bool conflict = has_adjacent_conflict(traits, TraitVocabulary());
  p.answer = AnswerKey{conflict ? "yes" : "no", {"yes", "no"}, conflict ? "Yes" : "No", -1};
  return p;
}

inline PromptSpec make_conflict_prompt(std::uint64_t seed, const ConflictOptions& opts = {}, std::size_t index = 0) {
  const TraitVocabulary vocab;
  std::vector<std::string> names = opts.names;
  if (names.empty()) names.assign(kNamePool.begin(), kNamePool.end());
  std::vector<std::string> traits;
  for (const auto& t : opts.traits.empty() ? vocab.all() : opts.traits) {
    const bool example = std::find(kConflictExampleTraits.begin(), kConflictExampleTraits.end(), t) !=
                         kConflictExampleTraits.end();
    if (!example && std::find(traits.begin(), traits.end(), t) == traits.end()) traits.push_back(t);
  }
  if (names.size() < opts.entities || traits.size() < opts.entities)
    fail(ErrorCode::pool_exhausted, "name or trait pool smaller than list length");

  Rng rng(derive_seed(seed, index));
  for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    std::vector<std::string> picked;
    for (const auto i : detail::sample_distinct(rng, traits.size(), opts.entities)) picked.push_back(traits[i]);
    if (has_adjacent_conflict(picked, vocab)) continue;
    std::vector<std::string> chosen_names;
    for (const auto i : detail::sample_distinct(rng, names.size(), opts.entities)) chosen_names.push_back(names[i]);
    return make_conflict_prompt(chosen_names, picked, "conflict-" + detail::padded(index, 4));
  }
  fail(ErrorCode::retry_exhausted,
       "no conflict-free roster after " + std::to_string(opts.max_attempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Dual-binding prompts

enum class DualCondition { main, separated, flipped };

inline std::string_view to_string(DualCondition c) {
  switch (c) {
    case DualCondition::main: return "main";
    case DualCondition::separated: return "separated";
    case DualCondition::flipped: return "flipped";
  }
  return "?";
}

inline DualCondition parse_dual_condition(std::string_view s) {
  if (s == "main") return DualCondition::main;
  if (s == "separated") return DualCondition::separated;
  if (s == "flipped") return DualCondition::flipped;
  fail(ErrorCode::parse_error, "unknown dual-binding condition '" + std::string(s) + "'");
}

struct DualLexicon {
  std::vector<std::string> subjects;
  std::vector<DualVerbFrame> frames;

  static DualLexicon bundled() {
    DualLexicon lex;
    lex.subjects.assign(kNamePool.begin(), kNamePool.end());
    lex.frames = dual_binding_frames();
    return lex;
  }
};

// Subject s0 does verb0 to object0 and verb1 to object1; subject s1 does
// verb0 to object1 and verb1 to object0.
struct DualBase {
  std::size_t subject0 = 0, subject1 = 0;
  std::size_t frame = 0;
  std::size_t object0 = 0, object1 = 0;
  auto key() const { return std::tuple(subject0, subject1, frame, object0, object1); }
  bool operator==(const DualBase&) const = default;
};

inline constexpr std::size_t kDualQuestions = 4;

// (subject index within the base, verb index) for each question.
inline constexpr std::array<std::pair<int, int>, kDualQuestions> kDualQuestionRoles{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

inline std::size_t dual_answer_object(const DualBase& b, std::size_t question) {
  const auto [s, v] = kDualQuestionRoles.at(question);
  return (s == v) ? b.object0 : b.object1;
}

inline DualBase canonical_dual_base(const DualLexicon& lex) {
  require(lex.subjects.size() >= 2 && !lex.frames.empty() && lex.frames[0].objects.size() >= 2,
          ErrorCode::lexicon_too_small, "dual-binding lexicon needs two subjects and a frame with two objects");
  auto find = [&](std::string_view n, std::size_t fallback) {
    for (std::size_t i = 0; i < lex.subjects.size(); ++i)
      if (lex.subjects[i] == n) return i;
    return fallback;
  };
  std::size_t a = find("Alice", 0), b = find("Bob", 1);
  if (a == b) b = a == 0 ? 1 : 0;
  return DualBase{a, b, 0, 0, 1};
}

inline std::vector<DualBase> make_dual_bases(std::size_t n, std::uint64_t seed, const DualLexicon& lex) {
  if (n == 0) return {};
  const DualBase canon = canonical_dual_base(lex);
  std::vector<DualBase> all;
  const std::size_t s = lex.subjects.size();
  for (std::size_t f = 0; f < lex.frames.size(); ++f) {
    const std::size_t o = lex.frames[f].objects.size();
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        for (std::size_t x = 0; x < o; ++x)
          for (std::size_t y = 0; y < o; ++y)
            if (a != b && x != y && lex.subjects[a] != lex.subjects[b]) {
              DualBase base{a, b, f, x, y};
              if (!(base == canon)) all.push_back(base);
            }
  }
  if (all.size() + 1 < n)
    fail(ErrorCode::lexicon_too_small, "lexicon supports only " + std::to_string(all.size() + 1) + " distinct bases");
  Rng rng(derive_seed(seed, 0xD0A1));
  rng.shuffle(std::span<DualBase>(all));
  std::vector<DualBase> out{canon};
  out.insert(out.end(), all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n - 1));
  return out;
}

inline PromptSpec make_dual_binding_prompt(const DualBase& b, DualCondition cond, std::size_t question,
                                           const DualLexicon& lex, const std::string& id) {
  require(question < kDualQuestions, ErrorCode::invalid_argument, "question index must be 0..3");
  const DualVerbFrame& fr = lex.frames.at(b.frame);
  const std::string& s0 = lex.subjects.at(b.subject0);
  const std::string& s1 = lex.subjects.at(b.subject1);
  const DualObject& o0 = fr.objects.at(b.object0);
  const DualObject& o1 = fr.objects.at(b.object1);

  PromptSpec p;
  p.id = id;
  p.family = PromptFamily::dual_binding;
  p.condition = std::string(to_string(cond));
  p.roster = {RosterEntry{s0, "", Role::user}, RosterEntry{s1, "", Role::user}};
  p.single_token_words = {s0, s1, std::string(o0.word), std::string(o1.word)};

  detail::PromptWriter w(p);
  w.turn(Role::user);
  auto subj = [&](int i) { w.append_marked(i == 0 ? s0 : s1, SpanKind::name, i); };
  auto obj = [&](int i, bool cap) {
    const std::string word(i == 0 ? o0.word : o1.word);
    w.append_marked(cap ? detail::capitalize(word) : word, SpanKind::object, i);
  };
  auto sentence = [&](auto&& body) {
    const std::size_t start = w.size() == 0 ? 0 : (w.append(" "), w.size());
    body();
    w.append(".");
    w.mark(start, w.size() - start, SpanKind::sentence, -1);
  };
  auto text = [&](std::string_view t) { w.append(t); };
  const std::string v0(fr.verb0), v1(fr.verb1), p0(fr.participle0), p1(fr.participle1);

  switch (cond) {
    case DualCondition::main:
      sentence([&] { subj(0); text(" " + v0 + " and "); subj(1); text(" " + v1 + " "); obj(0, false); });
      sentence([&] { subj(1); text(" " + v0 + " and "); subj(0); text(" " + v1 + " "); obj(1, false); });
      break;
    case DualCondition::separated:
      sentence([&] { subj(0); text(" " + v0 + " "); obj(0, false); });
      sentence([&] { subj(1); text(" " + v1 + " "); obj(0, false); });
      sentence([&] { subj(1); text(" " + v0 + " "); obj(1, false); });
      sentence([&] { subj(0); text(" " + v1 + " "); obj(1, false); });
      break;
    case DualCondition::flipped:
      sentence([&] {
        obj(0, true);
        text(std::string(o0.plural ? " are " : " is ") + p0 + " by ");
        subj(0);
        text(" and " + p1 + " by ");
        subj(1);
      });
      sentence([&] {
        obj(1, true);
        text(std::string(o1.plural ? " are " : " is ") + p0 + " by ");
        subj(1);
        text(" and " + p1 + " by ");
        subj(0);
      });
      break;
  }
  const auto [qs, qv] = kDualQuestionRoles[question];
  w.prefill((qs == 0 ? s0 : s1) + " is the one who " + (qv == 0 ? v0 : v1));

  const std::size_t ans = dual_answer_object(b, question);
  p.answer = AnswerKey{std::string(fr.objects[ans].word), {std::string(o0.word), std::string(o1.word)}, "",
                       static_cast<int>(question)};
  p.attributes["subject0"] = s0;
  p.attributes["subject1"] = s1;
  p.attributes["verb0"] = v0;
  p.attributes["verb1"] = v1;
  p.attributes["object0"] = std::string(o0.word);
  p.attributes["object1"] = std::string(o1.word);
  return p;
}

inline PromptSet make_dual_binding_prompts(std::size_t n_bases, DualCondition cond, std::uint64_t seed,
                                           const DualLexicon& lex = DualLexicon::bundled()) {
  PromptSet set;
  const auto bases = make_dual_bases(n_bases, seed, lex);
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const std::string base_id = "dual-" + std::string(to_string(cond)) + "-b" + detail::padded(i, 3);
    for (std::size_t q = 0; q < kDualQuestions; ++q) {
      auto p = make_dual_binding_prompt(bases[i], cond, q, lex, base_id + "-q" + std::to_string(q));
      p.pair_id = base_id;
      set.prompts.push_back(std::move(p));
    }
  }
  return set;
}

// ---------------------------------------------------------------------------
// PromptSet file

inline KvDocument promptset_to_document(const PromptSet& set) {
  KvDocument doc;
  doc.set("format", "slotprobe-promptset");
  doc.set("version", 1);
  doc.set_list("trait_vocab", set.trait_vocab);
  doc.set("prompts", set.prompts.size());
  for (std::size_t i = 0; i < set.prompts.size(); ++i) {
    const auto& p = set.prompts[i];
    const std::string k = "prompt." + std::to_string(i) + ".";
    doc.set(k + "id", p.id);
    doc.set(k + "family", to_string(p.family));
    doc.set(k + "condition", p.condition);
    doc.set(k + "pair", p.pair_id);
    doc.set(k + "prefill", p.prefill);
    doc.set(k + "think", p.think_prefix);
    doc.set(k + "turns", p.turns.size());
    for (std::size_t t = 0; t < p.turns.size(); ++t) {
      doc.set(k + "turn." + std::to_string(t) + ".role", to_string(p.turns[t].role));
      doc.set(k + "turn." + std::to_string(t) + ".text", p.turns[t].text);
    }
    doc.set(k + "spans", p.spans.size());
    for (std::size_t s = 0; s < p.spans.size(); ++s) {
      const auto& sp = p.spans[s];
      doc.set(k + "span." + std::to_string(s),
              std::to_string(sp.turn) + "," + std::to_string(sp.begin) + "," + std::to_string(sp.length) + "," +
                  std::string(to_string(sp.kind)) + "," + std::to_string(sp.entity));
    }
    doc.set(k + "roster", p.roster.size());
    for (std::size_t e = 0; e < p.roster.size(); ++e) {
      const std::string r = k + "roster." + std::to_string(e) + ".";
      doc.set(r + "name", p.roster[e].name);
      doc.set(r + "trait", p.roster[e].trait);
      doc.set(r + "role", to_string(p.roster[e].role));
    }
    doc.set(k + "answer.expected", p.answer.expected);
    doc.set_list(k + "answer.candidates", p.answer.candidates);
    doc.set(k + "answer.polarity", p.answer.polarity);
    doc.set(k + "answer.question", p.answer.question);
    doc.set_list(k + "single_token", p.single_token_words);
    for (const auto& [a, v] : p.attributes) doc.set(k + "attr." + a, v);
  }
  return doc;
}

namespace detail {

inline TextSpan parse_span(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t c = s.find(',', pos);
    parts.push_back(s.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos));
    if (c == std::string_view::npos) break;
    pos = c + 1;
  }
  if (parts.size() != 5) fail(ErrorCode::parse_error, "span needs 5 fields: " + std::string(s));
  auto num = [&](std::string_view f) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || ptr != f.data() + f.size()) fail(ErrorCode::parse_error, "bad span field in " + std::string(s));
    return v;
  };
  TextSpan out;
  const auto turn = num(parts[0]), begin = num(parts[1]), length = num(parts[2]);
  if (turn < 0 || begin < 0 || length < 0) fail(ErrorCode::parse_error, "negative span field in " + std::string(s));
  out.turn = static_cast<std::size_t>(turn);
  out.begin = static_cast<std::size_t>(begin);
  out.length = static_cast<std::size_t>(length);
  out.kind = parse_span_kind(parts[3]);
  out.entity = static_cast<int>(num(parts[4]));
  return out;
}

}  // namespace detail

inline PromptSet promptset_from_document(const KvDocument& doc) {
  if (doc.get("format") != "slotprobe-promptset") fail(ErrorCode::parse_error, "not a promptset document");
  if (doc.get_int("version") != 1) fail(ErrorCode::version_unsupported, "unsupported promptset version");
  PromptSet set;
  set.trait_vocab = doc.get_list("trait_vocab");
  const std::size_t n = doc.get_count("prompts");
  set.prompts.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = set.prompts[i];
    const std::string k = "prompt." + std::to_string(i) + ".";
    p.id = doc.get(k + "id");
    p.family = parse_family(doc.get(k + "family"));
    p.condition = doc.get(k + "condition");
    p.pair_id = doc.get(k + "pair");
    p.prefill = doc.get_bool(k + "prefill");
    p.think_prefix = doc.get_bool(k + "think");
    p.turns.resize(doc.get_count(k + "turns"));
    for (std::size_t t = 0; t < p.turns.size(); ++t) {
      p.turns[t].role = parse_role(doc.get(k + "turn." + std::to_string(t) + ".role"));
      p.turns[t].text = doc.get(k + "turn." + std::to_string(t) + ".text");
    }
    const std::size_t ns = doc.get_count(k + "spans");
    for (std::size_t s = 0; s < ns; ++s) p.spans.push_back(detail::parse_span(doc.get(k + "span." + std::to_string(s))));
    p.roster.resize(doc.get_count(k + "roster"));
    for (std::size_t e = 0; e < p.roster.size(); ++e) {
      const std::string r = k + "roster." + std::to_string(e) + ".";
      p.roster[e] = RosterEntry{doc.get(r + "name"), doc.get(r + "trait"), parse_role(doc.get(r + "role"))};
    }
    p.answer.expected = doc.get(k + "answer.expected");
    p.answer.candidates = doc.get_list(k + "answer.candidates");
    p.answer.polarity = doc.get(k + "answer.polarity");
    p.answer.question = static_cast<int>(doc.get_int(k + "answer.question"));
    p.single_token_words = doc.get_list(k + "single_token");
    const std::string attr = k + "attr.";
    for (const auto& [key, v] : doc.entries())
      if (key.starts_with(attr)) p.attributes[key.substr(attr.size())] = v;
    validate(p);
  }
  return set;
}

inline void write_promptset(const PromptSet& set, const std::string& path) { promptset_to_document(set).write_file(path); }
inline PromptSet read_promptset(const std::string& path) { return promptset_from_document(KvDocument::read_file(path)); }

inline const PromptSpec& find_prompt(const PromptSet& set, std::string_view id) {
  for (const auto& p : set.prompts)
    if (p.id == id) return p;
  fail(ErrorCode::invalid_argument, "no prompt with id '" + std::string(id) + "'");
}

// Plain transcript for display.
inline std::string render_transcript(const PromptSpec& p) {
  std::string out;
  for (std::size_t t = 0; t < p.turns.size(); ++t) {
    if (t) out += "\n\n";
    out += p.turns[t].role == Role::user ? "User: " : "Assistant: ";
    if (p.prefill && p.think_prefix && t + 1 == p.turns.size()) out += "<think> ";
    out += p.turns[t].text;
  }
  return out;
}

}  // namespace slotprobe
