#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "snb/feature_structure.hpp"
#include "snb/sexpr.hpp"

namespace snb {

// ---------------------------------------------------------------------------
// Monolingual lexicon: full-form entries, no morphology.

struct LexicalEntry {
  std::string form;   // exact inflected surface form
  std::string lemma;  // base form; also present in the sign at `lemma`
  bool proper_name = false;
  bool punctuation = false;
  bool silent = false;  // realized as zero words (null subjects)
  FeatureStructure sign;
  int line = 0;

  friend bool operator==(const LexicalEntry&, const LexicalEntry&);
};

class Lexicon {
 public:
  void add(LexicalEntry entry);
  const std::vector<LexicalEntry>& entries() const { return entries_; }
  /// Entry indices in file order.
  const std::vector<std::size_t>& by_form(const std::string& form) const;
  const std::vector<std::size_t>& by_lemma(const std::string& lemma) const;
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const Lexicon& a, const Lexicon& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<LexicalEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> forms_;
  std::unordered_map<std::string, std::vector<std::size_t>> lemmas_;
};

// ---------------------------------------------------------------------------
// Grammar rules with goals.

enum class GoalKind { kAgree, kRequire, kProhibit };

const char* goal_name(GoalKind kind);
std::optional<GoalKind> goal_from_name(std::string_view name);

struct GoalArg {
  int daughter = -1;  // -1 for a constant
  Path path;
  Symbol constant;

  bool is_path() const { return daughter >= 0; }
  std::string str() const;
  friend bool operator==(const GoalArg&, const GoalArg&) = default;
};

struct GoalCall {
  GoalKind kind = GoalKind::kAgree;
  std::vector<GoalArg> args;

  std::string str() const;
  friend bool operator==(const GoalCall&, const GoalCall&) = default;
};

inline constexpr int kMaxDaughters = 4;

/// One rule. The mother and daughters live in a single structure `tuple`
/// with features `m`, `d0` ... `d3`, so variables shared between them are
/// real coreferences.
struct GrammarRule {
  std::string name;
  FeatureStructure tuple;
  int arity = 0;
  std::vector<GoalCall> goals;
  Symbol mother_cat;                  // from the mother's `cat`
  std::vector<Symbol> daughter_cats;  // per daughter; empty symbol if not atomic
  int line = 0;

  static Symbol mother_feature();
  static Symbol daughter_feature(int i);

  friend bool operator==(const GrammarRule& a, const GrammarRule& b);
};

enum class Direction { kSource, kTarget };

struct Grammar {
  std::vector<GrammarRule> rules;
  std::vector<Symbol> roots;
  Direction direction = Direction::kSource;

  bool is_root(Symbol cat) const;
  friend bool operator==(const Grammar&, const Grammar&) = default;
};

// ---------------------------------------------------------------------------
// Bilingual lexicon.

/// Transfer rule. `tuple` holds source patterns at `s0..`, target templates at
/// `t0..`; variables shared across them carry information to the target.
struct BilingualEntry {
  std::string name;
  std::string key;
  std::size_t key_pattern = 0;
  std::size_t n_source = 0;
  std::size_t n_target = 0;
  FeatureStructure tuple;
  std::vector<std::string> macros;
  int line = 0;

  friend bool operator==(const BilingualEntry& a, const BilingualEntry& b);
};

/// Conditional sub-rule. `tuple` holds the trigger at `trigger`, extra source
/// patterns at `s0..` and extra target templates at `t0..`.
struct TransferMacro {
  std::string name;
  std::size_t n_source = 0;
  std::size_t n_target = 0;
  FeatureStructure tuple;
  int line = 0;

  friend bool operator==(const TransferMacro& a, const TransferMacro& b);
};

Symbol source_feature(std::size_t i);
Symbol target_feature(std::size_t i);
Symbol trigger_feature();

class BilingualLexicon {
 public:
  std::vector<BilingualEntry> entries;
  std::vector<TransferMacro> macros;

  const TransferMacro* find_macro(std::string_view name) const;
  friend bool operator==(const BilingualLexicon&, const BilingualLexicon&) = default;
};

// ---------------------------------------------------------------------------

struct Policy {
  bool inverted_question = true;
  std::string inverted_question_mark = "\xc5\xbc";  // "ż"
  friend bool operator==(const Policy&, const Policy&) = default;
};

struct Lingware {
  Lexicon source_lexicon;
  Grammar source_grammar;
  BilingualLexicon bilingual;
  Lexicon target_lexicon;
  Grammar target_grammar;
  Policy policy;
};

template <class T>
struct Loaded {
  T value;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

Loaded<Lexicon> load_lexicon(std::string_view text, std::string_view file = {});
Loaded<Grammar> load_grammar(std::string_view text, std::string_view file = {});
Loaded<BilingualLexicon> load_bilingual(std::string_view text, std::string_view file = {});
Loaded<Policy> load_policy(std::string_view text, std::string_view file = {});

/// Loads the six files of a lingware directory and cross-checks them.
Loaded<Lingware> load_lingware(const std::filesystem::path& dir);

std::string serialize(const LexicalEntry& entry);
std::string serialize(const Lexicon& lexicon);
std::string serialize(const GrammarRule& rule);
std::string serialize(const Grammar& grammar);
std::string serialize(const BilingualEntry& entry);
std::string serialize(const TransferMacro& macro);
std::string serialize(const BilingualLexicon& bilingual);
std::string serialize(const Policy& policy);

std::string read_file(const std::filesystem::path& path);

}  // namespace snb
