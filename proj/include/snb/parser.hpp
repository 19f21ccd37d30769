#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snb/lingware.hpp"

namespace snb {

struct Token {
  enum class Kind { kWord, kPunct };
  std::string text;      // lowercased
  std::string original;  // as written
  std::size_t position = 0;
  Kind kind = Kind::kWord;
};

/// Whitespace split, leading/trailing punctuation split off one character
/// per token, ASCII lowercasing.
std::vector<Token> tokenize(std::string_view line);

/// One lexical alternative for one word position.
struct Reading {
  FeatureStructure sign;
  std::size_t entry = kNoEntry;  // lexicon index; kNoEntry for passthrough
  bool passthrough = false;
  bool proper_name = false;
  bool silent = false;
  std::string form;  // surface form as written

  static constexpr std::size_t kNoEntry = static_cast<std::size_t>(-1);
};

/// Readings per word position.
using Lattice = std::vector<std::vector<Reading>>;

/// The semantic index minted for word position `word` ("i1", "i2", ...).
Symbol word_index(std::size_t word);

/// All homonyms of `form`, each carrying the index of position `word`. A form
/// missing from the lexicon gives one passthrough reading.
std::vector<Reading> lookup(const std::string& form, const std::string& original,
                            std::size_t word, const Lexicon& lexicon);

struct ParseOptions {
  int max_unary_depth = 3;
  std::size_t max_edges = 200000;
};

/// Chart edge. `fs` is `(m <sign>) (lex <first/rest list of lexical signs>)`
/// so that bindings made by rules reach the lexical signs.
struct Edge {
  std::size_t start = 0;
  std::size_t end = 0;
  FeatureStructure fs;
  Symbol cat;
  std::string rule;  // "lexical" for lexical edges
  std::vector<std::size_t> children;
  std::vector<std::size_t> readings;  // reading chosen at each covered position
  int unary_depth = 0;
  std::size_t size = 1;  // edges in the derivation
  std::string trace;     // rule names in preorder

  FeatureStructure sign() const;
  std::vector<FeatureStructure> lexical_signs() const;
};

/// Derivation order used for every "best analysis" choice: fewer edges,
/// then rule-name trace, then homonym readings.
bool better_edge(const Edge& a, const Edge& b);

struct ParseResult {
  std::vector<Token> tokens;
  Lattice lattice;
  std::vector<bool> barrier;  // barrier[w]: no edge spans words w-1 and w
  std::vector<Edge> edges;
  std::vector<std::size_t> spanning;   // root edges over all words, best first
  std::vector<std::size_t> fragments;  // chosen cover, left to right
  std::string final_punct;
  bool interrogative = false;
  bool truncated = false;  // max_edges reached

  std::size_t words() const { return lattice.size(); }
  std::optional<std::size_t> chosen() const {
    if (spanning.empty()) return std::nullopt;
    return spanning.front();
  }
};

/// Parses a tokenized line. Punctuation inside the line becomes a barrier
/// that no edge crosses; the final mark is recorded.
ParseResult parse(const std::vector<Token>& tokens, const Grammar& grammar, const Lexicon& lexicon,
                  const ParseOptions& options = {});

/// Parses a prepared lattice (used for target-side re-parsing).
ParseResult parse_lattice(Lattice lattice, std::vector<bool> barrier, const Grammar& grammar,
                          const ParseOptions& options = {});

/// Applies `rule` to daughter edges. Returns nullopt when unification or a
/// goal fails.
std::optional<FeatureStructure> apply_rule(const GrammarRule& rule,
                                           const std::vector<const FeatureStructure*>& daughters);

/// `EDGE <start>-<end> <rule> <mother>` for every edge.
std::vector<std::string> edge_trace(const ParseResult& result);

// ---------------------------------------------------------------------------

struct BagSign {
  FeatureStructure sign;
  std::string form;
  bool passthrough = false;
  bool proper_name = false;
  std::size_t fragment = 0;
  std::size_t word = 0;
};

struct SourceBag {
  std::vector<BagSign> signs;
  std::size_t fragments = 0;
  std::string final_punct;
  bool interrogative = false;
};

/// Lexical signs as instantiated by the chosen analysis or fragment cover.
SourceBag extract_bag(const ParseResult& result);

}  // namespace snb
