#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snb/lingware.hpp"
#include "snb/transfer.hpp"

namespace snb {

struct Candidate {
  FeatureStructure sign;
  std::vector<std::string> words;  // empty for silent entries
  std::size_t entry = static_cast<std::size_t>(-1);
};

struct GenerationGap {
  std::size_t position = 0;
  std::string lemma;
};

struct TargetCandidates {
  std::vector<std::vector<Candidate>> positions;
  std::optional<GenerationGap> gap;  // first position without candidates
};

/// Target lexicon entries whose lemma matches and whose sign unifies with the
/// transferred one. Passthrough signs give their bracketed display form.
TargetCandidates instantiate_targets(const std::vector<TargetSign>& signs, const Lexicon& lexicon);

struct GenLimits {
  std::size_t max_bag = 12;
  std::size_t max_edges = 50000;
  std::chrono::milliseconds timeout{5000};
  int max_unary_depth = 3;
};

enum class GenError { kNone, kBagTooLarge, kTimeout, kEdgeCap, kFailure };
const char* gen_error_name(GenError e);

struct Realization {
  std::vector<std::string> words;
  std::string text;
  Symbol root_cat;
  std::vector<std::size_t> order;   // bag positions in surface order
  std::vector<std::size_t> choice;  // candidate per bag position
  FeatureStructure fs;              // (m ...) (lex ...) as in parser edges
};

struct GenResult {
  GenError error = GenError::kNone;
  std::vector<Realization> realizations;  // ranked, distinct texts
  std::vector<std::string> trace;         // GEN lines
  std::size_t edges = 0;

  bool ok() const { return error == GenError::kNone; }
};

GenResult generate(const std::vector<std::vector<Candidate>>& candidates, const Grammar& grammar,
                   const GenLimits& limits = {});

/// Fewest words, then lexicographic text; duplicates by text dropped.
std::vector<Realization> rank_realizations(std::vector<Realization> rs);

}  // namespace snb
