#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "snb/lingware.hpp"
#include "snb/parser.hpp"

namespace snb {

/// One way of matching an entry's source side against a bag.
struct Match {
  std::size_t entry = 0;
  std::vector<std::size_t> signs;  // bag sign per source pattern
  FeatureStructure bound;          // entry tuple after unification
};

/// All injective, not necessarily adjacent, assignments of the entry's source
/// patterns to bag signs, ordered by assignment.
std::vector<Match> match_entry(const BilingualEntry& entry, std::size_t entry_index,
                               const SourceBag& bag);

/// Entry after its macros ran against one match.
struct EffectiveEntry {
  std::size_t entry = 0;
  std::string name;
  FeatureStructure tuple;  // s0.. t0.. as in BilingualEntry
  std::size_t n_source = 0;
  std::size_t n_target = 0;
  std::size_t key_pattern = 0;
  std::vector<std::string> applied;  // macros whose trigger held
  std::vector<std::size_t> signs;    // bag sign per source pattern, extras included

  FeatureStructure source(std::size_t i) const;
  FeatureStructure target(std::size_t i) const;
};

/// Runs every macro referenced by the entry. A macro applies when its trigger
/// unifies with the key sign and its source extras find unused bag signs.
EffectiveEntry expand_macros(const BilingualEntry& entry, const Match& match,
                             const BilingualLexicon& bilingual, const SourceBag& bag);

/// Every effective match of every entry, in entry order.
std::vector<EffectiveEntry> candidate_matches(const SourceBag& bag,
                                              const BilingualLexicon& bilingual);

struct Covering {
  std::vector<EffectiveEntry> matches;   // ordered by first consumed sign
  std::vector<std::size_t> passthrough;  // bag signs, ascending

  std::size_t consumed() const;
};

/// Ranking: fewer passthrough signs, then bigger matches, then entry file
/// order, then sign assignment.
bool better_covering(const Covering& a, const Covering& b);

struct CoverOptions {
  std::size_t max_enumerated = 100000;
};

/// Up to `k` exact covers of the bag, best first.
std::vector<Covering> cover(const SourceBag& bag, const BilingualLexicon& bilingual, std::size_t k,
                            const CoverOptions& options = {});

struct TargetSign {
  FeatureStructure sign;
  bool passthrough = false;
  std::string display;  // "[form]" for passthrough signs
  std::size_t fragment = 0;
};

struct TargetBag {
  std::vector<TargetSign> signs;
  std::size_t fragments = 0;
  std::string final_punct;
  bool interrogative = false;
  std::vector<std::string> trace;  // XFER lines
};

/// Instantiates the target templates of one covering. Target indices left
/// unbound by the entry are minted as t1, t2, ...
TargetBag instantiate(const Covering& covering, const SourceBag& bag);

/// Ranked coverings turned into target bags.
std::vector<TargetBag> transfer(const SourceBag& bag, const BilingualLexicon& bilingual,
                                std::size_t k);

}  // namespace snb
