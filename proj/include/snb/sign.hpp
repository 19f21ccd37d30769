#pragma once

#include <optional>
#include <string>

#include "snb/feature_structure.hpp"

namespace snb::feat {

inline Symbol cat() { static const Symbol s("cat"); return s; }
inline Symbol lemma() { static const Symbol s("lemma"); return s; }
inline Symbol index() { static const Symbol s("index"); return s; }
inline Symbol pass() { static const Symbol s("pass"); return s; }
inline Symbol m() { static const Symbol s("m"); return s; }
inline Symbol lex() { static const Symbol s("lex"); return s; }

}  // namespace snb::feat

namespace snb {

/// Atom at a single top-level feature, if any.
std::optional<Symbol> top_atom(const FeatureStructure& fs, Symbol feature);
std::string lemma_of(const FeatureStructure& sign);
Symbol cat_of(const FeatureStructure& sign);

/// `(cat unk) (lemma <form>) (pass yes)`: the sign of a word nobody knows.
FeatureStructure passthrough_sign(const std::string& lemma);

/// "bill" -> "Bill" (first byte only; ASCII).
std::string capitalize(std::string s);

}  // namespace snb
