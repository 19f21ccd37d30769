#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "snb/unify.hpp"

namespace snb {

struct Diagnostic {
  std::string file;
  int line = 0;
  std::string message;

  std::string str() const;
};

struct SexprToken {
  enum class Kind { kLParen, kRParen, kKeyword, kVariable, kString, kSymbol, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;  // keyword without ':', variable without '?', string unescaped
  int line = 0;
};

/// Splits lingware text into tokens. `;` starts a comment to end of line.
/// Lexical errors (unterminated string) are appended to `diagnostics`.
std::vector<SexprToken> lex_sexpr(std::string_view text, std::vector<Diagnostic>& diagnostics);

/// Thrown inside the readers to abandon one top-level form.
struct ReadError : std::runtime_error {
  ReadError(int l, const std::string& what) : std::runtime_error(what), line(l) {}
  int line;
};

/// Cursor over a token vector with helpers for feature-structure notation.
class SexprCursor {
 public:
  explicit SexprCursor(const std::vector<SexprToken>& tokens, std::size_t pos = 0)
      : tokens_(tokens), pos_(pos) {}

  const SexprToken& peek(std::size_t ahead = 0) const;
  const SexprToken& next();
  bool at(SexprToken::Kind kind, std::size_t ahead = 0) const { return peek(ahead).kind == kind; }
  const SexprToken& expect(SexprToken::Kind kind, const char* what);
  std::size_t pos() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }

  /// Index one past the `)` closing the `(` at `open`.
  std::size_t matching_close(std::size_t open) const;

 private:
  const std::vector<SexprToken>& tokens_;
  std::size_t pos_;
};

/// Reads feature-structure notation into a UnifyGraph. Variables are scoped
/// by the `vars` map the caller owns (one per entry or rule).
class FsReader {
 public:
  using Vars = std::map<std::string, UnifyGraph::Id>;

  FsReader(SexprCursor& cursor, UnifyGraph& graph, Vars& vars)
      : cur_(cursor), g_(graph), vars_(vars) {}

  /// `[?tag] (f v) (g w) ...` up to `)`, a keyword, or the end. Returns the
  /// complex node the groups were read into.
  UnifyGraph::Id groups();
  /// `( groups )`: one parenthesized sign description.
  UnifyGraph::Id bracketed();
  /// Zero or more bracketed descriptions, until a keyword or `)`.
  std::vector<UnifyGraph::Id> bracketed_list();
  /// One value: `[?tag]` followed by an atom, a string, `()` or groups.
  UnifyGraph::Id value();

 private:
  UnifyGraph::Id variable(const SexprToken& tok);
  void merge(UnifyGraph::Id into, UnifyGraph::Id other, int line);

  SexprCursor& cur_;
  UnifyGraph& g_;
  Vars& vars_;
};

/// Parses a whole string of feature-structure notation. Throws
/// std::invalid_argument on malformed input or on a clash.
FeatureStructure parse_fs(std::string_view text);

}  // namespace snb
