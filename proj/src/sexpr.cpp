#include "snb/sexpr.hpp"

#include <set>

namespace snb {

std::string Diagnostic::str() const {
  std::string out = file.empty() ? std::string("<input>") : file;
  if (line > 0) out += ':' + std::to_string(line);
  out += ": ";
  out += message;
  return out;
}

namespace {

bool is_delimiter(char c) {
  return c == '(' || c == ')' || c == '"' || c == ';' || c == ' ' || c == '\t' || c == '\n' ||
         c == '\r';
}

}  // namespace

std::vector<SexprToken> lex_sexpr(std::string_view text, std::vector<Diagnostic>& diagnostics) {
  std::vector<SexprToken> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(') {
      out.push_back({SexprToken::Kind::kLParen, "(", line});
      ++i;
    } else if (c == ')') {
      out.push_back({SexprToken::Kind::kRParen, ")", line});
      ++i;
    } else if (c == '"') {
      int start_line = line;
      std::string s;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        char d = text[i++];
        if (d == '"') {
          closed = true;
          break;
        }
        if (d == '\\' && i < text.size()) d = text[i++];
        if (d == '\n') ++line;
        s += d;
      }
      if (!closed) diagnostics.push_back({"", start_line, "unterminated string"});
      out.push_back({SexprToken::Kind::kString, std::move(s), start_line});
    } else {
      std::size_t start = i;
      while (i < text.size() && !is_delimiter(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      if (word.size() > 1 && word[0] == ':') {
        out.push_back({SexprToken::Kind::kKeyword, word.substr(1), line});
      } else if (word.size() > 1 && word[0] == '?') {
        out.push_back({SexprToken::Kind::kVariable, word.substr(1), line});
      } else {
        out.push_back({SexprToken::Kind::kSymbol, std::move(word), line});
      }
    }
  }
  out.push_back({SexprToken::Kind::kEnd, "", line});
  return out;
}

// ---------------------------------------------------------------------------

const SexprToken& SexprCursor::peek(std::size_t ahead) const {
  std::size_t p = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[p];
}

const SexprToken& SexprCursor::next() {
  const SexprToken& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

const SexprToken& SexprCursor::expect(SexprToken::Kind kind, const char* what) {
  if (!at(kind)) {
    const SexprToken& t = peek();
    throw ReadError(t.line, std::string("expected ") + what + ", found " +
                                (t.kind == SexprToken::Kind::kEnd ? "end of file" : "'" + t.text + "'"));
  }
  return next();
}

std::size_t SexprCursor::matching_close(std::size_t open) const {
  int depth = 0;
  for (std::size_t p = open; p < tokens_.size(); ++p) {
    if (tokens_[p].kind == SexprToken::Kind::kLParen) ++depth;
    if (tokens_[p].kind == SexprToken::Kind::kRParen && --depth == 0) return p + 1;
    if (tokens_[p].kind == SexprToken::Kind::kEnd) return p;
  }
  return tokens_.size() - 1;
}

// ---------------------------------------------------------------------------

UnifyGraph::Id FsReader::variable(const SexprToken& tok) {
  auto [it, inserted] = vars_.emplace(tok.text, 0);
  if (inserted) it->second = g_.new_variable();
  return it->second;
}

void FsReader::merge(UnifyGraph::Id into, UnifyGraph::Id other, int line) {
  if (!g_.unify(into, other)) throw ReadError(line, "conflicting values: " + g_.failure().message());
}

UnifyGraph::Id FsReader::groups() {
  UnifyGraph::Id node = g_.new_complex();
  if (cur_.at(SexprToken::Kind::kVariable)) {
    const SexprToken& tag = cur_.next();
    merge(variable(tag), node, tag.line);
  }
  std::set<std::string> seen;
  while (cur_.at(SexprToken::Kind::kLParen) && cur_.at(SexprToken::Kind::kSymbol, 1)) {
    cur_.next();
    const SexprToken& feature = cur_.next();
    if (!seen.insert(feature.text).second)
      throw ReadError(feature.line, "duplicate feature '" + feature.text + "'");
    UnifyGraph::Id v = value();
    cur_.expect(SexprToken::Kind::kRParen, "')' closing feature group");
    if (!g_.set_arc(node, Symbol(feature.text), v))
      throw ReadError(feature.line, "conflicting values: " + g_.failure().message());
  }
  return node;
}

UnifyGraph::Id FsReader::value() {
  const SexprToken& tok = cur_.peek();
  UnifyGraph::Id var = 0;
  bool tagged = false;
  if (tok.kind == SexprToken::Kind::kVariable) {
    cur_.next();
    var = variable(tok);
    tagged = true;
  }
  const SexprToken& body = cur_.peek();
  UnifyGraph::Id out = 0;
  bool has_body = true;
  switch (body.kind) {
    case SexprToken::Kind::kSymbol:
    case SexprToken::Kind::kString:
      cur_.next();
      out = g_.new_atom(Symbol(body.text));
      break;
    case SexprToken::Kind::kLParen:
      if (cur_.at(SexprToken::Kind::kRParen, 1)) {
        cur_.next();
        cur_.next();
        out = g_.new_complex();
      } else if (cur_.at(SexprToken::Kind::kSymbol, 1)) {
        out = groups();
      } else {
        throw ReadError(body.line, "expected feature name after '('");
      }
      break;
    default:
      has_body = false;
  }
  if (!tagged) {
    if (!has_body) throw ReadError(body.line, "expected a value");
    return out;
  }
  if (has_body) merge(var, out, body.line);
  return var;
}

UnifyGraph::Id FsReader::bracketed() {
  cur_.expect(SexprToken::Kind::kLParen, "'(' opening a sign description");
  UnifyGraph::Id node;
  if (cur_.at(SexprToken::Kind::kRParen)) {
    node = g_.new_complex();
  } else {
    node = groups();
  }
  cur_.expect(SexprToken::Kind::kRParen, "')' closing a sign description");
  return node;
}

std::vector<UnifyGraph::Id> FsReader::bracketed_list() {
  std::vector<UnifyGraph::Id> out;
  while (cur_.at(SexprToken::Kind::kLParen)) out.push_back(bracketed());
  return out;
}

FeatureStructure parse_fs(std::string_view text) {
  std::vector<Diagnostic> diags;
  auto tokens = lex_sexpr(text, diags);
  if (!diags.empty()) throw std::invalid_argument(diags.front().message);
  SexprCursor cur(tokens);
  UnifyGraph g;
  FsReader::Vars vars;
  FsReader reader(cur, g, vars);
  try {
    UnifyGraph::Id root;
    if (cur.at(SexprToken::Kind::kEnd)) {
      root = g.new_complex();
    } else if (cur.at(SexprToken::Kind::kLParen) && cur.at(SexprToken::Kind::kSymbol, 1)) {
      root = reader.groups();
    } else if (cur.at(SexprToken::Kind::kVariable) && cur.at(SexprToken::Kind::kLParen, 1) &&
               cur.at(SexprToken::Kind::kSymbol, 2)) {
      root = reader.groups();
    } else {
      root = reader.value();
    }
    if (!cur.at(SexprToken::Kind::kEnd)) throw ReadError(cur.peek().line, "trailing input '" + cur.peek().text + "'");
    auto out = g.extract(root);
    if (!out) throw std::invalid_argument(g.failure().message());
    return *out;
  } catch (const ReadError& e) {
    throw std::invalid_argument("line " + std::to_string(e.line) + ": " + e.what());
  }
}

}  // namespace snb
