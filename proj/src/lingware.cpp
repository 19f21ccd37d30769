#include "snb/lingware.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace snb {

namespace {

const Symbol kCat("cat");
const Symbol kLemma("lemma");

using Kind = SexprToken::Kind;

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Runs `handle` on every top-level `( ... )` form. Errors inside one form are
// recorded and the loader resumes after that form's closing parenthesis.
template <class Handle>
void for_each_form(const std::vector<SexprToken>& tokens, std::string_view file,
                   std::vector<Diagnostic>& diags, Handle handle) {
  SexprCursor cur(tokens);
  while (!cur.at(Kind::kEnd)) {
    if (!cur.at(Kind::kLParen)) {
      diags.push_back({std::string(file), cur.peek().line,
                       "expected '(' at top level, found '" + cur.peek().text + "'"});
      cur.next();
      continue;
    }
    std::size_t close = cur.matching_close(cur.pos());
    try {
      handle(cur);
      if (cur.pos() != close)
        throw ReadError(cur.peek().line, "unexpected '" + cur.peek().text + "'");
    } catch (const ReadError& e) {
      diags.push_back({std::string(file), e.line, e.what()});
    }
    cur.seek(close);
  }
}

std::string read_name(SexprCursor& cur, const char* what) {
  if (cur.at(Kind::kSymbol) || cur.at(Kind::kString)) return cur.next().text;
  throw ReadError(cur.peek().line, std::string("expected ") + what);
}

std::string read_string(SexprCursor& cur, const char* what) {
  if (cur.at(Kind::kString) || cur.at(Kind::kSymbol)) return cur.next().text;
  throw ReadError(cur.peek().line, std::string("expected ") + what);
}

std::vector<std::string> read_symbol_list(SexprCursor& cur) {
  cur.expect(Kind::kLParen, "'('");
  std::vector<std::string> out;
  while (cur.at(Kind::kSymbol) || cur.at(Kind::kString)) out.push_back(cur.next().text);
  cur.expect(Kind::kRParen, "')'");
  return out;
}

FeatureStructure extract_or_throw(UnifyGraph& g, UnifyGraph::Id root, int line) {
  auto fs = g.extract(root);
  if (!fs) throw ReadError(line, g.failure().message());
  return *fs;
}

Symbol numbered(char prefix, std::size_t i) {
  std::string s(1, prefix);
  s += std::to_string(i);
  return Symbol(s);
}

Symbol atomic_cat(const FeatureStructure& fs, FeatureStructure::NodeId at) {
  auto id = fs.find(std::span<const Symbol>(&kCat, 1), at);
  if (!id || fs.node(*id).kind != NodeKind::kAtom) return {};
  return fs.node(*id).atom;
}

}  // namespace

// ---------------------------------------------------------------------------

bool operator==(const LexicalEntry& a, const LexicalEntry& b) {
  return a.form == b.form && a.lemma == b.lemma && a.proper_name == b.proper_name &&
         a.punctuation == b.punctuation && a.silent == b.silent && a.sign == b.sign;
}

void Lexicon::add(LexicalEntry entry) {
  std::size_t i = entries_.size();
  forms_[entry.form].push_back(i);
  lemmas_[entry.lemma].push_back(i);
  entries_.push_back(std::move(entry));
}

const std::vector<std::size_t>& Lexicon::by_form(const std::string& form) const {
  static const std::vector<std::size_t> none;
  auto it = forms_.find(form);
  return it == forms_.end() ? none : it->second;
}

const std::vector<std::size_t>& Lexicon::by_lemma(const std::string& lemma) const {
  static const std::vector<std::size_t> none;
  auto it = lemmas_.find(lemma);
  return it == lemmas_.end() ? none : it->second;
}

Loaded<Lexicon> load_lexicon(std::string_view text, std::string_view file) {
  Loaded<Lexicon> out;
  auto tokens = lex_sexpr(text, out.diagnostics);
  for (auto& d : out.diagnostics) d.file = std::string(file);
  for_each_form(tokens, file, out.diagnostics, [&](SexprCursor& cur) {
    int line = cur.next().line;
    std::string head = read_name(cur, "'entry'");
    if (head != "entry") throw ReadError(line, "expected 'entry', found '" + head + "'");
    LexicalEntry e;
    e.line = line;
    UnifyGraph g;
    FsReader::Vars vars;
    FsReader reader(cur, g, vars);
    std::optional<UnifyGraph::Id> sign;
    while (cur.at(Kind::kKeyword)) {
      const SexprToken& kw = cur.next();
      if (kw.text == "form") {
        e.form = read_string(cur, "form string");
      } else if (kw.text == "lemma") {
        e.lemma = read_string(cur, "lemma string");
      } else if (kw.text == "flags") {
        for (const auto& flag : read_symbol_list(cur)) {
          if (flag == "proper-name") e.proper_name = true;
          else if (flag == "punctuation") e.punctuation = true;
          else if (flag == "silent") e.silent = true;
          else throw ReadError(kw.line, "unknown flag '" + flag + "'");
        }
      } else if (kw.text == "sign") {
        sign = reader.groups();
      } else {
        throw ReadError(kw.line, "unknown keyword :" + kw.text);
      }
    }
    cur.expect(Kind::kRParen, "')' closing entry");
    const std::string who = "entry '" + e.form + "'";
    if (e.form.empty()) throw ReadError(line, "entry has an empty :form");
    if (e.lemma.empty()) throw ReadError(line, who + " has no :lemma");
    if (!sign) throw ReadError(line, who + " has no :sign");
    if (!g.child(*sign, kCat)) throw ReadError(line, who + " has no cat in its sign");
    if (auto existing = g.child(*sign, kLemma)) {
      auto atom = g.atom(*existing);
      if (!atom || atom->str() != e.lemma)
        throw ReadError(line, who + ": sign lemma differs from :lemma \"" + e.lemma + "\"");
    } else {
      g.set_arc(*sign, kLemma, g.new_atom(Symbol(e.lemma)));
    }
    e.sign = extract_or_throw(g, *sign, line);
    out.value.add(std::move(e));
  });
  return out;
}

std::string serialize(const LexicalEntry& e) {
  std::string flags;
  auto add_flag = [&](bool on, const char* name) {
    if (!on) return;
    if (!flags.empty()) flags += ' ';
    flags += name;
  };
  add_flag(e.proper_name, "proper-name");
  add_flag(e.punctuation, "punctuation");
  add_flag(e.silent, "silent");
  return "(entry :form " + quoted(e.form) + " :lemma " + quoted(e.lemma) + " :flags (" + flags +
         ") :sign " + e.sign.str() + ")";
}

std::string serialize(const Lexicon& lexicon) {
  std::string out;
  for (const auto& e : lexicon.entries()) out += serialize(e) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

const char* goal_name(GoalKind kind) {
  switch (kind) {
    case GoalKind::kAgree: return "agree";
    case GoalKind::kRequire: return "require";
    case GoalKind::kProhibit: return "prohibit";
  }
  return "?";
}

std::optional<GoalKind> goal_from_name(std::string_view name) {
  if (name == "agree") return GoalKind::kAgree;
  if (name == "require") return GoalKind::kRequire;
  if (name == "prohibit") return GoalKind::kProhibit;
  return std::nullopt;
}

std::string GoalArg::str() const {
  if (!is_path()) return quote_atom(constant.str());
  std::string out = std::to_string(daughter);
  for (Symbol f : path) out += "." + f.str();
  return out;
}

std::string GoalCall::str() const {
  std::string out = "(";
  out += goal_name(kind);
  for (const auto& a : args) out += " " + a.str();
  return out + ")";
}

Symbol GrammarRule::mother_feature() {
  static const Symbol m("m");
  return m;
}

Symbol GrammarRule::daughter_feature(int i) {
  static const Symbol d[kMaxDaughters] = {Symbol("d0"), Symbol("d1"), Symbol("d2"), Symbol("d3")};
  return d[i];
}

bool operator==(const GrammarRule& a, const GrammarRule& b) {
  return a.name == b.name && a.arity == b.arity && a.goals == b.goals && a.tuple == b.tuple;
}

bool Grammar::is_root(Symbol cat) const {
  return std::find(roots.begin(), roots.end(), cat) != roots.end();
}

namespace {

GoalArg parse_goal_arg(const SexprToken& tok) {
  GoalArg arg;
  const std::string& t = tok.text;
  std::size_t digits = 0;
  while (digits < t.size() && std::isdigit(static_cast<unsigned char>(t[digits]))) ++digits;
  if (tok.kind == Kind::kSymbol && digits > 0 && (digits == t.size() || t[digits] == '.')) {
    arg.daughter = std::stoi(t.substr(0, digits));
    if (digits < t.size()) arg.path = make_path(std::string_view(t).substr(digits + 1));
    return arg;
  }
  arg.constant = Symbol(t);
  return arg;
}

void check_goal(const GoalCall& goal, int arity, int line) {
  const char* name = goal_name(goal.kind);
  if (goal.args.size() != 2)
    throw ReadError(line, std::string("goal ") + name + " takes 2 arguments");
  if (!goal.args[0].is_path())
    throw ReadError(line, std::string("goal ") + name + ": first argument must be a daughter path");
  bool second_is_path = goal.kind == GoalKind::kAgree;
  if (goal.args[1].is_path() != second_is_path)
    throw ReadError(line, std::string("goal ") + name + ": second argument must be " +
                              (second_is_path ? "a daughter path" : "an atom"));
  for (const auto& a : goal.args)
    if (a.is_path() && a.daughter >= arity)
      throw ReadError(line, std::string("goal ") + name + ": daughter " +
                                std::to_string(a.daughter) + " out of range");
}

}  // namespace

Loaded<Grammar> load_grammar(std::string_view text, std::string_view file) {
  Loaded<Grammar> out;
  auto tokens = lex_sexpr(text, out.diagnostics);
  for (auto& d : out.diagnostics) d.file = std::string(file);
  std::set<std::string> names;
  bool saw_roots = false;
  for_each_form(tokens, file, out.diagnostics, [&](SexprCursor& cur) {
    int line = cur.next().line;
    std::string head = read_name(cur, "form name");
    if (head == "roots") {
      saw_roots = true;
      while (cur.at(Kind::kSymbol)) out.value.roots.emplace_back(cur.next().text);
      cur.expect(Kind::kRParen, "')' closing roots");
      return;
    }
    if (head == "direction") {
      std::string d = read_name(cur, "source or target");
      if (d == "source") out.value.direction = Direction::kSource;
      else if (d == "target") out.value.direction = Direction::kTarget;
      else throw ReadError(line, "direction must be source or target");
      cur.expect(Kind::kRParen, "')' closing direction");
      return;
    }
    if (head != "rule") throw ReadError(line, "unknown form '" + head + "'");

    GrammarRule rule;
    rule.line = line;
    rule.name = read_name(cur, "rule name");
    UnifyGraph g;
    FsReader::Vars vars;
    FsReader reader(cur, g, vars);
    std::optional<UnifyGraph::Id> mother;
    std::vector<UnifyGraph::Id> daughters;
    std::vector<std::pair<GoalCall, int>> goals;
    while (cur.at(Kind::kKeyword)) {
      const SexprToken& kw = cur.next();
      if (kw.text == "mother") {
        mother = reader.groups();
      } else if (kw.text == "daughters") {
        daughters = reader.bracketed_list();
      } else if (kw.text == "goals") {
        while (cur.at(Kind::kLParen)) {
          int gline = cur.next().line;
          std::string gname = read_name(cur, "goal name");
          auto kind = goal_from_name(gname);
          if (!kind) throw ReadError(gline, "unknown goal '" + gname + "'");
          GoalCall call{*kind, {}};
          while (cur.at(Kind::kSymbol) || cur.at(Kind::kString)) call.args.push_back(parse_goal_arg(cur.next()));
          cur.expect(Kind::kRParen, "')' closing goal");
          goals.emplace_back(std::move(call), gline);
        }
      } else {
        throw ReadError(kw.line, "unknown keyword :" + kw.text);
      }
    }
    cur.expect(Kind::kRParen, "')' closing rule");
    const std::string who = "rule '" + rule.name + "'";
    if (!names.insert(rule.name).second) throw ReadError(line, "duplicate " + who);
    if (!mother) throw ReadError(line, who + " has no :mother");
    if (daughters.empty() || daughters.size() > kMaxDaughters)
      throw ReadError(line, who + " must have 1 to " + std::to_string(kMaxDaughters) + " daughters");
    rule.arity = static_cast<int>(daughters.size());
    for (auto& [goal, gline] : goals) check_goal(goal, rule.arity, gline);
    for (auto& [goal, gline] : goals) rule.goals.push_back(std::move(goal));

    UnifyGraph::Id root = g.new_complex();
    g.set_arc(root, GrammarRule::mother_feature(), *mother);
    for (int i = 0; i < rule.arity; ++i) g.set_arc(root, GrammarRule::daughter_feature(i), daughters[i]);
    rule.tuple = extract_or_throw(g, root, line);

    auto m = rule.tuple.find(std::span<const Symbol>(std::vector<Symbol>{GrammarRule::mother_feature()}));
    if (!rule.tuple.find(std::vector<Symbol>{GrammarRule::mother_feature(), kCat}))
      throw ReadError(line, who + ": mother has no cat");
    rule.mother_cat = atomic_cat(rule.tuple, *m);
    for (int i = 0; i < rule.arity; ++i) {
      auto d = rule.tuple.find(std::vector<Symbol>{GrammarRule::daughter_feature(i)});
      if (!rule.tuple.find(std::vector<Symbol>{kCat}, *d))
        throw ReadError(line, who + ": daughter " + std::to_string(i) + " has no cat");
      rule.daughter_cats.push_back(atomic_cat(rule.tuple, *d));
    }
    out.value.rules.push_back(std::move(rule));
  });
  if (!saw_roots || out.value.roots.empty())
    out.diagnostics.push_back({std::string(file), 1, "grammar declares no root categories"});
  return out;
}

std::string serialize(const GrammarRule& rule) {
  FsPrinter printer(rule.tuple);
  std::string out = "(rule " + rule.name + " :mother ";
  out += printer.groups(*rule.tuple.find(std::vector<Symbol>{GrammarRule::mother_feature()}));
  out += " :daughters";
  for (int i = 0; i < rule.arity; ++i) {
    auto d = *rule.tuple.find(std::vector<Symbol>{GrammarRule::daughter_feature(i)});
    std::string body = printer.groups(d);
    out += " (" + (body == "()" ? std::string() : body) + ")";
  }
  if (!rule.goals.empty()) {
    out += " :goals";
    for (const auto& goal : rule.goals) out += " " + goal.str();
  }
  return out + ")";
}

std::string serialize(const Grammar& grammar) {
  std::string out = grammar.direction == Direction::kSource ? "(direction source)\n" : "(direction target)\n";
  out += "(roots";
  for (Symbol r : grammar.roots) out += " " + r.str();
  out += ")\n";
  for (const auto& rule : grammar.rules) out += serialize(rule) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

Symbol source_feature(std::size_t i) { return numbered('s', i); }
Symbol target_feature(std::size_t i) { return numbered('t', i); }
Symbol trigger_feature() {
  static const Symbol t("trigger");
  return t;
}

bool operator==(const BilingualEntry& a, const BilingualEntry& b) {
  return a.name == b.name && a.key == b.key && a.key_pattern == b.key_pattern &&
         a.n_source == b.n_source && a.n_target == b.n_target && a.macros == b.macros &&
         a.tuple == b.tuple;
}

bool operator==(const TransferMacro& a, const TransferMacro& b) {
  return a.name == b.name && a.n_source == b.n_source && a.n_target == b.n_target &&
         a.tuple == b.tuple;
}

const TransferMacro* BilingualLexicon::find_macro(std::string_view name) const {
  for (const auto& m : macros)
    if (m.name == name) return &m;
  return nullptr;
}

Loaded<BilingualLexicon> load_bilingual(std::string_view text, std::string_view file) {
  Loaded<BilingualLexicon> out;
  auto tokens = lex_sexpr(text, out.diagnostics);
  for (auto& d : out.diagnostics) d.file = std::string(file);
  std::set<std::string> entry_names, macro_names;
  for_each_form(tokens, file, out.diagnostics, [&](SexprCursor& cur) {
    int line = cur.next().line;
    std::string head = read_name(cur, "'bi' or 'tmacro'");
    if (head != "bi" && head != "tmacro") throw ReadError(line, "unknown form '" + head + "'");
    const bool is_macro = head == "tmacro";
    std::string name = read_name(cur, "name");
    UnifyGraph g;
    FsReader::Vars vars;
    FsReader reader(cur, g, vars);
    std::string key;
    bool has_key = false;
    std::optional<UnifyGraph::Id> trigger;
    std::vector<UnifyGraph::Id> source, target;
    std::vector<std::string> macros;
    while (cur.at(Kind::kKeyword)) {
      const SexprToken& kw = cur.next();
      const std::string& k = kw.text;
      if (!is_macro && k == "key") {
        key = read_string(cur, "key-word");
        has_key = true;
      } else if (!is_macro && k == "source") {
        source = reader.bracketed_list();
      } else if (!is_macro && k == "target") {
        target = reader.bracketed_list();
      } else if (!is_macro && k == "macros") {
        macros = read_symbol_list(cur);
      } else if (is_macro && k == "trigger") {
        trigger = reader.groups();
      } else if (is_macro && k == "source-extra") {
        source = reader.bracketed_list();
      } else if (is_macro && k == "target-extra") {
        target = reader.bracketed_list();
      } else {
        throw ReadError(kw.line, "unknown keyword :" + k);
      }
    }
    cur.expect(Kind::kRParen, "')' closing the form");

    UnifyGraph::Id root = g.new_complex();
    for (std::size_t i = 0; i < source.size(); ++i) g.set_arc(root, source_feature(i), source[i]);
    for (std::size_t i = 0; i < target.size(); ++i) g.set_arc(root, target_feature(i), target[i]);

    if (is_macro) {
      const std::string who = "macro '" + name + "'";
      if (!macro_names.insert(name).second) throw ReadError(line, "duplicate " + who);
      if (!trigger) throw ReadError(line, who + " has no :trigger");
      g.set_arc(root, trigger_feature(), *trigger);
      TransferMacro m;
      m.name = name;
      m.line = line;
      m.n_source = source.size();
      m.n_target = target.size();
      m.tuple = extract_or_throw(g, root, line);
      auto trig = m.tuple.find(std::vector<Symbol>{trigger_feature()});
      if (m.tuple.node(*trig).kind != NodeKind::kComplex || m.tuple.node(*trig).arcs.empty())
        throw ReadError(line, who + ": trigger must contain at least one feature");
      out.value.macros.push_back(std::move(m));
      return;
    }

    const std::string who = "entry '" + name + "'";
    if (!entry_names.insert(name).second) throw ReadError(line, "duplicate " + who);
    if (!has_key) throw ReadError(line, who + " has no :key");
    if (source.empty()) throw ReadError(line, who + " has an empty source side");
    BilingualEntry e;
    e.name = name;
    e.key = key;
    e.line = line;
    e.n_source = source.size();
    e.n_target = target.size();
    e.macros = std::move(macros);
    e.tuple = extract_or_throw(g, root, line);
    bool found = false;
    for (std::size_t i = 0; i < e.n_source; ++i) {
      auto lemma = e.tuple.atom_at(std::vector<Symbol>{source_feature(i), kLemma});
      if (lemma && lemma->str() == key) {
        e.key_pattern = i;
        found = true;
        break;
      }
    }
    if (!found) throw ReadError(line, who + ": key-word \"" + key + "\" is not the lemma of any source pattern");
    out.value.entries.push_back(std::move(e));
  });
  for (const auto& e : out.value.entries)
    for (const auto& m : e.macros)
      if (!out.value.find_macro(m))
        out.diagnostics.push_back({std::string(file), e.line,
                                   "entry '" + e.name + "' references undefined macro '" + m + "'"});
  return out;
}

namespace {

std::string bracketed_parts(FsPrinter& printer, const FeatureStructure& tuple, char prefix,
                            std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    auto id = *tuple.find(std::vector<Symbol>{numbered(prefix, i)});
    std::string body = printer.groups(id);
    out += " (" + (body == "()" ? std::string() : body) + ")";
  }
  return out;
}

}  // namespace

std::string serialize(const BilingualEntry& e) {
  FsPrinter printer(e.tuple);
  std::string out = "(bi " + e.name + " :key " + quoted(e.key) + " :source";
  out += bracketed_parts(printer, e.tuple, 's', e.n_source);
  if (e.n_target) out += " :target" + bracketed_parts(printer, e.tuple, 't', e.n_target);
  if (!e.macros.empty()) {
    out += " :macros (";
    for (std::size_t i = 0; i < e.macros.size(); ++i) out += (i ? " " : "") + e.macros[i];
    out += ")";
  }
  return out + ")";
}

std::string serialize(const TransferMacro& m) {
  FsPrinter printer(m.tuple);
  std::string out = "(tmacro " + m.name + " :trigger ";
  out += printer.groups(*m.tuple.find(std::vector<Symbol>{trigger_feature()}));
  if (m.n_source) out += " :source-extra" + bracketed_parts(printer, m.tuple, 's', m.n_source);
  if (m.n_target) out += " :target-extra" + bracketed_parts(printer, m.tuple, 't', m.n_target);
  return out + ")";
}

std::string serialize(const BilingualLexicon& bl) {
  std::string out;
  for (const auto& m : bl.macros) out += serialize(m) + "\n";
  for (const auto& e : bl.entries) out += serialize(e) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

Loaded<Policy> load_policy(std::string_view text, std::string_view file) {
  Loaded<Policy> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++n;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      out.diagnostics.push_back({std::string(file), n, "expected 'key: value'"});
      continue;
    }
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == "inverted-question") {
      if (value == "yes") out.value.inverted_question = true;
      else if (value == "no") out.value.inverted_question = false;
      else out.diagnostics.push_back({std::string(file), n, "inverted-question must be yes or no"});
    } else if (key == "inverted-question-mark") {
      if (value.empty()) out.diagnostics.push_back({std::string(file), n, "empty inverted-question-mark"});
      else out.value.inverted_question_mark = value;
    } else {
      out.diagnostics.push_back({std::string(file), n, "unknown policy key '" + key + "'"});
    }
  }
  return out;
}

std::string serialize(const Policy& p) {
  return std::string("inverted-question: ") + (p.inverted_question ? "yes" : "no") +
         "\ninverted-question-mark: " + p.inverted_question_mark + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Loaded<Lingware> load_lingware(const std::filesystem::path& dir) {
  Loaded<Lingware> out;
  auto load = [&](const char* name, auto loader, auto& target) {
    auto path = dir / name;
    std::string text;
    try {
      text = read_file(path);
    } catch (const std::exception&) {
      out.diagnostics.push_back({path.string(), 0, "missing lingware file"});
      return;
    }
    auto loaded = loader(text, path.string());
    target = std::move(loaded.value);
    for (auto& d : loaded.diagnostics) out.diagnostics.push_back(std::move(d));
  };
  load("source.lex", load_lexicon, out.value.source_lexicon);
  load("source.gram", load_grammar, out.value.source_grammar);
  load("bilingual.bl", load_bilingual, out.value.bilingual);
  load("target.lex", load_lexicon, out.value.target_lexicon);
  load("target.gram", load_grammar, out.value.target_grammar);
  load("policy.cfg", load_policy, out.value.policy);
  return out;
}

}  // namespace snb
