#include "snb/parser.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "combine.hpp"
#include "snb/unify.hpp"

namespace snb {

// ---------------------------------------------------------------------------
// Sign helpers

std::optional<Symbol> top_atom(const FeatureStructure& fs, Symbol feature) {
  return fs.atom_at(std::span<const Symbol>(&feature, 1));
}

std::string lemma_of(const FeatureStructure& sign) {
  auto l = top_atom(sign, feat::lemma());
  return l ? l->str() : std::string();
}

Symbol cat_of(const FeatureStructure& sign) { return top_atom(sign, feat::cat()).value_or(Symbol()); }

FeatureStructure passthrough_sign(const std::string& lemma) {
  std::vector<std::pair<Symbol, FeatureStructure>> parts{
      {feat::cat(), FeatureStructure::make_atom("unk")},
      {feat::lemma(), FeatureStructure::make_atom(lemma)},
      {feat::pass(), FeatureStructure::make_atom("yes")},
  };
  return compose(parts);
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// ---------------------------------------------------------------------------
// Tokens and lookup

namespace {

bool is_punct(char c) {
  switch (c) {
    case '.': case ',': case '?': case '!': case ';': case ':':
    case '"': case '\'': case '(': case ')':
      return true;
    default:
      return false;
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  auto push = [&](std::string_view text, Token::Kind kind) {
    out.push_back(Token{lower(text), std::string(text), out.size(), kind});
  };
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    std::string_view chunk = line.substr(i, j - i);
    i = j;
    std::size_t b = 0, e = chunk.size();
    while (b < e && is_punct(chunk[b])) ++b;
    while (e > b && is_punct(chunk[e - 1])) --e;
    for (std::size_t k = 0; k < b; ++k) push(chunk.substr(k, 1), Token::Kind::kPunct);
    if (e > b) push(chunk.substr(b, e - b), Token::Kind::kWord);
    for (std::size_t k = std::max(b, e); k < chunk.size(); ++k)
      push(chunk.substr(k, 1), Token::Kind::kPunct);
  }
  return out;
}

Symbol word_index(std::size_t word) { return Symbol("i" + std::to_string(word + 1)); }

std::vector<Reading> lookup(const std::string& form, const std::string& original, std::size_t word,
                            const Lexicon& lexicon) {
  const Symbol idx = feat::index();
  auto index_atom = FeatureStructure::make_atom(word_index(word));
  std::vector<Reading> out;
  for (std::size_t e : lexicon.by_form(form)) {
    const auto& entry = lexicon.entries()[e];
    auto sign = unify_at(entry.sign, std::span<const Symbol>(&idx, 1), index_atom);
    if (!sign) continue;  // entry fixes its own index; unusable in a sentence
    out.push_back(Reading{sign.value(), e, false, entry.proper_name, entry.silent, original});
  }
  if (out.empty()) {
    auto sign = unify_at(passthrough_sign(form), std::span<const Symbol>(&idx, 1), index_atom);
    out.push_back(Reading{sign.value(), Reading::kNoEntry, true, false, false, original});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edges

FeatureStructure Edge::sign() const { return *resolve(fs, std::vector<Symbol>{feat::m()}); }

std::vector<FeatureStructure> Edge::lexical_signs() const {
  auto list = fs.find(std::vector<Symbol>{feat::lex()});
  return list_items(fs.subtree(*list));
}

bool better_edge(const Edge& a, const Edge& b) {
  if (a.size != b.size) return a.size < b.size;
  if (a.trace != b.trace) return a.trace < b.trace;
  return a.readings < b.readings;
}

std::optional<FeatureStructure> apply_rule(const GrammarRule& rule,
                                           const std::vector<const FeatureStructure*>& daughters) {
  if (static_cast<int>(daughters.size()) != rule.arity) return std::nullopt;
  auto state = detail::start_rule(rule);
  for (int i = 0; i < rule.arity; ++i)
    if (!detail::add_daughter(state, i, *daughters[i])) return std::nullopt;
  return detail::finish_rule(state, rule);
}

namespace {

class ChartParser {
 public:
  ChartParser(ParseResult& r, const Grammar& g, const ParseOptions& o) : r_(r), g_(g), o_(o) {
    n_ = r_.lattice.size();
    spans_.assign(n_ * (n_ + 1), {});
  }

  void run() {
    for (std::size_t w = 0; w < n_; ++w) {
      for (std::size_t k = 0; k < r_.lattice[w].size(); ++k) {
        Edge e;
        e.start = w;
        e.end = w + 1;
        e.fs = detail::lexical_edge(r_.lattice[w][k].sign);
        e.cat = cat_of(r_.lattice[w][k].sign);
        e.rule = "lexical";
        e.readings = {k};
        e.trace = "lexical";
        add(std::move(e));
      }
      unary_closure(w, w + 1);
    }
    for (std::size_t len = 2; len <= n_; ++len) {
      for (std::size_t s = 0; s + len <= n_; ++s) {
        if (crosses_barrier(s, s + len)) continue;
        for (const auto& rule : g_.rules) {
          if (rule.arity < 2 || static_cast<std::size_t>(rule.arity) > len) continue;
          auto state = detail::start_rule(rule);
          std::vector<std::size_t> kids;
          combine(rule, state, 0, s, s + len, kids);
        }
        unary_closure(s, s + len);
      }
    }
  }

 private:
  std::vector<std::size_t>& span(std::size_t s, std::size_t e) { return spans_[s * (n_ + 1) + e]; }

  bool crosses_barrier(std::size_t s, std::size_t e) const {
    for (std::size_t b = s + 1; b < e; ++b)
      if (b < r_.barrier.size() && r_.barrier[b]) return true;
    return false;
  }

  void add(Edge e) {
    if (r_.edges.size() >= o_.max_edges) {
      r_.truncated = true;
      return;
    }
    span(e.start, e.end).push_back(r_.edges.size());
    r_.edges.push_back(std::move(e));
  }

  bool cat_ok(const GrammarRule& rule, int i, const Edge& e) const {
    Symbol want = rule.daughter_cats[i];
    return want == Symbol() || want == e.cat;
  }

  void combine(const GrammarRule& rule, const detail::RuleState& state, int i, std::size_t pos,
               std::size_t end, std::vector<std::size_t>& kids) {
    const int remaining = rule.arity - i;
    if (remaining == 0) {
      if (pos == end) build(rule, state, kids);
      return;
    }
    const std::size_t max_end = end - static_cast<std::size_t>(remaining - 1);
    for (std::size_t q = pos + 1; q <= max_end; ++q) {
      if (remaining == 1 && q != end) continue;
      // copy: the span list may grow while we iterate
      std::vector<std::size_t> candidates = span(pos, q);
      for (std::size_t id : candidates) {
        if (!cat_ok(rule, i, r_.edges[id])) continue;
        detail::RuleState next = state;
        if (!detail::add_daughter(next, i, r_.edges[id].fs)) continue;
        kids.push_back(id);
        combine(rule, next, i + 1, q, end, kids);
        kids.pop_back();
      }
    }
  }

  void build(const GrammarRule& rule, const detail::RuleState& state,
             const std::vector<std::size_t>& kids) {
    detail::RuleState done = state;
    auto fs = detail::finish_rule(done, rule);
    if (!fs) return;
    Edge e;
    e.start = r_.edges[kids.front()].start;
    e.end = r_.edges[kids.back()].end;
    e.fs = std::move(*fs);
    e.cat = cat_of(e.sign());
    e.rule = rule.name;
    e.children = kids;
    e.trace = rule.name;
    for (std::size_t k : kids) {
      const Edge& child = r_.edges[k];
      e.size += child.size;
      e.trace += " " + child.trace;
      e.readings.insert(e.readings.end(), child.readings.begin(), child.readings.end());
    }
    if (rule.arity == 1) e.unary_depth = r_.edges[kids.front()].unary_depth + 1;
    add(std::move(e));
  }

  void unary_closure(std::size_t s, std::size_t e) {
    for (int depth = 1; depth <= o_.max_unary_depth; ++depth) {
      std::vector<std::size_t> layer;
      for (std::size_t id : span(s, e))
        if (r_.edges[id].unary_depth == depth - 1) layer.push_back(id);
      for (std::size_t id : layer) {
        for (const auto& rule : g_.rules) {
          if (rule.arity != 1 || !cat_ok(rule, 0, r_.edges[id])) continue;
          auto state = detail::start_rule(rule);
          if (!detail::add_daughter(state, 0, r_.edges[id].fs)) continue;
          build(rule, state, {id});
        }
      }
    }
  }

  ParseResult& r_;
  const Grammar& g_;
  const ParseOptions& o_;
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> spans_;

 public:
  const std::vector<std::size_t>& edges_over(std::size_t s, std::size_t e) { return span(s, e); }
};

void choose(ParseResult& r, const Grammar& g, ChartParser& chart) {
  const std::size_t n = r.lattice.size();
  if (n == 0) return;
  auto by_rank = [&](std::size_t a, std::size_t b) { return better_edge(r.edges[a], r.edges[b]); };
  for (std::size_t id : chart.edges_over(0, n))
    if (g.is_root(r.edges[id].cat)) r.spanning.push_back(id);
  std::stable_sort(r.spanning.begin(), r.spanning.end(), by_rank);
  if (!r.spanning.empty()) {
    r.fragments = {r.spanning.front()};
    return;
  }

  auto best_fragment = [&](std::size_t s, std::size_t e) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    bool best_root = false;
    for (std::size_t id : chart.edges_over(s, e)) {
      bool root = g.is_root(r.edges[id].cat);
      if (!root && e - s > 1) continue;
      if (!best || (root && !best_root) || (root == best_root && by_rank(id, *best))) {
        best = id;
        best_root = root;
      }
    }
    return best;
  };

  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> cost(n + 1, kInf), next(n + 1, 0), pick(n + 1, 0);
  cost[n] = 0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = n; j > i; --j) {
      if (cost[j] == kInf) continue;
      auto frag = best_fragment(i, j);
      if (!frag) continue;
      if (cost[j] + 1 < cost[i]) {
        cost[i] = cost[j] + 1;
        next[i] = j;
        pick[i] = *frag;
      }
    }
  }
  if (cost[0] == kInf) return;
  for (std::size_t i = 0; i < n; i = next[i]) r.fragments.push_back(pick[i]);
}

void run_parser(ParseResult& r, const Grammar& g, const ParseOptions& o) {
  ChartParser chart(r, g, o);
  chart.run();
  choose(r, g, chart);
}

}  // namespace

ParseResult parse_lattice(Lattice lattice, std::vector<bool> barrier, const Grammar& grammar,
                          const ParseOptions& options) {
  ParseResult r;
  r.lattice = std::move(lattice);
  r.barrier = std::move(barrier);
  r.barrier.resize(r.lattice.size() + 1, false);
  run_parser(r, grammar, options);
  return r;
}

ParseResult parse(const std::vector<Token>& tokens, const Grammar& grammar, const Lexicon& lexicon,
                  const ParseOptions& options) {
  ParseResult r;
  r.tokens = tokens;
  std::vector<bool> barrier{false};
  bool pending_barrier = false;
  for (const auto& t : tokens) {
    if (t.kind == Token::Kind::kPunct) {
      pending_barrier = true;
      continue;
    }
    if (pending_barrier && !r.lattice.empty()) barrier.back() = true;
    pending_barrier = false;
    r.lattice.push_back(lookup(t.text, t.original, r.lattice.size(), lexicon));
    barrier.push_back(false);
  }
  for (auto it = tokens.rbegin(); it != tokens.rend() && it->kind == Token::Kind::kPunct; ++it) {
    if (r.final_punct.empty() && (it->text == "." || it->text == "?" || it->text == "!"))
      r.final_punct = it->text;
    if (it->text == "?") r.interrogative = true;
  }
  r.barrier = std::move(barrier);
  run_parser(r, grammar, options);
  return r;
}

std::vector<std::string> edge_trace(const ParseResult& r) {
  std::vector<std::string> out;
  out.reserve(r.edges.size());
  for (const auto& e : r.edges)
    out.push_back("EDGE " + std::to_string(e.start) + "-" + std::to_string(e.end) + " " + e.rule +
                  " " + e.sign().str());
  return out;
}

SourceBag extract_bag(const ParseResult& r) {
  SourceBag bag;
  bag.final_punct = r.final_punct;
  bag.interrogative = r.interrogative;
  bag.fragments = r.fragments.size();
  for (std::size_t f = 0; f < r.fragments.size(); ++f) {
    const Edge& e = r.edges[r.fragments[f]];
    auto signs = e.lexical_signs();
    for (std::size_t k = 0; k < signs.size(); ++k) {
      std::size_t word = e.start + k;
      const Reading& reading = r.lattice[word][e.readings[k]];
      bag.signs.push_back(BagSign{std::move(signs[k]), reading.form, reading.passthrough,
                                  reading.proper_name, f, word});
    }
  }
  return bag;
}

}  // namespace snb
