#include "snb/generator.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "combine.hpp"
#include "snb/sign.hpp"
#include "snb/unify.hpp"

namespace snb {

const char* gen_error_name(GenError e) {
  switch (e) {
    case GenError::kNone: return "ok";
    case GenError::kBagTooLarge: return "bag-too-large";
    case GenError::kTimeout: return "gen-timeout";
    case GenError::kEdgeCap: return "edge-cap-exceeded";
    case GenError::kFailure: return "gen-failure";
  }
  return "?";
}

TargetCandidates instantiate_targets(const std::vector<TargetSign>& signs, const Lexicon& lexicon) {
  TargetCandidates out;
  for (std::size_t p = 0; p < signs.size(); ++p) {
    const TargetSign& t = signs[p];
    std::vector<Candidate> cands;
    if (t.passthrough) {
      cands.push_back(Candidate{t.sign, {t.display}});
    } else {
      for (std::size_t e : lexicon.by_lemma(lemma_of(t.sign))) {
        const auto& entry = lexicon.entries()[e];
        auto u = unify(entry.sign, t.sign);
        if (!u) continue;
        Candidate c{u.value(), {}, e};
        if (!entry.silent) c.words.push_back(entry.form);
        cands.push_back(std::move(c));
      }
    }
    if (cands.empty() && !out.gap) out.gap = GenerationGap{p, lemma_of(t.sign)};
    out.positions.push_back(std::move(cands));
  }
  return out;
}

std::vector<Realization> rank_realizations(std::vector<Realization> rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const Realization& a, const Realization& b) {
    if (a.words.size() != b.words.size()) return a.words.size() < b.words.size();
    return a.text < b.text;
  });
  std::vector<Realization> out;
  for (auto& r : rs)
    if (out.empty() || out.back().text != r.text) out.push_back(std::move(r));
  return out;
}

namespace {

using Mask = std::uint32_t;
constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

struct GenEdge {
  Mask mask = 0;
  FeatureStructure fs;
  Symbol cat;
  std::vector<std::string> words;
  std::vector<std::size_t> order;
  std::vector<std::size_t> choice;
  int unary_depth = 0;
};

struct Abort {
  GenError error;
};

class BagGenerator {
 public:
  BagGenerator(const std::vector<std::vector<Candidate>>& c, const Grammar& g, const GenLimits& l)
      : cands_(c), g_(g), l_(l), n_(c.size()), start_(std::chrono::steady_clock::now()) {
    by_size_.assign(n_ + 1, {});
  }

  GenResult run() {
    GenResult out;
    if (n_ > l_.max_bag || n_ > 31) {
      out.error = GenError::kBagTooLarge;
      return out;
    }
    try {
      for (std::size_t p = 0; p < n_; ++p) {
        for (std::size_t k = 0; k < cands_[p].size(); ++k) {
          GenEdge e;
          e.mask = Mask{1} << p;
          e.fs = detail::lexical_edge(cands_[p][k].sign);
          e.cat = cat_of(cands_[p][k].sign);
          e.words = cands_[p][k].words;
          e.order = {p};
          e.choice.assign(n_, kUnset);
          e.choice[p] = k;
          add(std::move(e));
        }
      }
      unary_closure(1);
      for (std::size_t size = 2; size <= n_; ++size) {
        for (const auto& rule : g_.rules) {
          if (rule.arity < 2 || static_cast<std::size_t>(rule.arity) > size) continue;
          auto state = detail::start_rule(rule);
          std::vector<std::size_t> kids;
          combine(rule, state, 0, 0, 0, size, kids);
        }
        unary_closure(size);
      }
    } catch (const Abort& a) {
      out.error = a.error;
      out.edges = edges_.size();
      return out;
    }
    out.edges = edges_.size();
    const Mask full = n_ == 0 ? 0 : static_cast<Mask>((Mask{1} << n_) - 1);
    std::vector<Realization> rs;
    for (const auto& e : edges_) {
      if (e.mask != full || !g_.is_root(e.cat)) continue;
      Realization r;
      r.words = e.words;
      for (std::size_t i = 0; i < e.words.size(); ++i) r.text += (i ? " " : "") + e.words[i];
      r.root_cat = e.cat;
      r.order = e.order;
      r.choice = e.choice;
      r.fs = e.fs;
      std::string bits;
      for (std::size_t p = 0; p < n_; ++p) bits += (e.mask >> p & 1) ? '1' : '0';
      out.trace.push_back("GEN " + bits + " " + e.cat.str() + " \"" + r.text + "\"");
      rs.push_back(std::move(r));
    }
    out.realizations = rank_realizations(std::move(rs));
    if (out.realizations.empty()) out.error = GenError::kFailure;
    return out;
  }

 private:
  void tick() {
    if ((++steps_ & 63) == 0 && std::chrono::steady_clock::now() - start_ > l_.timeout)
      throw Abort{GenError::kTimeout};
  }

  void add(GenEdge e) {
    std::string key = std::to_string(e.mask) + "|" + e.fs.str() + "|";
    for (const auto& w : e.words) key += w + " ";
    if (!seen_.insert(std::move(key)).second) return;
    if (edges_.size() >= l_.max_edges) throw Abort{GenError::kEdgeCap};
    by_size_[std::popcount(e.mask)].push_back(edges_.size());
    edges_.push_back(std::move(e));
  }

  bool cat_ok(const GrammarRule& rule, int i, const GenEdge& e) const {
    Symbol want = rule.daughter_cats[i];
    return want == Symbol() || want == e.cat;
  }

  void combine(const GrammarRule& rule, const detail::RuleState& state, int i, Mask used,
               std::size_t have, std::size_t size, std::vector<std::size_t>& kids) {
    const std::size_t remaining = static_cast<std::size_t>(rule.arity - i);
    if (remaining == 0) {
      if (have == size) build(rule, state, kids);
      return;
    }
    const std::size_t lo = remaining == 1 ? size - have : 1;
    const std::size_t hi = size - have - (remaining - 1);
    for (std::size_t s = lo; s <= hi; ++s) {
      const std::size_t count = by_size_[s].size();
      for (std::size_t j = 0; j < count; ++j) {
        const std::size_t id = by_size_[s][j];
        const GenEdge& e = edges_[id];
        if ((e.mask & used) || !cat_ok(rule, i, e)) continue;
        tick();
        detail::RuleState next = state;
        if (!detail::add_daughter(next, i, e.fs)) continue;
        kids.push_back(id);
        combine(rule, next, i + 1, used | e.mask, have + s, size, kids);
        kids.pop_back();
      }
    }
  }

  void build(const GrammarRule& rule, const detail::RuleState& state,
             const std::vector<std::size_t>& kids) {
    detail::RuleState done = state;
    auto fs = detail::finish_rule(done, rule);
    if (!fs) return;
    GenEdge e;
    e.fs = std::move(*fs);
    e.cat = cat_of(*resolve(e.fs, std::vector<Symbol>{feat::m()}));
    e.choice.assign(n_, kUnset);
    for (std::size_t k : kids) {
      const GenEdge& child = edges_[k];
      e.mask |= child.mask;
      e.words.insert(e.words.end(), child.words.begin(), child.words.end());
      e.order.insert(e.order.end(), child.order.begin(), child.order.end());
      for (std::size_t p = 0; p < n_; ++p)
        if (child.choice[p] != kUnset) e.choice[p] = child.choice[p];
    }
    if (rule.arity == 1) e.unary_depth = edges_[kids.front()].unary_depth + 1;
    add(std::move(e));
  }

  void unary_closure(std::size_t size) {
    for (int depth = 1; depth <= l_.max_unary_depth; ++depth) {
      std::vector<std::size_t> layer;
      for (std::size_t id : by_size_[size])
        if (edges_[id].unary_depth == depth - 1) layer.push_back(id);
      for (std::size_t id : layer) {
        for (const auto& rule : g_.rules) {
          if (rule.arity != 1 || !cat_ok(rule, 0, edges_[id])) continue;
          tick();
          auto state = detail::start_rule(rule);
          if (!detail::add_daughter(state, 0, edges_[id].fs)) continue;
          build(rule, state, {id});
        }
      }
    }
  }

  const std::vector<std::vector<Candidate>>& cands_;
  const Grammar& g_;
  const GenLimits& l_;
  std::size_t n_;
  std::chrono::steady_clock::time_point start_;
  std::size_t steps_ = 0;
  std::vector<GenEdge> edges_;
  std::vector<std::vector<std::size_t>> by_size_;
  std::unordered_set<std::string> seen_;
};

}  // namespace

GenResult generate(const std::vector<std::vector<Candidate>>& candidates, const Grammar& grammar,
                   const GenLimits& limits) {
  return BagGenerator(candidates, grammar, limits).run();
}

}  // namespace snb
