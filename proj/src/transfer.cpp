#include "snb/transfer.hpp"

#include <algorithm>

#include "snb/sign.hpp"
#include "snb/unify.hpp"

namespace snb {

namespace {

// Assigns patterns `order[i..]` to unused bag signs, calling `found` for each
// complete assignment. Graph copies give backtracking.
template <class Found>
void assign(UnifyGraph& g, const std::vector<UnifyGraph::Id>& patterns,
            const std::vector<std::size_t>& order, std::size_t i, const SourceBag& bag,
            std::vector<std::size_t>& chosen, std::vector<bool>& used, Found&& found) {
  if (i == order.size()) {
    found(g);
    return;
  }
  const std::size_t p = order[i];
  for (std::size_t s = 0; s < bag.signs.size(); ++s) {
    if (used[s]) continue;
    UnifyGraph next = g;
    auto sign = next.import(bag.signs[s].sign);
    if (!next.unify(patterns[p], sign)) continue;
    used[s] = true;
    chosen[p] = s;
    assign(next, patterns, order, i + 1, bag, chosen, used, found);
    used[s] = false;
  }
}

}  // namespace

std::vector<Match> match_entry(const BilingualEntry& entry, std::size_t entry_index,
                               const SourceBag& bag) {
  std::vector<Match> out;
  UnifyGraph g;
  auto root = g.import(entry.tuple);
  std::vector<UnifyGraph::Id> patterns;
  for (std::size_t i = 0; i < entry.n_source; ++i)
    patterns.push_back(*g.child(root, source_feature(i)));
  std::vector<std::size_t> order{entry.key_pattern};
  for (std::size_t i = 0; i < entry.n_source; ++i)
    if (i != entry.key_pattern) order.push_back(i);

  std::vector<std::size_t> chosen(entry.n_source, 0);
  std::vector<bool> used(bag.signs.size(), false);
  for (std::size_t s = 0; s < bag.signs.size(); ++s) {
    if (lemma_of(bag.signs[s].sign) != entry.key) continue;
    UnifyGraph first = g;
    auto sign = first.import(bag.signs[s].sign);
    if (!first.unify(patterns[entry.key_pattern], sign)) continue;
    used[s] = true;
    chosen[entry.key_pattern] = s;
    assign(first, patterns, order, 1, bag, chosen, used, [&](UnifyGraph& done) {
      auto bound = done.extract(root);
      if (bound) out.push_back(Match{entry_index, chosen, std::move(*bound)});
    });
    used[s] = false;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Match& a, const Match& b) { return a.signs < b.signs; });
  return out;
}

FeatureStructure EffectiveEntry::source(std::size_t i) const {
  return *resolve(tuple, std::vector<Symbol>{source_feature(i)});
}

FeatureStructure EffectiveEntry::target(std::size_t i) const {
  return *resolve(tuple, std::vector<Symbol>{target_feature(i)});
}

EffectiveEntry expand_macros(const BilingualEntry& entry, const Match& match,
                             const BilingualLexicon& bilingual, const SourceBag& bag) {
  EffectiveEntry eff;
  eff.entry = match.entry;
  eff.name = entry.name;
  eff.n_source = entry.n_source;
  eff.n_target = entry.n_target;
  eff.key_pattern = entry.key_pattern;
  eff.signs = match.signs;
  eff.tuple = match.bound;
  if (entry.macros.empty()) return eff;

  UnifyGraph g;
  auto root = g.import(match.bound);
  std::vector<bool> used(bag.signs.size(), false);
  for (std::size_t s : match.signs) used[s] = true;

  for (const auto& name : entry.macros) {
    const TransferMacro* macro = bilingual.find_macro(name);
    if (!macro) continue;
    UnifyGraph trial = g;
    auto key = *trial.child(root, source_feature(eff.key_pattern));
    auto m = trial.import(macro->tuple);
    if (!trial.unify(*trial.child(m, trigger_feature()), key)) continue;

    std::vector<UnifyGraph::Id> extras;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < macro->n_source; ++i) {
      extras.push_back(*trial.child(m, source_feature(i)));
      order.push_back(i);
    }
    std::vector<std::size_t> chosen(macro->n_source, 0);
    std::optional<UnifyGraph> completed;
    std::vector<std::size_t> completed_signs;
    assign(trial, extras, order, 0, bag, chosen, used, [&](UnifyGraph& done) {
      if (completed) return;
      completed = done;
      completed_signs = chosen;
    });
    if (!completed) continue;

    UnifyGraph& h = *completed;
    for (std::size_t i = 0; i < macro->n_source; ++i)
      h.set_arc(root, source_feature(eff.n_source + i), *h.child(m, source_feature(i)));
    for (std::size_t i = 0; i < macro->n_target; ++i)
      h.set_arc(root, target_feature(eff.n_target + i), *h.child(m, target_feature(i)));
    if (!h.extract(root)) continue;  // would create a cycle
    g = std::move(h);
    eff.n_source += macro->n_source;
    eff.n_target += macro->n_target;
    for (std::size_t s : completed_signs) {
      used[s] = true;
      eff.signs.push_back(s);
    }
    eff.applied.push_back(name);
  }
  eff.tuple = *g.extract(root);
  return eff;
}

std::vector<EffectiveEntry> candidate_matches(const SourceBag& bag,
                                              const BilingualLexicon& bilingual) {
  std::vector<EffectiveEntry> out;
  for (std::size_t e = 0; e < bilingual.entries.size(); ++e) {
    const auto& entry = bilingual.entries[e];
    for (const auto& m : match_entry(entry, e, bag))
      out.push_back(expand_macros(entry, m, bilingual, bag));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t Covering::consumed() const {
  std::size_t n = 0;
  for (const auto& m : matches) n += m.signs.size();
  return n;
}

namespace {

struct RankKey {
  std::size_t passthrough;
  std::vector<std::size_t> sizes;    // descending
  std::vector<std::size_t> entries;  // in match order
  std::vector<std::vector<std::size_t>> signs;
};

RankKey rank_key(const Covering& c) {
  RankKey k;
  k.passthrough = c.passthrough.size();
  for (const auto& m : c.matches) {
    k.sizes.push_back(m.signs.size());
    k.entries.push_back(m.entry);
    k.signs.push_back(m.signs);
  }
  std::sort(k.sizes.begin(), k.sizes.end(), std::greater<>());
  return k;
}

std::size_t first_sign(const EffectiveEntry& m) {
  return *std::min_element(m.signs.begin(), m.signs.end());
}

}  // namespace

bool better_covering(const Covering& a, const Covering& b) {
  RankKey ka = rank_key(a), kb = rank_key(b);
  if (ka.passthrough != kb.passthrough) return ka.passthrough < kb.passthrough;
  if (ka.sizes != kb.sizes) {
    // bigger matches first: compare element-wise, larger wins
    return std::lexicographical_compare(ka.sizes.begin(), ka.sizes.end(), kb.sizes.begin(),
                                        kb.sizes.end(), std::greater<>());
  }
  if (ka.entries != kb.entries) return ka.entries < kb.entries;
  if (ka.signs != kb.signs) return ka.signs < kb.signs;
  return a.passthrough < b.passthrough;
}

std::vector<Covering> cover(const SourceBag& bag, const BilingualLexicon& bilingual, std::size_t k,
                            const CoverOptions& options) {
  const auto candidates = candidate_matches(bag, bilingual);
  const std::size_t n = bag.signs.size();
  std::vector<std::vector<std::size_t>> by_first(n);
  for (std::size_t c = 0; c < candidates.size(); ++c)
    by_first[first_sign(candidates[c])].push_back(c);

  std::vector<Covering> all;
  std::vector<bool> used(n, false);
  std::vector<std::size_t> picked, passthrough;
  std::size_t visited = 0;

  auto search = [&](auto&& self, std::size_t s) -> void {
    if (visited >= options.max_enumerated) return;
    while (s < n && used[s]) ++s;
    if (s == n) {
      ++visited;
      Covering c;
      for (std::size_t p : picked) c.matches.push_back(candidates[p]);
      std::sort(c.matches.begin(), c.matches.end(),
                [](const EffectiveEntry& a, const EffectiveEntry& b) {
                  return first_sign(a) < first_sign(b);
                });
      c.passthrough = passthrough;
      std::sort(c.passthrough.begin(), c.passthrough.end());
      all.push_back(std::move(c));
      return;
    }
    // every sign below s is consumed, so a match containing s starts at s
    for (std::size_t c : by_first[s]) {
      const auto& signs = candidates[c].signs;
      if (std::any_of(signs.begin(), signs.end(), [&](std::size_t x) { return used[x]; })) continue;
      for (std::size_t x : signs) used[x] = true;
      picked.push_back(c);
      self(self, s + 1);
      picked.pop_back();
      for (std::size_t x : signs) used[x] = false;
    }
    used[s] = true;
    passthrough.push_back(s);
    self(self, s + 1);
    passthrough.pop_back();
    used[s] = false;
  };
  search(search, 0);

  std::stable_sort(all.begin(), all.end(), better_covering);
  if (all.size() > k) all.resize(k);
  return all;
}

// ---------------------------------------------------------------------------

namespace {

std::string lemma_list(const std::vector<std::string>& lemmas) {
  std::string out = "[";
  for (std::size_t i = 0; i < lemmas.size(); ++i) out += (i ? " " : "") + lemmas[i];
  return out + "]";
}

}  // namespace

TargetBag instantiate(const Covering& covering, const SourceBag& bag) {
  TargetBag out;
  out.fragments = bag.fragments;
  out.final_punct = bag.final_punct;
  out.interrogative = bag.interrogative;

  // Walk matches and passthrough signs in order of their first source sign.
  struct Item {
    std::size_t first;
    const EffectiveEntry* match;
    std::size_t pass;
  };
  std::vector<Item> items;
  for (const auto& m : covering.matches) items.push_back({first_sign(m), &m, 0});
  for (std::size_t p : covering.passthrough) items.push_back({p, nullptr, p});
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.first < b.first; });

  std::size_t minted = 0;
  const Symbol index = feat::index();
  for (const auto& item : items) {
    if (!item.match) {
      const BagSign& s = bag.signs[item.pass];
      std::string lemma = lemma_of(s.sign);
      TargetSign t;
      t.sign = passthrough_sign(lemma);
      if (auto i = top_atom(s.sign, index))
        t.sign = unify_at(t.sign, std::span<const Symbol>(&index, 1), FeatureStructure::make_atom(*i)).value();
      t.passthrough = true;
      const std::string& shown = s.form.empty() ? lemma : s.form;
      t.display = "[" + (s.proper_name ? capitalize(shown) : shown) + "]";
      t.fragment = s.fragment;
      out.signs.push_back(std::move(t));
      out.trace.push_back("XFER @pass " + lemma);
      continue;
    }
    const EffectiveEntry& m = *item.match;
    UnifyGraph g;
    auto root = g.import(m.tuple);
    for (std::size_t i = 0; i < m.n_target; ++i) {
      auto t = *g.child(root, target_feature(i));
      auto idx = g.walk(t, std::span<const Symbol>(&index, 1), true);
      if (idx && g.kind(*idx) == NodeKind::kVariable)
        g.unify(*idx, g.new_atom(Symbol("t" + std::to_string(++minted))));
    }
    FeatureStructure tuple = *g.extract(root);
    std::vector<std::string> consumed, emitted;
    for (std::size_t s : m.signs) consumed.push_back(lemma_of(bag.signs[s].sign));
    const std::size_t fragment = bag.signs[m.signs[m.key_pattern]].fragment;
    for (std::size_t i = 0; i < m.n_target; ++i) {
      TargetSign t;
      t.sign = *resolve(tuple, std::vector<Symbol>{target_feature(i)});
      t.fragment = fragment;
      emitted.push_back(lemma_of(t.sign));
      out.signs.push_back(std::move(t));
    }
    out.trace.push_back("XFER " + m.name + " consumes " + lemma_list(consumed) + " emits " +
                        lemma_list(emitted));
  }
  return out;
}

std::vector<TargetBag> transfer(const SourceBag& bag, const BilingualLexicon& bilingual,
                                std::size_t k) {
  std::vector<TargetBag> out;
  for (const auto& c : cover(bag, bilingual, k)) out.push_back(instantiate(c, bag));
  return out;
}

}  // namespace snb
