#include <chrono>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "snb/sexpr.hpp"
#include "snb/sign.hpp"
#include "support.hpp"

using namespace snb;

namespace {

TargetSign target(const char* text) { return TargetSign{parse_fs(text)}; }

TargetCandidates cands(std::vector<TargetSign> signs) {
  return instantiate_targets(signs, test::toy().target_lexicon);
}

std::vector<TargetSign> ligature_bag() {
  return {target("(lemma ver) (cat v) (index e) (arg1 x) (arg2 m) (tense pres)"),
          target("(lemma yo) (cat pro) (index x)"),
          target("(lemma marca) (cat n) (index m) (agr (num pl))"),
          target("(lemma el) (cat det) (arg1 m)"),
          target("(lemma de) (cat p) (arg1 m) (arg2 l)"),
          target("(lemma ligadura) (cat n) (index l) (agr (num sg))"),
          target("(lemma el) (cat det) (arg1 l)")};
}

}  // namespace

TEST_CASE("candidates come from unifying lexicon entries") {
  auto c = cands({target("(lemma yo) (cat pro) (index x)"), target("(lemma bueno) (arg1 x)")});
  REQUIRE_FALSE(c.gap);
  REQUIRE(c.positions[0].size() == 1);
  CHECK(c.positions[0][0].words.empty());
  CHECK(c.positions[1].size() == 4);

  auto agreeing = cands({target("(lemma marca) (agr (num pl))")});
  REQUIRE(agreeing.positions[0].size() == 1);
  CHECK(agreeing.positions[0][0].words == std::vector<std::string>{"marcas"});

  auto gap = cands({target("(lemma hola)"), target("(lemma embolsar) (cat v)")});
  REQUIRE(gap.gap);
  CHECK(gap.gap->position == 1);
  CHECK(gap.gap->lemma == "embolsar");

  TargetSign pass{passthrough_sign("mj"), true, "[mj]"};
  auto p = instantiate_targets({pass}, test::toy().target_lexicon);
  REQUIRE(p.positions[0].size() == 1);
  CHECK(p.positions[0][0].words == std::vector<std::string>{"[mj]"});
}

TEST_CASE("small bags generate in target order") {
  const auto& g = test::toy().target_grammar;
  auto dias = generate(cands({target("(lemma bueno) (cat adj) (arg1 i1)"),
                              target("(lemma día) (cat n) (index i1) (agr (num pl))")})
                           .positions,
                       g);
  REQUIRE(dias.ok());
  CHECK(dias.realizations.front().text == "buenos días");

  auto hola = generate(cands({target("(lemma hola) (cat intj)")}).positions, g);
  REQUIRE(hola.ok());
  CHECK(hola.realizations.front().text == "hola");
  CHECK(hola.trace == std::vector<std::string>{"GEN 1 intj \"hola\""});

  auto lig = generate(cands(ligature_bag()).positions, g);
  REQUIRE(lig.ok());
  CHECK(lig.realizations.front().text == "veo las marcas de la ligadura");
}

TEST_CASE("generation limits") {
  const auto& g = test::toy().target_grammar;
  auto bag = cands(ligature_bag()).positions;

  GenLimits small;
  small.max_bag = 3;
  CHECK(generate(bag, g, small).error == GenError::kBagTooLarge);

  GenLimits few;
  few.max_edges = 10;
  CHECK(generate(bag, g, few).error == GenError::kEdgeCap);

  GenLimits hurry;
  hurry.timeout = std::chrono::milliseconds(0);
  CHECK(generate(bag, g, hurry).error == GenError::kTimeout);

  auto stuck = generate(cands({target("(lemma el) (cat det)"), target("(lemma hola)")}).positions, g);
  CHECK(stuck.error == GenError::kFailure);
  CHECK(std::string(gen_error_name(stuck.error)) == "gen-failure");
}

TEST_CASE("ranking prefers fewer words then text") {
  std::vector<Realization> rs(4);
  rs[0].words = {"b", "c"};
  rs[1].words = {"a"};
  rs[2].words = {"a", "c"};
  rs[3].words = {"a"};
  for (auto& r : rs)
    for (std::size_t i = 0; i < r.words.size(); ++i) r.text += (i ? " " : "") + r.words[i];
  auto ranked = rank_realizations(rs);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].text == "a");
  CHECK(ranked[1].text == "a c");
  CHECK(ranked[2].text == "b c");
}

TEST_CASE("generator equals permutation and parse on 200 bags") {
  const auto& lw = test::toy();
  std::mt19937 rng(1995);
  auto bags = oracle::sample_bags(lw, test::toy_manifest().translate, rng, 200, 6);
  REQUIRE(bags.size() == 200);

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::set<std::string>> got(bags.size()), want(bags.size());
  std::vector<int> errors(bags.size());
  const auto n = static_cast<std::ptrdiff_t>(bags.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto gen = generate(bags[i], lw.target_grammar);
    errors[i] = static_cast<int>(gen.error);
    got[i] = oracle::texts(gen);
    want[i] = oracle::permutation_texts(bags[i], lw.target_grammar);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::size_t nonempty = 0;
  for (std::size_t i = 0; i < bags.size(); ++i) {
    CAPTURE(i);
    CHECK((errors[i] == 0 || errors[i] == static_cast<int>(GenError::kFailure)));
    CHECK(got[i] == want[i]);
    nonempty += !want[i].empty();
  }
  MESSAGE(nonempty << " of 200 bags realizable; " << seconds << " s");
  CHECK(nonempty >= 40);
  CHECK(seconds < 60.0);
}
