#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "snb/sexpr.hpp"
#include "snb/unify.hpp"

using namespace snb;

namespace {

FeatureStructure fs(const char* text) { return parse_fs(text); }

}  // namespace

TEST_CASE("canonical printing tags shared nodes in order of first occurrence") {
  CHECK(fs("(b ?1 x) (a ?1)").str() == "(a ?1 x) (b ?1)");
  CHECK(fs("(a (c ?2)) (b ?2)").str() == "(a (c ?1)) (b ?1)");
  CHECK(fs("(a x) (b x)").str() == "(a x) (b x)");
  CHECK(fs("()").str() == "()");
  CHECK(fs("(a ())").str() == "(a ())");
}

TEST_CASE("equality ignores variable names and arc order") {
  CHECK(fs("(a ?p) (b ?p)") == fs("(b ?q) (a ?q)"));
  CHECK_FALSE(fs("(a ?p) (b ?p)") == fs("(a ?p) (b ?q)"));
  CHECK(fresh_variant(fs("(a ?p) (b (c ?p))")) == fs("(a ?z) (b (c ?z))"));
}

TEST_CASE("unification merges information and keeps coreference") {
  auto u = unify(fs("(a ?1) (b ?1)"), fs("(a x) (c y)"));
  REQUIRE(u);
  CHECK(u->str() == "(a ?1 x) (b ?1) (c y)");
  CHECK(u->atom_at("b") == Symbol("x"));
}

TEST_CASE("clashes report the path") {
  auto atom = unify(fs("(a (b x))"), fs("(a (b y))"));
  REQUIRE_FALSE(atom);
  CHECK(atom.failure().reason == UnifyFailure::Reason::kAtomClash);
  CHECK(path_to_string(atom.failure().path) == "a.b");

  auto kind = unify(fs("(a (b x))"), fs("(a y)"));
  REQUIRE_FALSE(kind);
  CHECK(kind.failure().reason == UnifyFailure::Reason::kKindClash);
  CHECK(path_to_string(kind.failure().path) == "a");
}

TEST_CASE("occurs check rejects cyclic results") {
  auto u = unify(fs("(f ?1) (g ?1)"), fs("(f (h ?1)) (g ?1)"));
  REQUIRE_FALSE(u);
  CHECK(u.failure().reason == UnifyFailure::Reason::kCycle);
}

TEST_CASE("path helpers create missing structure") {
  auto p = unify_paths(fs("(a x)"), make_path("b.c"), make_path("a"));
  REQUIRE(p);
  CHECK(p->str() == "(a ?1 x) (b (c ?1))");
  auto at = unify_at(fs("()"), make_path("d.e"), FeatureStructure::make_atom("z"));
  REQUIRE(at);
  CHECK(at->atom_at("d.e") == Symbol("z"));
  CHECK(resolve(*at, make_path("d"))->str() == "(e z)");
  CHECK_FALSE(resolve(*at, make_path("q")));
}

TEST_CASE("lists round-trip through first/rest") {
  std::vector<FeatureStructure> items{fs("(a x)"), fs("(b y)"), FeatureStructure::make_atom("z")};
  auto list = make_list(items);
  auto back = list_items(list);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < items.size(); ++i) CHECK(back[i] == items[i]);
  CHECK(list_items(make_list(std::vector<FeatureStructure>{})).empty());
}

TEST_CASE("subsumption orders by information") {
  CHECK(subsumes(fs("()"), fs("(a x)")));
  CHECK(subsumes(fs("(a ?1) (b ?2)"), fs("(a ?1) (b ?1)")));
  CHECK_FALSE(subsumes(fs("(a ?1) (b ?1)"), fs("(a ?1) (b ?2)")));
  CHECK_FALSE(subsumes(fs("(a x)"), fs("(a y)")));
  CHECK(subsumes(FeatureStructure::make_variable(), FeatureStructure::make_atom("x")));
}

TEST_CASE("reader rejects malformed input") {
  CHECK_THROWS_AS(parse_fs("(a x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fs("(a x) (a y)"), std::invalid_argument);
}

TEST_CASE("random structures agree with the path-constraint oracle") {
  std::mt19937 rng(20240611);
  int unified = 0;
  for (int i = 0; i < 1000; ++i) {
    auto a = oracle::random_fs(rng);
    auto b = oracle::random_fs(rng);
    auto c = oracle::random_fs(rng);
    CAPTURE(a.str());
    CAPTURE(b.str());
    CAPTURE(c.str());

    auto aa = unify(a, a);
    REQUIRE(aa);
    CHECK(*aa == a);

    auto ab = unify(a, b);
    auto ba = unify(b, a);
    auto expected = oracle::unify_models(a, b);
    REQUIRE(bool(ab) == expected.has_value());
    REQUIRE(bool(ab) == bool(ba));
    if (ab) {
      ++unified;
      CHECK(*ab == *ba);
      CHECK(oracle::model_of(*ab) == *expected);
      CHECK(subsumes(a, *ab));
      CHECK(subsumes(b, *ab));
    }

    auto bc = unify(b, c);
    auto left = ab ? unify(*ab, c) : Unified(UnifyFailure{});
    auto right = bc ? unify(a, *bc) : Unified(UnifyFailure{});
    REQUIRE(bool(left) == bool(right));
    if (left) CHECK(*left == *right);

    CHECK(subsumes(a, a));
    CHECK(subsumes(a, b) == oracle::model_subsumes(a, b));
    if (subsumes(a, b)) {
      REQUIRE(ab);
      CHECK(*ab == b);
      if (subsumes(b, a)) CHECK(a == b);
    }

    auto [x, y] = oracle::cyclic_pair(rng);
    auto cyc = unify(x, y);
    REQUIRE_FALSE(cyc);
    CHECK(cyc.failure().reason == UnifyFailure::Reason::kCycle);
    CHECK_FALSE(oracle::unify_models(x, y));
  }
  CHECK(unified >= 200);
}
