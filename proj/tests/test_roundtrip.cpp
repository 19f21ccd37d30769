#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace snb;

namespace {

std::vector<std::string> sentences() {
  auto m = test::toy_manifest().translate;
  for (const auto& row : test::golden_rows())
    if (!row.expect_untranslated) m.push_back(row.source);
  return m;
}

}  // namespace

TEST_CASE("realizations re-parse to the dependencies they were generated from") {
  const auto& lw = test::toy();
  for (const auto& line : sentences()) {
    CAPTURE(line);
    auto parts = oracle::realize(line, lw);
    REQUIRE_FALSE(parts.empty());
    for (const auto& part : parts) {
      auto analyses = oracle::reparse_triples(oracle::surface_slots(part.best, part.cands), lw);
      REQUIRE_FALSE(analyses.empty());
      CHECK(oracle::covered(analyses, oracle::triples(part.signs())));
    }
  }
}

TEST_CASE("same-category signs are never swapped") {
  const auto& lw = test::toy();
  std::size_t pairs = 0;
  for (const auto& line : sentences()) {
    CAPTURE(line);
    auto c = oracle::check_swaps(line, lw);
    CHECK(c.round_trip);
    CHECK(c.violations == 0);
    pairs += c.pairs;
  }
  CHECK(pairs >= 3);
}

TEST_CASE("swapped roles are detectable") {
  const auto& lw = test::toy();
  auto parts = oracle::realize("the woman sees the truth.", lw);
  REQUIRE(parts.size() == 1);
  auto analyses = oracle::reparse_triples(oracle::surface_slots(parts[0].best, parts[0].cands), lw);
  CHECK(oracle::covered(analyses, {{"ver", "arg1", "mujer"}, {"ver", "arg2", "verdad"}}));
  CHECK_FALSE(oracle::covered(analyses, {{"ver", "arg1", "verdad"}, {"ver", "arg2", "mujer"}}));
  auto swapped = oracle::reparse_triples({"la", "verdad", "ve", "la", "mujer"}, lw);
  CHECK(oracle::covered(swapped, {{"ver", "arg1", "verdad"}, {"ver", "arg2", "mujer"}}));
}

TEST_CASE("target grammar accepts every expected output") {
  const auto& lw = test::toy();
  for (const auto& row : test::golden_rows()) {
    if (row.expect_untranslated) continue;
    CAPTURE(row.expected);
    CHECK(oracle::target_accepts(row.expected, lw));
  }
  for (const auto& line : test::toy_manifest().translate) {
    auto r = translate_line(line, lw);
    CAPTURE(r.output);
    CHECK(oracle::target_accepts(r.output, lw));
  }
}

TEST_CASE("target grammar rejects disagreement and wrong order") {
  const auto& lw = test::toy();
  for (const char* bad : {"buenos día.", "las marca.", "alocado bastante.", "días buenos.",
                          "la verdad ve la mujer la.", "veo.", "digo la verdad a la mujer."}) {
    CAPTURE(bad);
    CHECK_FALSE(oracle::target_accepts(bad, lw));
  }
}
