#include <numeric>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace snb;

namespace {

// Word counts straight from the definition: whitespace tokens with at least
// one non-punctuation byte.
std::vector<std::size_t> lengths(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream toks(line);
    std::string t;
    std::size_t n = 0, any = 0;
    while (toks >> t) {
      ++any;
      if (std::any_of(t.begin(), t.end(), [](unsigned char c) { return !std::ispunct(c); })) ++n;
    }
    if (any) out.push_back(n);
  }
  return out;
}

// Decimal of num/den to `digits` places, half up, by long division.
std::string decimal(std::size_t num, std::size_t den, int digits) {
  std::string out = std::to_string(num / den);
  std::size_t rem = num % den;
  std::string frac;
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    frac += static_cast<char>('0' + rem / den);
    rem %= den;
  }
  if (2 * rem >= den) {
    int i = digits - 1;
    while (i >= 0 && frac[i] == '9') frac[i--] = '0';
    if (i >= 0) ++frac[i];
    else out = std::to_string(std::stoul(out) + 1);
  }
  return digits ? out + "." + frac : out;
}

}  // namespace

TEST_CASE("golden table passes exactly and quickly") {
  const auto& lw = test::toy();
  auto text = read_file(test::source_path("golden/table3.tsv"));
  auto report = run_golden(text, lw);
  MESSAGE(report.str());
  CHECK(report.ok());

  std::size_t exact = 0, untranslated = 0;
  std::map<std::string, std::string> expected;
  for (const auto& o : report.outcomes) {
    (o.row.expect_untranslated ? untranslated : exact)++;
    expected[o.row.source] = o.row.expected;
  }
  CHECK(exact >= 12);
  CHECK(untranslated == 3);
  CHECK(expected["morning."] == "buenos días.");
  CHECK(expected["hi."] == "hola.");
  CHECK(expected["how you doing?"] == "\xc5\xbcqué tal está?");
  CHECK(expected["yes, madam."] == "sí, señora.");
  CHECK(expected["thanks, bill."] == "gracias, [Bill].");
  CHECK(expected["petechia."] == "[petechia].");

  for (const auto& row : test::golden_rows()) {
    auto r = translate_line(row.source, lw);
    double ms = r.times.parse_ms + r.times.transfer_ms + r.times.generate_ms;
    CAPTURE(row.source);
    CHECK(ms < 1000.0);
  }
}

TEST_CASE("failures name the stage") {
  const auto& lw = test::toy();
  auto gap = translate_line("bag all the stuff on the bedside table?", lw);
  CHECK_FALSE(gap.translated);
  CHECK(gap.output == "<untranslated:generate>");
  CHECK(gap.reason.find("embolsar") != std::string::npos);

  auto empty = translate_line("...", lw);
  CHECK(empty.output == "<untranslated:parse>");

  auto unmatched = translate_line("am.", lw);
  CHECK(unmatched.translated);
  CHECK(unmatched.output == "[am].");
}

TEST_CASE("inverted question mark follows the policy") {
  Lingware lw = test::toy();
  CHECK(translate_line("how you doing?", lw).output == "\xc5\xbcqué tal está?");
  lw.policy.inverted_question = false;
  CHECK(translate_line("how you doing?", lw).output == "qué tal está?");
}

TEST_CASE("parallel batch equals the serial reference") {
  const auto& lw = test::toy();
  std::vector<std::string> lines;
  for (int rep = 0; rep < 3; ++rep)
    for (const auto& row : test::golden_rows()) lines.push_back(row.source);
  auto par = translate_batch(lines, lw);
  auto ser = translate_batch_serial(lines, lw);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].output == ser[i].output);
    CHECK(par[i].failed == ser[i].failed);
  }
}

TEST_CASE("corpus statistics on the synthetic corpus") {
  auto text = read_file(test::source_path("tests/data/synthetic_corpus.txt"));
  auto lens = lengths(text);
  REQUIRE(lens.size() == 10);
  std::size_t total = std::accumulate(lens.begin(), lens.end(), std::size_t{0});
  std::size_t le7 = std::count_if(lens.begin(), lens.end(), [](std::size_t n) { return n <= 7; });
  std::size_t le10 = std::count_if(lens.begin(), lens.end(), [](std::size_t n) { return n <= 10; });
  std::string want = "sentences=10 mean=" + decimal(total, lens.size(), 1) +
                     " le7=" + decimal(le7, lens.size(), 2) + " le10=" + decimal(le10, lens.size(), 2);

  auto stats = corpus_stats(split_lines(text));
  CHECK(stats.str() == want);
  CHECK(stats.str().find("mean=5.7 le7=0.80 le10=0.90") != std::string::npos);
}

TEST_CASE("ratios round half up exactly") {
  CHECK(format_ratio(1, 8, 2) == decimal(1, 8, 2));
  CHECK(format_ratio(1, 8, 2) == "0.13");
  CHECK(format_ratio(1, 20, 1) == "0.1");
  CHECK(format_ratio(19, 20, 1) == "1.0");
  CHECK(format_ratio(2, 3, 2) == "0.67");
  for (std::size_t den = 1; den < 40; ++den)
    for (std::size_t num = 0; num < 3 * den; ++num)
      for (int d = 0; d < 4; ++d) CHECK(format_ratio(num, den, d) == decimal(num, den, d));
  CHECK_THROWS_AS(corpus_stats({"", "   "}), std::invalid_argument);
}

TEST_CASE("golden file diagnostics") {
  std::vector<Diagnostic> diags;
  auto rows = read_golden("# header\na\tb\texact\nonly two\tcols\nx\ty\tmaybe\n", diags, "g.tsv");
  CHECK(rows.size() == 1);
  REQUIRE(diags.size() == 2);
  CHECK(diags[0].str().find("g.tsv") != std::string::npos);
  CHECK(diags[0].line == 3);
  CHECK(diags[1].line == 4);
}
