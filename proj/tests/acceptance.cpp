// Acceptance report: one PASS/FAIL line per criterion.

#include <chrono>
#include <iostream>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "snb/sign.hpp"
#include "snb/unify.hpp"
#include "support.hpp"

using namespace snb;

namespace {

struct Report {
  int failed = 0;
  void line(int n, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << n << "  " << what << "\n";
    failed += !ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

bool contains(const std::vector<std::string>& lines, const std::string& line) {
  return std::find(lines.begin(), lines.end(), line) != lines.end();
}

SourceBag bag_of(const std::string& line, const Lingware& lw) {
  return extract_bag(parse(tokenize(line), lw.source_grammar, lw.source_lexicon));
}

void golden(Report& rep, const Lingware& lw) {
  auto report = run_golden(read_file(test::source_path("golden/table3.tsv")), lw);
  std::size_t exact = 0, untranslated = 0;
  for (const auto& o : report.outcomes) (o.row.expect_untranslated ? untranslated : exact) += o.pass;
  double slowest = 0;
  for (const auto& row : test::golden_rows()) {
    auto t = std::chrono::steady_clock::now();
    translate_line(row.source, lw);
    slowest = std::max(slowest, seconds_since(t));
  }
  bool ok = report.ok() && exact >= 12 && untranslated == 3 && slowest < 1.0;
  rep.line(1, ok, "golden table: " + std::to_string(exact) + " exact + " + std::to_string(untranslated) +
                      " untranslated rows pass, slowest sentence " + std::to_string(slowest) + " s");
}

void idioms(Report& rep, const Lingware& lw) {
  TranslateOptions o;
  o.trace = true;
  auto kick = translate_line("he kicked the bucket.", lw, o);
  bool kick_ok = kick.translated && kick.output.find("estir") != std::string::npos &&
                 kick.output.find("pata") != std::string::npos &&
                 kick.output.find("pate") == std::string::npos &&
                 kick.output.find("cubo") == std::string::npos;
  auto put = translate_line("they put up with the noise.", lw, o);
  bool put_ok = put.translated &&
                contains(put.trace, "XFER put-up-with consumes [put up with] emits [aguantar]") &&
                put.output == "aguantan el ruido.";
  rep.line(2, kick_ok && put_ok, "idioms: \"" + kick.output + "\", \"" + put.output + "\"");
}

void port(Report& rep, const Lingware& lw) {
  auto text = oracle::portuguese_dative(read_file(test::source_path("lingware/en-es-toy/bilingual.bl")));
  auto pt = load_bilingual(text);
  bool ok = !text.empty() && pt.ok();
  std::string removed;
  if (ok) {
    auto bag = bag_of("i tell the woman the truth.", lw);
    std::size_t e = 0;
    while (e < lw.bilingual.entries.size() && lw.bilingual.entries[e].name != "tell") ++e;
    auto ma = match_entry(lw.bilingual.entries[e], e, bag);
    auto mb = match_entry(pt.value.entries[e], e, bag);
    ok = ma.size() == 1 && mb.size() == 1;
    if (ok) {
      auto a = expand_macros(lw.bilingual.entries[e], ma[0], lw.bilingual, bag);
      auto b = expand_macros(pt.value.entries[e], mb[0], pt.value, bag);
      ok = a.n_source == b.n_source && a.signs == b.signs && a.n_target == b.n_target + 1;
      for (std::size_t i = 0; ok && i < a.n_source; ++i) ok = a.source(i) == b.source(i);
      std::size_t j = 0;
      for (std::size_t i = 0; ok && i < a.n_target; ++i) {
        if (j < b.n_target && a.target(i) == b.target(j)) ++j;
        else removed += lemma_of(a.target(i));
      }
      ok = ok && j == b.n_target && removed == "le";
    }
  }
  auto es = translate_line("i tell the woman the truth.", lw);
  ok = ok && es.output == "le digo la verdad a la mujer.";
  rep.line(3, ok, "dative macro: \"" + es.output + "\"; Portuguese-style macro removes only target '" +
                      removed + "'");
}

void unification(Report& rep) {
  std::mt19937 rng(20240611);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    auto a = oracle::random_fs(rng), b = oracle::random_fs(rng), c = oracle::random_fs(rng);
    bool ok = true;
    auto aa = unify(a, a);
    ok = ok && aa && *aa == a;
    auto ab = unify(a, b), ba = unify(b, a);
    auto model = oracle::unify_models(a, b);
    ok = ok && bool(ab) == bool(ba) && bool(ab) == model.has_value();
    if (ok && ab) ok = *ab == *ba && oracle::model_of(*ab) == *model && subsumes(a, *ab) && subsumes(b, *ab);
    auto bc = unify(b, c);
    auto left = ab ? unify(*ab, c) : Unified(UnifyFailure{});
    auto right = bc ? unify(a, *bc) : Unified(UnifyFailure{});
    ok = ok && bool(left) == bool(right) && (!left || *left == *right);
    ok = ok && subsumes(a, b) == oracle::model_subsumes(a, b);
    if (ok && subsumes(a, b)) ok = ab && *ab == b && (!subsumes(b, a) || a == b);
    auto [x, y] = oracle::cyclic_pair(rng);
    auto cyc = unify(x, y);
    ok = ok && !cyc && cyc.failure().reason == UnifyFailure::Reason::kCycle;
    bad += !ok;
  }
  rep.line(4, bad == 0, "unification properties: " + std::to_string(1000 - bad) + "/1000 cases");
}

void generation(Report& rep, const Lingware& lw) {
  std::mt19937 rng(1995);
  auto bags = oracle::sample_bags(lw, test::toy_manifest().translate, rng, 200, 6);
  auto t = std::chrono::steady_clock::now();
  std::vector<int> same(bags.size());
  const auto n = static_cast<std::ptrdiff_t>(bags.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    same[i] = oracle::texts(generate(bags[i], lw.target_grammar)) ==
              oracle::permutation_texts(bags[i], lw.target_grammar);
  double s = seconds_since(t);
  int equal = std::accumulate(same.begin(), same.end(), 0);
  rep.line(5, equal == 200 && s < 60.0,
           "generation oracle: " + std::to_string(equal) + "/200 bags equal, " + std::to_string(s) + " s");
}

void swaps(Report& rep, const Lingware& lw) {
  std::size_t pairs = 0, violations = 0, sentences = 0;
  bool round_trip = true;
  std::vector<std::string> lines = test::toy_manifest().translate;
  for (const auto& row : test::golden_rows())
    if (!row.expect_untranslated) lines.push_back(row.source);
  for (const auto& line : lines) {
    auto c = oracle::check_swaps(line, lw);
    pairs += c.pairs;
    violations += c.violations;
    round_trip = round_trip && c.round_trip;
    sentences += c.pairs > 0;
  }
  rep.line(6, violations == 0 && round_trip && pairs > 0,
           "swap prevention: " + std::to_string(pairs) + " same-category pairs in " +
               std::to_string(sentences) + " sentences, " + std::to_string(violations) + " swapped");
}

void parsing(Report& rep, const Lingware& lw) {
  std::mt19937 rng(7);
  int equal = 0, partitions = 0, total = 0;
  std::vector<std::string> inputs;
  for (int i = 0; i < 100; ++i) inputs.push_back(oracle::random_sentence(rng, lw.source_lexicon, 6));
  for (const char* s : {"zork blah quux.", "petechia", "mj uh-huh mm-hmm."}) inputs.push_back(s);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto r = parse(tokenize(inputs[i]), lw.source_grammar, lw.source_lexicon);
    if (i < 100) equal += oracle::keys(r) == oracle::keys(oracle::enumerate(r.lattice, r.barrier, lw.source_grammar));
    partitions += oracle::valid_partition(r, lw.source_grammar);
    ++total;
  }
  rep.line(7, equal == 100 && partitions == total,
           "parser oracle: " + std::to_string(equal) + "/100 charts equal, " + std::to_string(partitions) +
               "/" + std::to_string(total) + " valid fragment partitions");
}

void stats(Report& rep) {
  auto s = corpus_stats(split_lines(read_file(test::source_path("tests/data/synthetic_corpus.txt")))).str();
  rep.line(8, s.find("mean=5.7 le7=0.80 le10=0.90") != std::string::npos, "stats: " + s);
}

void accuracy(Report& rep, int failed_before) {
  auto readme = read_file(test::source_path("README.md"));
  bool documented = readme.find("not reproducible") != std::string::npos;
  rep.line(9, documented && failed_before == 0,
           "published accuracy figures not reproduced (needs the original lexicons and human judges); "
           "substitute criteria 1-7 " + std::string(failed_before == 0 ? "pass" : "fail"));
}

}  // namespace

int main() {
  const auto& lw = test::toy();
  Report rep;
  golden(rep, lw);
  idioms(rep, lw);
  port(rep, lw);
  unification(rep);
  generation(rep, lw);
  swaps(rep, lw);
  parsing(rep, lw);
  const int failed_1_to_7 = rep.failed;
  stats(rep);
  accuracy(rep, failed_1_to_7);
  return rep.failed == 0 ? 0 : 1;
}
