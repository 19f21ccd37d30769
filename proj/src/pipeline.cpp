#include "snb/pipeline.hpp"

#include <omp.h>

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace snb {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kNone: return "none";
    case Stage::kParse: return "parse";
    case Stage::kTransfer: return "transfer";
    case Stage::kGenerate: return "generate";
  }
  return "?";
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

TranslationResult fail(TranslationResult r, Stage stage, std::string reason) {
  r.translated = false;
  r.failed = stage;
  r.reason = std::move(reason);
  r.output = std::string("<untranslated:") + stage_name(stage) + ">";
  return r;
}

// Realization of each fragment, or the reason one of them failed.
struct Attempt {
  bool ok = false;
  std::vector<std::string> parts;
  std::string reason;
  std::vector<std::string> trace;
};

Attempt generate_fragments(const TargetBag& bag, const Lingware& lw, const TranslateOptions& o) {
  Attempt a;
  for (std::size_t f = 0; f < bag.fragments; ++f) {
    std::vector<TargetSign> signs;
    for (const auto& s : bag.signs)
      if (s.fragment == f) signs.push_back(s);
    if (signs.empty()) continue;  // everything in it was deleted by transfer
    auto cands = instantiate_targets(signs, lw.target_lexicon);
    if (cands.gap) {
      a.reason = "generation gap: no target entry for lemma '" + cands.gap->lemma + "'";
      return a;
    }
    auto gen = generate(cands.positions, lw.target_grammar, o.limits);
    if (o.trace) a.trace.insert(a.trace.end(), gen.trace.begin(), gen.trace.end());
    if (!gen.ok()) {
      a.reason = gen_error_name(gen.error);
      return a;
    }
    a.parts.push_back(gen.realizations.front().text);
  }
  a.ok = true;
  return a;
}

}  // namespace

TranslationResult translate_line(std::string_view line, const Lingware& lw,
                                 const TranslateOptions& o) {
  TranslationResult r;
  auto t0 = std::chrono::steady_clock::now();
  auto tokens = tokenize(line);
  auto parsed = parse(tokens, lw.source_grammar, lw.source_lexicon);
  if (o.trace) {
    auto lines = edge_trace(parsed);
    r.trace.insert(r.trace.end(), lines.begin(), lines.end());
  }
  r.times.parse_ms = ms_since(t0);
  if (parsed.words() == 0) return fail(std::move(r), Stage::kParse, "no words");
  auto bag = extract_bag(parsed);

  auto t1 = std::chrono::steady_clock::now();
  auto targets = transfer(bag, lw.bilingual, o.coverings);
  r.times.transfer_ms = ms_since(t1);
  bool any_signs = false;
  for (const auto& tb : targets) any_signs = any_signs || !tb.signs.empty();
  if (!any_signs) return fail(std::move(r), Stage::kTransfer, "every sign was deleted");

  auto t2 = std::chrono::steady_clock::now();
  std::string first_reason;
  for (const auto& tb : targets) {
    if (o.trace) r.trace.insert(r.trace.end(), tb.trace.begin(), tb.trace.end());
    if (tb.signs.empty()) continue;
    auto attempt = generate_fragments(tb, lw, o);
    if (o.trace) r.trace.insert(r.trace.end(), attempt.trace.begin(), attempt.trace.end());
    if (!attempt.ok) {
      if (first_reason.empty()) first_reason = attempt.reason;
      continue;
    }
    std::string out;
    if (tb.interrogative && lw.policy.inverted_question) out += lw.policy.inverted_question_mark;
    for (std::size_t i = 0; i < attempt.parts.size(); ++i) out += (i ? ", " : "") + attempt.parts[i];
    out += tb.final_punct;
    r.times.generate_ms = ms_since(t2);
    r.translated = true;
    r.output = std::move(out);
    r.best_failure = first_reason;
    return r;
  }
  r.times.generate_ms = ms_since(t2);
  return fail(std::move(r), Stage::kGenerate, first_reason.empty() ? "no covering" : first_reason);
}

std::vector<TranslationResult> translate_batch(const std::vector<std::string>& lines,
                                               const Lingware& lw, const TranslateOptions& o) {
  std::vector<TranslationResult> out(lines.size());
  const auto n = static_cast<std::ptrdiff_t>(lines.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = translate_line(lines[i], lw, o);
  return out;
}

std::vector<TranslationResult> translate_batch_serial(const std::vector<std::string>& lines,
                                                      const Lingware& lw,
                                                      const TranslateOptions& o) {
  std::vector<TranslationResult> out;
  out.reserve(lines.size());
  for (const auto& line : lines) out.push_back(translate_line(line, lw, o));
  return out;
}

// ---------------------------------------------------------------------------

std::string format_ratio(std::size_t num, std::size_t den, int digits) {
  std::size_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  std::size_t scaled = (2 * num * scale + den) / (2 * den);  // round half up
  std::string frac = std::to_string(scaled % scale);
  while (static_cast<int>(frac.size()) < digits) frac = "0" + frac;
  std::string out = std::to_string(scaled / scale);
  if (digits > 0) out += "." + frac;
  return out;
}

std::string CorpusStats::str() const {
  return "sentences=" + std::to_string(sentences) + " mean=" + format_ratio(words, sentences, 1) +
         " le7=" + format_ratio(le7, sentences, 2) + " le10=" + format_ratio(le10, sentences, 2);
}

CorpusStats corpus_stats(const std::vector<std::string>& lines) {
  CorpusStats s;
  for (const auto& line : lines) {
    std::istringstream in(line);
    std::string tok;
    std::size_t words = 0;
    bool any = false;
    while (in >> tok) {
      any = true;
      bool word = false;
      for (unsigned char c : tok) word = word || !std::ispunct(c);
      if (word) ++words;
    }
    if (!any) continue;
    ++s.sentences;
    s.words += words;
    if (words <= 7) ++s.le7;
    if (words <= 10) ++s.le10;
  }
  if (s.sentences == 0) throw std::invalid_argument("empty corpus");
  return s;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(start, nl - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
    start = nl + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<GoldenRow> read_golden(std::string_view text, std::vector<Diagnostic>& diags,
                                   std::string_view file) {
  std::vector<GoldenRow> rows;
  int n = 0;
  for (const auto& line : split_lines(text)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 3) {
      diags.push_back({std::string(file), n, "expected 3 tab-separated columns"});
      continue;
    }
    GoldenRow row{n, cols[0], cols[1], false};
    if (cols[2] == "untranslated") {
      row.expect_untranslated = true;
    } else if (cols[2] != "exact") {
      diags.push_back({std::string(file), n, "expectation must be exact or untranslated"});
      continue;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

GoldenReport run_golden(std::string_view text, const Lingware& lw, const TranslateOptions& o,
                        std::string_view file) {
  GoldenReport report;
  auto rows = read_golden(text, report.diagnostics, file);
  std::vector<std::string> sources;
  for (const auto& r : rows) sources.push_back(r.source);
  auto results = translate_batch(sources, lw, o);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    GoldenOutcome g{rows[i], results[i].output, false};
    g.pass = rows[i].expect_untranslated ? !results[i].translated
                                         : results[i].translated && results[i].output == rows[i].expected;
    (g.pass ? report.passed : report.failed)++;
    report.outcomes.push_back(std::move(g));
  }
  return report;
}

std::string GoldenReport::str() const {
  std::string out;
  for (const auto& d : diagnostics) out += d.str() + "\n";
  for (const auto& g : outcomes) {
    out += g.pass ? "PASS  " : "FAIL  ";
    out += g.row.source + "  =>  " + g.actual;
    if (!g.pass)
      out += "  (expected " + (g.row.expect_untranslated ? std::string("untranslated") : g.row.expected) + ")";
    out += "\n";
  }
  out += std::to_string(outcomes.size()) + " rows, " + std::to_string(passed) + " passed, " +
         std::to_string(failed) + " failed\n";
  return out;
}

// ---------------------------------------------------------------------------

Manifest load_manifest(std::string_view text, std::vector<Diagnostic>& diags, std::string_view file) {
  Manifest m;
  int n = 0;
  for (const auto& raw : split_lines(text)) {
    ++n;
    std::string line = raw;
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      diags.push_back({std::string(file), n, "expected 'key: value'"});
      continue;
    }
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    if (key == "translate") m.translate.push_back(value);
    else if (key == "untranslatable") m.untranslatable.push_back(value);
    else if (key == "passthrough") m.passthrough.push_back(value);
    else diags.push_back({std::string(file), n, "unknown manifest key '" + key + "'"});
  }
  return m;
}

std::vector<Diagnostic> validate_lingware(const std::filesystem::path& dir) {
  auto loaded = load_lingware(dir);
  std::vector<Diagnostic> diags = std::move(loaded.diagnostics);
  const auto manifest_path = dir / "manifest.cfg";
  if (!std::filesystem::exists(manifest_path)) return diags;
  auto manifest = load_manifest(read_file(manifest_path), diags, manifest_path.string());
  if (!diags.empty()) return diags;

  const Lingware& lw = loaded.value;
  const std::set<std::string> absent(manifest.passthrough.begin(), manifest.passthrough.end());
  auto check_words = [&](const std::string& sentence) {
    for (const auto& t : tokenize(sentence)) {
      if (t.kind != Token::Kind::kWord) continue;
      bool known = !lw.source_lexicon.by_form(t.text).empty();
      if (!known && !absent.count(t.text))
        diags.push_back({manifest_path.string(), 0,
                         "\"" + sentence + "\": word '" + t.text + "' missing from source lexicon"});
    }
  };
  for (const auto& s : manifest.translate) {
    check_words(s);
    auto r = translate_line(s, lw);
    if (!r.translated)
      diags.push_back({manifest_path.string(), 0,
                       "\"" + s + "\" does not translate (" + stage_name(r.failed) + ": " + r.reason + ")"});
    else if (!r.best_failure.empty())
      diags.push_back({manifest_path.string(), 0,
                       "\"" + s + "\" does not translate with its best covering (" + r.best_failure +
                           "), falls back to \"" + r.output + "\""});
  }
  for (const auto& s : manifest.untranslatable) {
    check_words(s);
    auto r = translate_line(s, lw);
    if (r.translated)
      diags.push_back({manifest_path.string(), 0,
                       "\"" + s + "\" is declared untranslatable but gives \"" + r.output + "\""});
  }
  return diags;
}

}  // namespace snb
