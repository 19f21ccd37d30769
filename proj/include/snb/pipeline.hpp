#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "snb/generator.hpp"
#include "snb/lingware.hpp"
#include "snb/parser.hpp"
#include "snb/transfer.hpp"

namespace snb {

struct TranslateOptions {
  std::size_t coverings = 8;
  GenLimits limits;
  bool trace = false;
};

enum class Stage { kNone, kParse, kTransfer, kGenerate };
const char* stage_name(Stage s);

struct StageTimes {
  double parse_ms = 0;
  double transfer_ms = 0;
  double generate_ms = 0;
};

struct TranslationResult {
  bool translated = false;
  std::string output;  // translation, or "<untranslated:stage>"
  Stage failed = Stage::kNone;
  std::string reason;
  std::string best_failure;  // set when a lower-ranked covering produced the output
  std::vector<std::string> trace;
  StageTimes times;
};

TranslationResult translate_line(std::string_view line, const Lingware& lw,
                                 const TranslateOptions& options = {});

/// Parallel over lines; output order follows input order.
std::vector<TranslationResult> translate_batch(const std::vector<std::string>& lines,
                                               const Lingware& lw,
                                               const TranslateOptions& options = {});
/// Same results, one line after another.
std::vector<TranslationResult> translate_batch_serial(const std::vector<std::string>& lines,
                                                      const Lingware& lw,
                                                      const TranslateOptions& options = {});

// ---------------------------------------------------------------------------

struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t le7 = 0;
  std::size_t le10 = 0;

  /// `sentences=<n> mean=<x.x> le7=<0.xx> le10=<0.xx>`
  std::string str() const;
};

/// Words are whitespace tokens that are not pure punctuation. Blank lines are
/// skipped. Throws std::invalid_argument("empty corpus") with no sentences.
CorpusStats corpus_stats(const std::vector<std::string>& lines);

/// Rounds num/den to `digits` decimals, half away from zero, exactly.
std::string format_ratio(std::size_t num, std::size_t den, int digits);

// ---------------------------------------------------------------------------

struct GoldenRow {
  int line = 0;
  std::string source;
  std::string expected;
  bool expect_untranslated = false;
};

struct GoldenOutcome {
  GoldenRow row;
  std::string actual;
  bool pass = false;
};

struct GoldenReport {
  std::vector<GoldenOutcome> outcomes;
  std::vector<Diagnostic> diagnostics;  // malformed rows
  std::size_t passed = 0;
  std::size_t failed = 0;

  bool ok() const { return failed == 0 && diagnostics.empty(); }
  std::string str() const;
};

/// Rows: `source<TAB>expected<TAB>exact|untranslated`. Blank lines and lines
/// starting with '#' are skipped.
std::vector<GoldenRow> read_golden(std::string_view text, std::vector<Diagnostic>& diagnostics,
                                   std::string_view file = {});
GoldenReport run_golden(std::string_view text, const Lingware& lw,
                        const TranslateOptions& options = {}, std::string_view file = {});

// ---------------------------------------------------------------------------

/// Coverage declaration shipped with a lingware directory (`manifest.cfg`).
struct Manifest {
  std::vector<std::string> translate;      // sentences that must translate
  std::vector<std::string> untranslatable; // sentences that must not
  std::vector<std::string> passthrough;    // word forms deliberately absent
};

Manifest load_manifest(std::string_view text, std::vector<Diagnostic>& diagnostics,
                       std::string_view file = {});

/// Loader diagnostics plus the coverage check of the manifest.
std::vector<Diagnostic> validate_lingware(const std::filesystem::path& dir);

std::vector<std::string> split_lines(std::string_view text);

}  // namespace snb
