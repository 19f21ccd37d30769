// Command-line front end: translate, stats, golden, check.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "snb/pipeline.hpp"

namespace {

std::string slurp(const std::string& file) {
  if (file.empty() || file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return snb::read_file(file);
}

bool load(const std::string& dir, snb::Lingware& out) {
  auto loaded = snb::load_lingware(dir);
  for (const auto& d : loaded.diagnostics) std::cerr << d.str() << "\n";
  if (!loaded.ok()) return false;
  out = std::move(loaded.value);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shake-and-Bake lexicalist translation"};
  app.require_subcommand(1);

  std::string lingware, input, pairs;
  bool trace = false, strict = false;
  std::size_t max_bag = 12, coverings = 8;
  long timeout_ms = 5000;

  auto* translate = app.add_subcommand("translate", "translate lines of text");
  translate->add_option("--lingware", lingware, "lingware directory")->required();
  translate->add_flag("--trace", trace, "stage traces on standard error");
  translate->add_option("--max-bag", max_bag, "largest bag the generator accepts");
  translate->add_option("--timeout-ms", timeout_ms, "generation timeout per fragment");
  translate->add_option("--coverings", coverings, "transfer coverings to try");
  translate->add_flag("--strict", strict, "exit 2 if any line fails");
  translate->add_option("file", input, "input file (default: standard input)");

  auto* stats = app.add_subcommand("stats", "corpus sentence-length statistics");
  stats->add_option("file", input, "input file (default: standard input)");

  auto* golden = app.add_subcommand("golden", "run a golden pairs file");
  golden->add_option("--lingware", lingware, "lingware directory")->required();
  golden->add_option("pairs", pairs, "tab-separated pairs file")->required();

  auto* check = app.add_subcommand("check", "validate a lingware directory");
  check->add_option("--lingware", lingware, "lingware directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*translate) {
      snb::Lingware lw;
      if (!load(lingware, lw)) return 1;
      snb::TranslateOptions opts;
      opts.trace = trace;
      opts.coverings = coverings;
      opts.limits.max_bag = max_bag;
      opts.limits.timeout = std::chrono::milliseconds(timeout_ms);
      auto lines = snb::split_lines(slurp(input));
      auto results = snb::translate_batch(lines, lw, opts);
      bool failed = false;
      for (const auto& r : results) {
        if (trace) {
          for (const auto& t : r.trace) std::cerr << t << "\n";
          if (!r.translated) std::cerr << "FAIL " << snb::stage_name(r.failed) << ": " << r.reason << "\n";
        }
        std::cout << r.output << "\n";
        failed = failed || !r.translated;
      }
      return strict && failed ? 2 : 0;
    }
    if (*stats) {
      std::cout << snb::corpus_stats(snb::split_lines(slurp(input))).str() << "\n";
      return 0;
    }
    if (*golden) {
      snb::Lingware lw;
      if (!load(lingware, lw)) return 1;
      auto report = snb::run_golden(snb::read_file(pairs), lw, {}, pairs);
      std::cout << report.str();
      return report.ok() ? 0 : 1;
    }
    if (*check) {
      auto diags = snb::validate_lingware(lingware);
      for (const auto& d : diags) std::cout << d.str() << "\n";
      if (diags.empty()) std::cout << "ok\n";
      return diags.empty() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
