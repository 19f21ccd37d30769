// Batch translation throughput: OpenMP batch against the serial reference.

#include <omp.h>

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "snb/pipeline.hpp"

namespace {

double time_ms(auto&& fn) {
  auto t = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"snb batch benchmark"};
  std::string lingware = "lingware/en-es-toy";
  std::string input;
  std::size_t repeat = 20;
  app.add_option("--lingware", lingware, "lingware directory");
  app.add_option("--repeat", repeat, "copies of the input");
  app.add_option("file", input, "sentences (default: the lingware manifest)");
  CLI11_PARSE(app, argc, argv);

  auto loaded = snb::load_lingware(lingware);
  for (const auto& d : loaded.diagnostics) std::cerr << d.str() << "\n";
  if (!loaded.ok()) return 1;
  const auto& lw = loaded.value;

  std::vector<std::string> base;
  if (input.empty()) {
    std::vector<snb::Diagnostic> diags;
    auto m = snb::load_manifest(snb::read_file(std::filesystem::path(lingware) / "manifest.cfg"), diags);
    base = m.translate;
    base.insert(base.end(), m.untranslatable.begin(), m.untranslatable.end());
  } else {
    base = snb::split_lines(snb::read_file(input));
  }
  std::vector<std::string> lines;
  for (std::size_t r = 0; r < repeat; ++r) lines.insert(lines.end(), base.begin(), base.end());

  std::vector<snb::TranslationResult> serial, parallel;
  double s = time_ms([&] { serial = snb::translate_batch_serial(lines, lw); });
  double p = time_ms([&] { parallel = snb::translate_batch(lines, lw); });
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) mismatches += serial[i].output != parallel[i].output;

  std::cout << "sentences=" << lines.size() << " threads=" << omp_get_max_threads() << "\n"
            << "serial_ms=" << s << " parallel_ms=" << p << " speedup=" << (p > 0 ? s / p : 0) << "\n"
            << "mismatches=" << mismatches << "\n";
  return mismatches == 0 ? 0 : 1;
}
