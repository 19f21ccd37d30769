#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "snb/pipeline.hpp"

namespace snb::test {

inline std::string source_path(const std::string& relative) {
  return std::string(SNB_SOURCE_DIR) + "/" + relative;
}

inline const Lingware& toy() {
  static const Lingware lw = [] {
    auto loaded = load_lingware(source_path("lingware/en-es-toy"));
    if (!loaded.ok()) throw std::runtime_error(loaded.diagnostics.front().str());
    return std::move(loaded.value);
  }();
  return lw;
}

inline Manifest toy_manifest() {
  std::vector<Diagnostic> diags;
  return load_manifest(read_file(source_path("lingware/en-es-toy/manifest.cfg")), diags);
}

inline std::vector<GoldenRow> golden_rows() {
  std::vector<Diagnostic> diags;
  return read_golden(read_file(source_path("golden/table3.tsv")), diags);
}

}  // namespace snb::test
