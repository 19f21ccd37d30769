#include "snb/symbol.hpp"

#include <mutex>
#include <unordered_set>

namespace snb {

namespace {

struct SymbolTable {
  std::mutex mutex;
  std::unordered_set<std::string> strings;  // node-based: element addresses are stable
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

const std::string& Symbol::empty() {
  static const std::string e;
  return e;
}

Symbol::Symbol(std::string_view text) {
  if (text.empty()) {
    text_ = &empty();
    return;
  }
  auto& t = table();
  std::lock_guard lock(t.mutex);
  text_ = &*t.strings.emplace(text).first;
}

}  // namespace snb
