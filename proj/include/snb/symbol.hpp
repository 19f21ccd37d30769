#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace snb {

// Interned string. Two symbols compare equal iff their text is equal; the
// backing storage lives for the whole process and is shared across threads.
class Symbol {
 public:
  Symbol() : text_(&empty()) {}
  explicit Symbol(std::string_view text);

  const std::string& str() const { return *text_; }
  bool empty_text() const { return text_->empty(); }

  friend bool operator==(Symbol a, Symbol b) { return a.text_ == b.text_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.text_ != b.text_; }
  // Lexicographic on text, never on address.
  friend bool operator<(Symbol a, Symbol b) { return *a.text_ < *b.text_; }

  std::size_t hash() const { return std::hash<const void*>{}(text_); }

 private:
  static const std::string& empty();
  const std::string* text_;
};

}  // namespace snb

template <>
struct std::hash<snb::Symbol> {
  std::size_t operator()(snb::Symbol s) const noexcept { return s.hash(); }
};
