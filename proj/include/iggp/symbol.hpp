#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace iggp {

/// Interned, case-sensitive name. Two symbols are equal iff their spelling is
/// equal; identity is a pointer compare. Ordering is by spelling so that
/// every sorted container is independent of interning order.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  std::string_view name() const noexcept {
    return text_ ? std::string_view(*text_) : std::string_view();
  }
  const std::string& str() const;
  bool empty() const noexcept { return text_ == nullptr || text_->empty(); }

  friend bool operator==(Symbol a, Symbol b) noexcept { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) noexcept {
    if (a.text_ == b.text_) return std::strong_ordering::equal;
    return a.name().compare(b.name()) < 0 ? std::strong_ordering::less
                                          : std::strong_ordering::greater;
  }

  std::size_t hash() const noexcept { return std::hash<const void*>{}(text_); }

 private:
  const std::string* text_ = nullptr;
};

namespace sym {
// GDL distinguished predicates and connectives.
Symbol role();
Symbol init();
Symbol true_();
Symbol does();
Symbol next();
Symbol legal();
Symbol goal();
Symbol terminal();
Symbol distinct();
Symbol base();
Symbol input();
}  // namespace sym

}  // namespace iggp

template <>
struct std::hash<iggp::Symbol> {
  std::size_t operator()(iggp::Symbol s) const noexcept { return s.hash(); }
};
