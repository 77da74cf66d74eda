#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "iggp/symbol.hpp"

namespace iggp {

/// A GDL term: constant, variable or compound `f(t1, ..., tn)` with n >= 1.
///
/// Variables carry both their surface name (for printing) and a per-rule
/// index assigned by first occurrence. Equality and ordering look only at the
/// index, which makes structural equality of rules alpha-equivalence.
class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Compound };

  Term() = default;

  static Term constant(Symbol name) { return Term(Kind::Constant, name, 0, {}); }
  static Term constant(std::string_view name) { return constant(Symbol(name)); }
  static Term variable(Symbol name, std::uint32_t index) {
    return Term(Kind::Variable, name, index, {});
  }
  static Term compound(Symbol functor, std::vector<Term> args);

  Kind kind() const noexcept { return kind_; }
  bool is_constant() const noexcept { return kind_ == Kind::Constant; }
  bool is_variable() const noexcept { return kind_ == Kind::Variable; }
  bool is_compound() const noexcept { return kind_ == Kind::Compound; }

  /// Constant name, functor, or variable surface name (including the `?`).
  Symbol symbol() const noexcept { return symbol_; }
  std::uint32_t var_index() const noexcept { return var_index_; }
  const std::vector<Term>& args() const noexcept { return args_; }
  std::size_t arity() const noexcept { return args_.size(); }

  bool is_ground() const noexcept;
  /// Constants and variables have depth 0; `f(...)` is one deeper than its
  /// deepest argument.
  std::size_t depth() const noexcept;

  friend bool operator==(const Term& a, const Term& b) noexcept;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  Term(Kind kind, Symbol symbol, std::uint32_t index, std::vector<Term> args)
      : kind_(kind), var_index_(index), symbol_(symbol), args_(std::move(args)) {}

  Kind kind_ = Kind::Constant;
  std::uint32_t var_index_ = 0;
  Symbol symbol_;
  std::vector<Term> args_;
};

/// Prefix (KIF) rendering: `(score p1 0)`.
std::string to_kif(const Term& t);
/// Prolog-style rendering: `score(p1,0)`. Variables keep their `?` names.
std::string to_prolog(const Term& t);

std::ostream& operator<<(std::ostream& os, const Term& t);

inline void hash_combine(std::size_t& seed, std::size_t value) noexcept {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace iggp

template <>
struct std::hash<iggp::Term> {
  std::size_t operator()(const iggp::Term& t) const noexcept { return t.hash(); }
};
