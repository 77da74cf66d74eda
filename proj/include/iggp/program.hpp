#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "iggp/term.hpp"

namespace iggp {

/// `predicate(args...)`; nullary atoms such as `terminal` have no args.
struct Atom {
  Symbol predicate;
  std::vector<Term> args;

  std::size_t arity() const noexcept { return args.size(); }
  bool is_ground() const noexcept;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) noexcept;

  std::size_t hash() const noexcept;
};

std::string to_kif(const Atom& a);
std::string to_prolog(const Atom& a);
std::ostream& operator<<(std::ostream& os, const Atom& a);

struct Literal {
  bool negated = false;
  Atom atom;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Rule {
  Atom head;
  std::vector<Literal> body;
  /// Number of distinct variables; indices run 0..var_count-1 in order of
  /// first occurrence (head first, then body left to right).
  std::uint32_t var_count = 0;

  friend bool operator==(const Rule& a, const Rule& b) noexcept {
    return a.head == b.head && a.body == b.body;
  }
};

std::string to_kif(const Rule& r);

/// A parsed, validated GDL description: ground facts and rules. Immutable
/// once built; share it freely between threads.
class Program {
 public:
  Program() = default;

  /// Validates arities and groundness of facts, and deduplicates facts
  /// keeping the first occurrence. Throws Error.
  Program(std::vector<Atom> facts, std::vector<Rule> rules);

  const std::vector<Atom>& facts() const noexcept { return facts_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  /// Arguments of `role` facts, in declaration order.
  const std::vector<Symbol>& roles() const noexcept { return roles_; }

  /// Arity of every predicate mentioned in a fact, head or body literal.
  const std::map<Symbol, std::size_t>& predicate_arities() const noexcept {
    return predicate_arities_;
  }
  /// Arity of every function symbol and constant (arity 0) in any term.
  const std::map<Symbol, std::size_t>& functor_arities() const noexcept {
    return functor_arities_;
  }

  bool empty() const noexcept { return facts_.empty() && rules_.empty(); }

  /// New program with `other`'s facts and rules appended. Arity rules apply
  /// across both.
  Program merged_with(const Program& other) const;

  friend bool operator==(const Program& a, const Program& b) noexcept {
    return a.facts_ == b.facts_ && a.rules_ == b.rules_;
  }

 private:
  std::vector<Atom> facts_;
  std::vector<Rule> rules_;
  std::vector<Symbol> roles_;
  std::map<Symbol, std::size_t> predicate_arities_;
  std::map<Symbol, std::size_t> functor_arities_;
};

/// Renders facts then rules, one S-expression per line. Re-parses to an
/// equal Program.
std::string print_program(const Program& p);

/// Parses KIF text (`;` comments, `?` variables, `<=` rules, `not`). Throws
/// Error(Parse | Arity | NonGroundFact | UnsupportedConnective).
Program parse_program(std::string_view text);

/// Throws Error(UnsafeRule) naming the first rule with a head or negated
/// variable not bound by a positive body literal.
void validate_safety(const Program& p);

}  // namespace iggp

template <>
struct std::hash<iggp::Atom> {
  std::size_t operator()(const iggp::Atom& a) const noexcept { return a.hash(); }
};
