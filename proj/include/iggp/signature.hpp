#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iggp/program.hpp"

namespace iggp {

/// Declared type of a symbol: `f :: t1 -> ... -> tn -> t`. Constants have no
/// argument types; predicates have result type `bool`.
struct TypeDecl {
  std::vector<std::string> arg_types;
  std::string result;

  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

inline constexpr std::string_view kBoolType = "bool";

/// Typing of a game's constants, functions and predicates with a subtype
/// preorder. `sub :> super` declares sub ⊑ super; ⊑ is the reflexive
/// transitive closure of those declarations.
///
/// Text format, one statement per `.`:
///
///     true, next :: prop -> bool.
///     at :: pos -> pos -> cell -> prop.
///     red, black :: agent.
///     agent :> cell.
///
/// `%` and `;` start line comments.
class TypeSignature {
 public:
  TypeSignature() = default;

  /// Throws Error(Parse | DuplicateDeclaration | UnknownType | CyclicSubtype
  /// | RecursiveSignature).
  static TypeSignature parse(std::string_view text);

  const std::map<Symbol, TypeDecl>& declarations() const noexcept { return decls_; }
  const TypeDecl* find(Symbol s) const;
  bool declares(Symbol s) const { return find(s) != nullptr; }

  /// Every type name mentioned anywhere, plus `bool`.
  const std::set<std::string>& types() const noexcept { return types_; }
  bool knows_type(std::string_view t) const { return types_.contains(std::string(t)); }

  /// t1 ⊑ t2. Throws Error(UnknownType).
  bool subtype(std::string_view t1, std::string_view t2) const;

  /// Type of a ground term or atom (atoms are `bool`-typed terms).
  /// Throws Error(IllTyped | Undeclared).
  std::string well_formed(const Term& term) const;
  std::string well_formed(const Atom& atom) const;

  /// All well-typed ground terms of type `t` (constants and constructed
  /// terms whose result type is a subtype of t), canonically sorted.
  std::vector<Term> inhabitants(std::string_view t) const;

  /// ground(Σ, p): every well-typed ground atom of predicate `p`, sorted.
  /// Throws Error(Undeclared | IllTyped | EnumerationCap).
  std::vector<Atom> ground_atoms(Symbol predicate, std::size_t cap = 10'000'000) const;

  /// Throws Error(Undeclared) naming the first symbol of `p` (predicate,
  /// function or constant) missing from the signature. `distinct` is built in.
  void check_covers(const Program& p) const;

  friend bool operator==(const TypeSignature& a, const TypeSignature& b) noexcept {
    return a.decls_ == b.decls_ && a.supertypes_ == b.supertypes_;
  }

 private:
  void close_subtypes();
  void reject_recursive_types() const;
  std::string term_type(const Term& term, std::string_view path) const;

  std::map<Symbol, TypeDecl> decls_;
  std::set<std::string> types_;
  // Declared `sub :> super` edges, and the closure (reflexive).
  std::map<std::string, std::set<std::string>> supertypes_;
  std::map<std::string, std::set<std::string>> closure_;
};

/// Convenience wrappers mirroring the member functions.
inline TypeSignature parse_signature(std::string_view text) { return TypeSignature::parse(text); }
inline bool subtype(const TypeSignature& sig, std::string_view t1, std::string_view t2) {
  return sig.subtype(t1, t2);
}
inline std::string well_formed(const TypeSignature& sig, const Term& term) {
  return sig.well_formed(term);
}
inline std::vector<Atom> ground_atoms(const TypeSignature& sig, Symbol predicate,
                                      std::size_t cap = 10'000'000) {
  return sig.ground_atoms(predicate, cap);
}

}  // namespace iggp
