#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iggp/program.hpp"
#include "iggp/signature.hpp"

namespace iggp {

struct FlatParseError {
  std::size_t column;  // 1-based
  std::string message;
};

/// Function-free ground atom, held in its canonical Prolog spelling
/// (`next_score(p1,0)`, `terminal`). Ordering is byte-lexicographic on that
/// spelling, which is also the order atoms are written to disk.
class FlatAtom {
 public:
  FlatAtom() = default;
  FlatAtom(std::string_view predicate, const std::vector<std::string>& args);

  /// Parses `name`, `name(a,b)` with an optional trailing `.`. Throws
  /// Error(MalformedFile) with the column of the first offending character.
  static FlatAtom parse(std::string_view text);
  static std::variant<FlatAtom, FlatParseError> try_parse(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  std::string_view predicate() const;
  std::vector<std::string> args() const;

  /// The same atom as an engine Atom with constant arguments.
  Atom to_atom() const;

  friend bool operator==(const FlatAtom&, const FlatAtom&) = default;
  friend std::strong_ordering operator<=>(const FlatAtom& a, const FlatAtom& b) noexcept {
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  std::string text_;
};

std::ostream& operator<<(std::ostream& os, const FlatAtom& a);

/// Predicates whose arguments may hold a fluent or action term, and the
/// argument position that may be a compound.
std::optional<std::size_t> wrapper_position(Symbol predicate);

/// wrapper(f(t1..tn)) -> wrapper_f(t1..tn); function-free atoms pass
/// through. Throws Error(NestingTooDeep) for any other compound argument.
FlatAtom flatten(const Atom& a);

/// The inverse of flatten over one signature. Built from every wrapper
/// predicate and every declared function symbol; construction rejects
/// fused names that are already declared symbols or that two different
/// (wrapper, functor) pairs would share.
class FlatteningMap {
 public:
  FlatteningMap() = default;
  /// Throws Error(NameCollision).
  explicit FlatteningMap(const TypeSignature& sig);

  /// Nested GDL form of a flat atom, or nullopt if its predicate is not a
  /// fused name.
  std::optional<Atom> unflatten(const FlatAtom& a) const;

 private:
  struct Fused {
    Symbol wrapper;
    std::size_t position;
    Symbol functor;
    std::size_t arity;
    std::size_t flat_arity;
  };
  std::map<std::string, Fused, std::less<>> fused_;
};

/// Sorted, duplicate-free vector of flat atoms; the representation used for
/// B, E+ and E- everywhere.
using FlatAtomSet = std::vector<FlatAtom>;

FlatAtomSet make_set(std::vector<FlatAtom> atoms);
bool contains(const FlatAtomSet& set, const FlatAtom& a);

}  // namespace iggp
