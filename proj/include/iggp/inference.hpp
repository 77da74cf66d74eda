#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "iggp/dependency.hpp"
#include "iggp/program.hpp"

namespace iggp {

/// Set of ground atoms indexed by predicate, with per-argument indexes used
/// by the join in the evaluator.
class FactSet {
 public:
  FactSet() = default;
  FactSet(std::initializer_list<Atom> atoms);
  /// Starts as a view of `base`: every predicate of `base` is visible until
  /// the first insert into it, which copies that predicate's atoms here.
  explicit FactSet(std::shared_ptr<const FactSet> base);
  FactSet(const FactSet& other);
  FactSet& operator=(const FactSet& other);
  FactSet(FactSet&&) noexcept = default;
  FactSet& operator=(FactSet&&) noexcept = default;

  /// Returns true if the atom was not already present. Throws Error(Parse)
  /// if `a` is not ground.
  bool insert(Atom a);
  bool contains(const Atom& a) const;

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Atoms of one predicate in insertion order.
  std::span<const Atom* const> rows(Symbol predicate) const;
  /// Rows of `predicate` whose argument `position` equals `value`, as
  /// indexes into rows(predicate).
  const std::vector<std::uint32_t>* lookup(Symbol predicate, std::size_t position,
                                           const Term& value) const;

  /// Every predicate with at least one atom, sorted by name.
  std::vector<Symbol> predicates() const;
  /// All atoms sorted canonically.
  std::vector<Atom> sorted() const;

  friend bool operator==(const FactSet& a, const FactSet& b);

 private:
  struct Relation {
    std::unordered_set<Atom> set;
    std::vector<const Atom*> order;
    std::vector<std::unordered_map<Term, std::vector<std::uint32_t>>> index;
  };
  const Relation* find(Symbol predicate) const;
  static bool add_row(Relation& rel, Atom a);

  std::unordered_map<Symbol, Relation> relations_;
  std::shared_ptr<const FactSet> base_;
  std::size_t size_ = 0;
};

/// Atoms of `m` with the given predicate, sorted canonically.
std::vector<Atom> query(const FactSet& m, Symbol predicate);

struct EngineLimits {
  std::size_t max_term_depth = 8;
  std::size_t max_derivations = 1'000'000;
};

/// Least model of `p.facts() ∪ extra` under `p.rules()`, evaluated stratum by
/// stratum with semi-naive iteration. Negative literals consult only lower,
/// completed strata; `distinct(a, b)` holds iff a and b differ syntactically.
///
/// Throws Error(TermDepthExceeded | IterationCapExceeded | NonGroundDistinct).
FactSet minimal_model(const Program& p, const Strata& strata, const FactSet& extra,
                      const EngineLimits& limits = {});

/// Compiled evaluator for one program. Construction stratifies, checks
/// safety and plans every rule once; `model` is then a pure function and may
/// be called concurrently.
class Engine {
 public:
  explicit Engine(Program program, EngineLimits limits = {});
  Engine(Program program, Strata strata, EngineLimits limits = {});
  ~Engine();
  Engine(Engine&&) noexcept;
  Engine& operator=(Engine&&) noexcept;

  const Program& program() const noexcept;
  const Strata& strata() const noexcept;

  FactSet model(const FactSet& extra) const;
  FactSet model(std::span<const Atom> extra) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace iggp
