#pragma once

#include <map>
#include <set>

#include "iggp/program.hpp"

namespace iggp::testing {

/// Least model of a function-free program by naive grounding: every rule is
/// instantiated with every assignment of constants from the program's
/// universe, stratum by stratum in `levels` order, until nothing changes.
/// Predicates missing from `levels` sit at level 0.
std::set<Atom> naive_model(const Program& p, const std::map<Symbol, std::size_t>& levels);

/// A program stratifies iff no negated edge p -> q has q reaching p.
bool naive_stratifiable(const Program& p);

}  // namespace iggp::testing
