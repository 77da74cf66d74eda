#pragma once

#include <span>
#include <string>
#include <vector>

#include "iggp/flat_atom.hpp"

namespace iggp {

/// Anything that labels example atoms given a background set B: baseline
/// predictors and rule hypotheses alike.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::string name() const = 0;
  /// One label per atom, in order. Must be safe to call concurrently.
  virtual std::vector<bool> classify(const FlatAtomSet& bk,
                                     std::span<const FlatAtom> atoms) const = 0;
};

}  // namespace iggp
