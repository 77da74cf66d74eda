#pragma once

#include <string>
#include <vector>

#include "iggp/classifier.hpp"
#include "iggp/extract.hpp"
#include "iggp/inference.hpp"
#include "iggp/signature.hpp"

namespace iggp {

/// (tp/p + tn/n) / 2, or the single defined term when one class is empty.
/// Throws Error(NoExamples) when p = n = 0.
double balanced_accuracy(std::size_t tp, std::size_t p, std::size_t tn, std::size_t n);

/// Pooled confusion counts for one (game, target, method) task.
struct TaskScore {
  std::string game;
  std::string target;
  std::string method;
  std::size_t tp = 0, p = 0, tn = 0, n = 0;
  double ba = 0.0;
  bool perfectly_solved = false;
  bool single_class = false;
};

struct EvalReport {
  std::vector<TaskScore> rows;

  double mean_balanced_accuracy() const;
  double percent_perfectly_solved() const;
  /// Header plus one tab-separated row per task.
  std::string to_tsv() const;
  /// A few human-readable lines with the aggregates.
  std::string summary() const;
};

/// Scores `c` on every atom of E+ and E- of every test triple, pooling the
/// counts. Throws Error(EmptyTestSet | NoExamples); classifier errors are
/// rethrown with the triple index.
TaskScore score(const Classifier& c, const std::vector<Triple>& test, std::size_t jobs = 1);

/// A rule hypothesis H used as a classifier: an atom is labelled true iff
/// its flattened form is in the minimal model of H with B as facts. B is
/// given to H both flat and, where a flattened name maps back to a nested
/// GDL atom, in nested form, so flat hypotheses and GDL programs both work.
class HypothesisClassifier final : public Classifier {
 public:
  /// Throws Error(Unstratifiable | UnsafeRule | NameCollision).
  HypothesisClassifier(Program hypothesis, const TypeSignature& sig, std::string name = "hypothesis",
                       EngineLimits limits = {});
  /// Flat B only, no nested forms.
  explicit HypothesisClassifier(Program hypothesis, std::string name = "hypothesis",
                                EngineLimits limits = {});

  std::string name() const override { return name_; }
  std::vector<bool> classify(const FlatAtomSet& bk,
                             std::span<const FlatAtom> atoms) const override;

 private:
  Engine engine_;
  FlatteningMap map_;
  std::string name_;
};

/// H ∪ B ⊨ atom, for a single atom.
bool classify_hypothesis(const Program& hypothesis, const Triple& triple, const FlatAtom& atom);

}  // namespace iggp
