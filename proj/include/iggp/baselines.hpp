#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "iggp/classifier.hpp"
#include "iggp/extract.hpp"

namespace iggp {

bool predict_true(const FlatAtomSet& bk, const FlatAtom& a);
/// For next-family atoms, whether the matching true-family atom is in B;
/// true for every other atom.
bool predict_inertia(const FlatAtomSet& bk, const FlatAtom& a);

/// |A - B| + |B - A| over sorted sets.
std::size_t distance(const FlatAtomSet& a, const FlatAtomSet& b);

/// Fixed-width bitset over an atom universe.
using Bits = std::vector<std::uint64_t>;
std::size_t distance(const Bits& a, const Bits& b);

enum class BaselineKind { True, Inertia, Mean, Knn };

/// One of the propositional baselines. True and Inertia need no training
/// data; Mean and KNN must be fitted first.
class Predictor final : public Classifier {
 public:
  static Predictor make_true() { return Predictor(BaselineKind::True, 0); }
  static Predictor make_inertia() { return Predictor(BaselineKind::Inertia, 0); }
  static Predictor make_mean() { return Predictor(BaselineKind::Mean, 0); }
  /// Throws Error(Usage) if k is zero.
  static Predictor make_knn(std::size_t k);
  /// `true`, `inertia`, `mean`, `knn` (needs `k`) or `knn<k>` such as `knn5`.
  /// Throws Error(Usage).
  static Predictor from_name(std::string_view name, std::optional<std::size_t> k = std::nullopt);

  BaselineKind kind() const noexcept { return kind_; }
  std::size_t k() const noexcept { return k_; }
  std::string name() const override;
  bool needs_training() const noexcept {
    return kind_ == BaselineKind::Mean || kind_ == BaselineKind::Knn;
  }

  /// Throws Error(NoExamples) for an empty training set and Error(KTooLarge)
  /// when k exceeds it.
  void fit(const std::vector<Triple>& train);
  bool fitted() const noexcept { return fitted_ || !needs_training(); }

  /// Throws Error(Unfitted).
  bool predict(const FlatAtomSet& bk, const FlatAtom& a) const;
  std::vector<bool> classify(const FlatAtomSet& bk,
                             std::span<const FlatAtom> atoms) const override;

  /// Training indexes of the k nearest neighbours of B, nearest first, ties
  /// broken by lower index. Throws Error(Unfitted) unless a fitted KNN.
  std::vector<std::size_t> neighbours(const FlatAtomSet& bk) const;

 private:
  Predictor(BaselineKind kind, std::size_t k) : kind_(kind), k_(k) {}

  BaselineKind kind_;
  std::size_t k_;
  bool fitted_ = false;
  std::size_t train_size_ = 0;
  // Mean: positive counts per atom.
  std::map<FlatAtom, std::size_t> positive_counts_;
  // KNN: universe of training B atoms, encoded training Bs, positives.
  FlatAtomSet universe_;
  std::vector<Bits> train_bits_;
  std::vector<FlatAtomSet> train_pos_;
};

}  // namespace iggp
