#include "iggp/baselines.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "iggp/error.hpp"

namespace iggp {

bool predict_true(const FlatAtomSet&, const FlatAtom&) { return true; }

bool predict_inertia(const FlatAtomSet& bk, const FlatAtom& a) {
  const std::string_view pred = a.predicate();
  if (pred != "next" && !pred.starts_with("next_")) return true;
  const std::string& text = a.text();
  return contains(bk, FlatAtom::parse("true" + text.substr(4)));
}

std::size_t distance(const FlatAtomSet& a, const FlatAtomSet& b) {
  std::size_t d = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++d;
      ++i;
    } else if (*j < *i) {
      ++d;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return d + static_cast<std::size_t>(a.end() - i) + static_cast<std::size_t>(b.end() - j);
}

std::size_t distance(const Bits& a, const Bits& b) {
  std::size_t d = 0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t x = i < a.size() ? a[i] : 0;
    const std::uint64_t y = i < b.size() ? b[i] : 0;
    d += static_cast<std::size_t>(std::popcount(x ^ y));
  }
  return d;
}

Predictor Predictor::make_knn(std::size_t k) {
  if (k == 0) throw Error(ErrorKind::Usage, "knn needs k >= 1");
  return Predictor(BaselineKind::Knn, k);
}

Predictor Predictor::from_name(std::string_view name, std::optional<std::size_t> k) {
  if (name == "true") return make_true();
  if (name == "inertia") return make_inertia();
  if (name == "mean") return make_mean();
  if (name == "knn") {
    if (!k) throw Error(ErrorKind::Usage, "method 'knn' needs a value for k");
    return make_knn(*k);
  }
  if (name.starts_with("knn")) {
    std::size_t parsed = 0;
    const std::string_view digits = name.substr(3);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), parsed);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) {
      if (k && *k != parsed) {
        throw Error(ErrorKind::Usage, "method '" + std::string(name) + "' conflicts with k = " +
                                          std::to_string(*k));
      }
      return make_knn(parsed);
    }
  }
  throw Error(ErrorKind::Usage, "unknown method '" + std::string(name) +
                                    "' (expected true, inertia, mean, knn<k>)");
}

std::string Predictor::name() const {
  switch (kind_) {
    case BaselineKind::True: return "true";
    case BaselineKind::Inertia: return "inertia";
    case BaselineKind::Mean: return "mean";
    case BaselineKind::Knn: return "knn" + std::to_string(k_);
  }
  return "?";
}

namespace {

Bits encode(const FlatAtomSet& universe, const FlatAtomSet& atoms, std::size_t* unseen) {
  Bits bits((universe.size() + 63) / 64, 0);
  std::size_t missing = 0;
  for (const FlatAtom& a : atoms) {
    auto it = std::lower_bound(universe.begin(), universe.end(), a);
    if (it == universe.end() || !(*it == a)) {
      ++missing;
      continue;
    }
    const auto i = static_cast<std::size_t>(it - universe.begin());
    bits[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  if (unseen) *unseen = missing;
  return bits;
}

}  // namespace

void Predictor::fit(const std::vector<Triple>& train) {
  if (!needs_training()) {
    fitted_ = true;
    return;
  }
  if (train.empty()) throw Error(ErrorKind::NoExamples, name() + " needs training triples");
  train_size_ = train.size();
  positive_counts_.clear();
  universe_.clear();
  train_bits_.clear();
  train_pos_.clear();
  if (kind_ == BaselineKind::Mean) {
    for (const Triple& t : train) {
      for (const FlatAtom& a : t.pos) ++positive_counts_[a];
    }
  } else {
    if (k_ > train.size()) {
      throw Error(ErrorKind::KTooLarge, "k = " + std::to_string(k_) + " exceeds the " +
                                            std::to_string(train.size()) + " training triples");
    }
    std::vector<FlatAtom> all;
    for (const Triple& t : train) all.insert(all.end(), t.bk.begin(), t.bk.end());
    universe_ = make_set(std::move(all));
    for (const Triple& t : train) {
      train_bits_.push_back(encode(universe_, t.bk, nullptr));
      train_pos_.push_back(t.pos);
    }
  }
  fitted_ = true;
}

std::vector<std::size_t> Predictor::neighbours(const FlatAtomSet& bk) const {
  if (kind_ != BaselineKind::Knn || !fitted_) {
    throw Error(ErrorKind::Unfitted, name() + " has not been fitted");
  }
  std::size_t unseen = 0;
  const Bits query = encode(universe_, bk, &unseen);
  // Atoms outside the training universe are absent from every training B,
  // so each adds one to every distance.
  std::vector<std::pair<std::size_t, std::size_t>> ranked;
  ranked.reserve(train_bits_.size());
  for (std::size_t i = 0; i < train_bits_.size(); ++i) {
    ranked.emplace_back(distance(train_bits_[i], query) + unseen, i);
  }
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k_),
                    ranked.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k_; ++i) out.push_back(ranked[i].second);
  return out;
}

std::vector<bool> Predictor::classify(const FlatAtomSet& bk,
                                      std::span<const FlatAtom> atoms) const {
  if (!fitted()) throw Error(ErrorKind::Unfitted, name() + " has not been fitted");
  std::vector<bool> out;
  out.reserve(atoms.size());
  switch (kind_) {
    case BaselineKind::True:
      for (const FlatAtom& a : atoms) out.push_back(predict_true(bk, a));
      break;
    case BaselineKind::Inertia:
      for (const FlatAtom& a : atoms) out.push_back(predict_inertia(bk, a));
      break;
    case BaselineKind::Mean:
      for (const FlatAtom& a : atoms) {
        auto it = positive_counts_.find(a);
        const std::size_t count = it == positive_counts_.end() ? 0 : it->second;
        out.push_back(2 * count >= train_size_);
      }
      break;
    case BaselineKind::Knn: {
      const auto near = neighbours(bk);
      for (const FlatAtom& a : atoms) {
        std::size_t votes = 0;
        for (std::size_t i : near) votes += contains(train_pos_[i], a) ? 1 : 0;
        out.push_back(2 * votes >= k_);
      }
      break;
    }
  }
  return out;
}

bool Predictor::predict(const FlatAtomSet& bk, const FlatAtom& a) const {
  return classify(bk, std::span<const FlatAtom>(&a, 1)).front();
}

}  // namespace iggp
