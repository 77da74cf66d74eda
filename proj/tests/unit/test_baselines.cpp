#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "iggp/baselines.hpp"
#include "iggp/error.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace iggp {
namespace {

using testing::flats;

FlatAtom fa(const char* text) { return FlatAtom::parse(text); }

Triple triple(FlatAtomSet bk, FlatAtomSet pos, FlatAtomSet neg = {}) {
  return Triple{std::move(bk), std::move(pos), std::move(neg)};
}

TEST(PredictTrue, AlwaysTrue) {
  EXPECT_TRUE(predict_true(flats({"a"}), fa("p(a)")));
  EXPECT_TRUE(predict_true({}, fa("terminal")));
  EXPECT_TRUE(predict_true(flats({"true_step(2)"}), fa("next_step(3)")));
}

TEST(PredictInertia, NextAtomsFollowTrueAtoms) {
  EXPECT_TRUE(predict_inertia(flats({"true_at(1,4,x)"}), fa("next_at(1,4,x)")));
  EXPECT_FALSE(predict_inertia(flats({"true_at(1,4,o)"}), fa("next_at(1,4,x)")));
  EXPECT_TRUE(predict_inertia(flats({"true(on)"}), fa("next(on)")));
  EXPECT_FALSE(predict_inertia({}, fa("next(on)")));
  EXPECT_TRUE(predict_inertia({}, fa("goal(p1,100)")));
  EXPECT_TRUE(predict_inertia({}, fa("terminal")));
  EXPECT_TRUE(predict_inertia({}, fa("legal_say(player,9)")));
}

TEST(PredictInertia, EqualsTrueOffTheNextFamily) {
  testing::Rng rng(4);
  const auto pool = testing::atom_pool(4, 4);
  const std::vector<FlatAtom> targets{fa("terminal"), fa("goal(p1,0)"), fa("legal(p1,up)"),
                                      fa("legal_say(player,fizz)"), fa("nextish(a)")};
  for (int i = 0; i < 500; ++i) {
    const FlatAtomSet bk = testing::random_subset(rng, pool);
    for (const FlatAtom& a : targets) EXPECT_EQ(predict_inertia(bk, a), predict_true(bk, a));
  }
}

TEST(Distance, Examples) {
  const FlatAtomSet a = flats({"p", "q"});
  EXPECT_EQ(distance(a, a), 0u);
  EXPECT_EQ(distance(flats({"q(a)"}), flats({"q(b)"})), 2u);
  EXPECT_EQ(distance(a, flats({"q", "r"})), 2u);
  EXPECT_EQ(distance(FlatAtomSet{}, a), 2u);
  EXPECT_EQ(distance(Bits{0b1011}, Bits{0b0110}), 3u);
}

TEST(DistanceProperty, MetricAxioms) {
  testing::Rng rng(2026);
  const auto pool = testing::atom_pool(5, 6);
  std::size_t violations = 0;
  for (int i = 0; i < 10'000; ++i) {
    const FlatAtomSet a = testing::random_subset(rng, pool);
    const FlatAtomSet b = testing::random_subset(rng, pool);
    const FlatAtomSet c = testing::random_subset(rng, pool);
    const std::size_t ab = distance(a, b), ba = distance(b, a);
    violations += ab != ba;
    violations += (ab == 0) != (a == b);
    violations += distance(a, a) != 0;
    violations += distance(a, c) > ab + distance(b, c);
    // The set form agrees with the xor-and-popcount form.
    Bits x(1, 0), y(1, 0);
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (contains(a, pool[k])) x[k / 64] |= std::uint64_t{1} << (k % 64);
      if (contains(b, pool[k])) y[k / 64] |= std::uint64_t{1} << (k % 64);
    }
    violations += distance(x, y) != ab;
  }
  EXPECT_EQ(violations, 0u);
}

TEST(Mean, MajorityWithTiesTrue) {
  Predictor m = Predictor::make_mean();
  m.fit({triple({}, flats({"a", "b", "c"})), triple({}, flats({"a", "b"})),
         triple({}, flats({"a"})), triple({}, flats({"d"}))});
  EXPECT_TRUE(m.predict({}, fa("a")));   // 3 of 4
  EXPECT_TRUE(m.predict({}, fa("b")));   // 2 of 4, exactly half
  EXPECT_FALSE(m.predict({}, fa("c")));  // 1 of 4
  EXPECT_FALSE(m.predict({}, fa("zz")));

  Predictor three = Predictor::make_mean();
  three.fit({triple({}, flats({"a"})), triple({}, flats({"a"})), triple({}, flats({"b"}))});
  EXPECT_TRUE(three.predict({}, fa("a")));
  EXPECT_FALSE(three.predict({}, fa("b")));
}

TEST(Predictors, FitErrors) {
  Predictor m = Predictor::make_mean();
  EXPECT_THROW(m.predict({}, fa("a")), Error);
  try {
    m.fit({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoExamples);
  }
  Predictor k = Predictor::make_knn(3);
  try {
    k.fit({triple({}, {}), triple({}, {})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::KTooLarge);
  }
  try {
    k.predict({}, fa("a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unfitted);
  }
  EXPECT_THROW(Predictor::make_knn(0), Error);
  EXPECT_TRUE(Predictor::make_true().fitted());
  EXPECT_FALSE(Predictor::make_mean().fitted());
}

TEST(Predictors, Names) {
  EXPECT_EQ(Predictor::from_name("true").name(), "true");
  EXPECT_EQ(Predictor::from_name("inertia").name(), "inertia");
  EXPECT_EQ(Predictor::from_name("mean").name(), "mean");
  EXPECT_EQ(Predictor::from_name("knn5").k(), 5u);
  EXPECT_EQ(Predictor::from_name("knn5").name(), "knn5");
  EXPECT_EQ(Predictor::from_name("knn", 3).name(), "knn3");
  EXPECT_THROW(Predictor::from_name("knn"), Error);
  EXPECT_THROW(Predictor::from_name("knn0"), Error);
  EXPECT_THROW(Predictor::from_name("forest"), Error);
}

TEST(Knn, PropositionalLimitation) {
  Predictor k = Predictor::make_knn(1);
  k.fit({triple(flats({"q(a)"}), flats({"p(a)"}), flats({"p(b)", "p(c)"})),
         triple(flats({"q(b)"}), flats({"p(b)"}), flats({"p(a)", "p(c)"}))});
  EXPECT_FALSE(k.predict(flats({"q(c)"}), fa("p(c)")));
}

TEST(Knn, ExactMatchWins) {
  Predictor k = Predictor::make_knn(1);
  const std::vector<Triple> train{triple(flats({"a", "b"}), flats({"x"})),
                                  triple(flats({"a"}), flats({"y"})),
                                  triple(flats({"b"}), flats({"z"}))};
  k.fit(train);
  for (const Triple& t : train) {
    EXPECT_EQ(k.neighbours(t.bk).size(), 1u);
    for (const char* a : {"x", "y", "z"}) EXPECT_EQ(k.predict(t.bk, fa(a)), contains(t.pos, fa(a)));
  }
}

TEST(Knn, HalfTheNeighboursIsEnough) {
  Predictor k = Predictor::make_knn(2);
  k.fit({triple(flats({"a"}), flats({"x"})), triple(flats({"a", "b"}), flats({"y"})),
         triple(flats({"c", "d", "e"}), flats({"x", "y"}))});
  EXPECT_EQ(k.neighbours(flats({"a"})), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(k.predict(flats({"a"}), fa("x")));
  EXPECT_TRUE(k.predict(flats({"a"}), fa("y")));
  EXPECT_FALSE(k.predict(flats({"a"}), fa("z")));
}

TEST(Knn, TiesGoToLowerIndex) {
  Predictor k = Predictor::make_knn(1);
  k.fit({triple(flats({"a"}), flats({"first"})), triple(flats({"b"}), flats({"second"}))});
  // Equidistant from both; unseen atoms count against both equally.
  EXPECT_EQ(k.neighbours(flats({"c"})), std::vector<std::size_t>{0});
  EXPECT_TRUE(k.predict(flats({"c"}), fa("first")));
}

// Full sort of every training triple by (distance, index).
std::vector<std::size_t> oracle_neighbours(const std::vector<Triple>& train, const FlatAtomSet& bk,
                                           std::size_t k) {
  std::vector<std::size_t> idx(train.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return distance(train[a].bk, bk) < distance(train[b].bk, bk);
  });
  idx.resize(k);
  return idx;
}

TEST(KnnProperty, AgreesWithFullSortOracle) {
  testing::Rng rng(77);
  const auto bk_pool = testing::atom_pool(3, 5);
  const std::vector<FlatAtom> targets{fa("t(a)"), fa("t(b)"), fa("t(c)"), fa("t(d)")};
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + testing::pick(rng, 50);
    std::vector<Triple> train;
    for (std::size_t i = 0; i < n; ++i) {
      train.push_back(triple(testing::random_subset(rng, bk_pool), testing::random_subset(rng, targets)));
    }
    const std::size_t k = 1 + testing::pick(rng, std::min<std::size_t>(n, 7));
    Predictor p = Predictor::make_knn(k);
    p.fit(train);
    for (int q = 0; q < 5; ++q) {
      FlatAtomSet bk = testing::random_subset(rng, bk_pool);
      if (q == 4) bk.push_back(fa("zz_unseen"));
      const auto expected = oracle_neighbours(train, bk, k);
      ASSERT_EQ(p.neighbours(bk), expected);
      const auto labels = p.classify(bk, targets);
      for (std::size_t j = 0; j < targets.size(); ++j) {
        std::size_t votes = 0;
        for (std::size_t i : expected) votes += contains(train[i].pos, targets[j]);
        EXPECT_EQ(labels[j], 2 * votes >= k);
        EXPECT_EQ(p.predict(bk, targets[j]), labels[j]);
      }
    }
  }
}

}  // namespace
}  // namespace iggp
