#include <gtest/gtest.h>

#include <algorithm>

#include "iggp/bundled_games.hpp"
#include "iggp/error.hpp"
#include "iggp/evaluate.hpp"
#include "iggp/extract.hpp"
#include "iggp/tracegen.hpp"
#include "support/fixtures.hpp"

namespace iggp {
namespace {

using testing::flats;
using testing::joint;
using testing::state;

struct Fixture {
  LoadedGame loaded;
  Game game;
  Extractor extractor;

  explicit Fixture(LoadedGame g)
      : loaded(std::move(g)), game(loaded.program), extractor(game, loaded.signature) {}
};

const Fixture& rps() {
  static const Fixture f(load_bundle("rock_paper_scissors"));
  return f;
}

const Fixture& fizz_buzz() {
  static const Fixture f(load_bundle("fizz_buzz"));
  return f;
}

bool subset(const FlatAtomSet& small, const FlatAtomSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

TEST(Targets, NamesRoundTrip) {
  for (Target t : kTargets) EXPECT_EQ(parse_target(to_string(t)), t);
  EXPECT_FALSE(parse_target("role").has_value());
  EXPECT_EQ(target_predicate(Target::Goal), sym::goal());
}

TEST(Statics, RockPaperScissors) {
  EXPECT_EQ(rps().extractor.statics(),
            flats({"beats(paper,stone)", "beats(scissors,paper)", "beats(stone,scissors)",
                   "player(p1)", "player(p2)", "role(p1)", "role(p2)", "succ(0,1)", "succ(1,2)",
                   "succ(2,3)"}));
}

TEST(Statics, ExcludeDerivedDynamicPredicates) {
  const FlatAtomSet& st = fizz_buzz().extractor.statics();
  for (const FlatAtom& a : st) {
    EXPECT_NE(a.predicate(), "correct");
    EXPECT_NE(a.predicate().substr(0, 5), "legal");
  }
  EXPECT_TRUE(contains(st, FlatAtom::parse("input_say(player,fizz)")));
  EXPECT_TRUE(contains(st, FlatAtom::parse("divisible(15,5)")));
}

TEST(TripleTransition, RockPaperScissorsExample) {
  const Triple t = rps().extractor.triple_transition(
      state({"(score p1 0)", "(score p2 0)", "(step 0)"}), joint({{"p1", "stone"}, {"p2", "paper"}}),
      state({"(score p1 0)", "(score p2 1)", "(step 1)"}));
  const FlatAtomSet example_bk =
      flats({"beats(paper,stone)", "beats(scissors,paper)", "beats(stone,scissors)", "player(p1)",
             "player(p2)", "succ(0,1)", "succ(1,2)", "succ(2,3)", "does(p1,stone)",
             "does(p2,paper)", "true_score(p1,0)", "true_score(p2,0)", "true_step(0)"});
  EXPECT_TRUE(subset(example_bk, t.bk));
  EXPECT_EQ(t.bk.size(), example_bk.size() + 2);  // plus role(p1), role(p2)
  EXPECT_EQ(t.pos, flats({"next_score(p1,0)", "next_score(p2,1)", "next_step(1)"}));
  EXPECT_EQ(t.neg, flats({"next_score(p2,0)", "next_score(p1,1)", "next_score(p1,2)",
                          "next_score(p2,2)", "next_score(p1,3)", "next_score(p2,3)",
                          "next_step(0)", "next_step(2)", "next_step(3)"}));
}

TEST(TripleTransition, SelfLoopRenamesFluents) {
  const GameState s = state({"(score p1 2)", "(score p2 1)", "(step 3)"});
  const Triple t = rps().extractor.triple_transition(s, joint({{"p1", "paper"}, {"p2", "paper"}}), s);
  EXPECT_EQ(t.pos, flats({"next_score(p1,2)", "next_score(p2,1)", "next_step(3)"}));
}

TEST(TripleTransition, FizzBuzzExample) {
  const Fixture& fb = fizz_buzz();
  const GameState s = state({"(count 12)", "(success 3)"});
  const JointAction a = joint({{"player", "(say buzz)"}});
  const GameState next = fb.game.step(s, a);
  const Triple t = fb.extractor.triple_transition(s, a, next);
  EXPECT_TRUE(subset(flats({"does_say(player,buzz)", "true_count(12)", "true_success(3)"}), t.bk));
  EXPECT_TRUE(subset(fb.extractor.statics(), t.bk));
  EXPECT_EQ(t.pos, flats({"next_count(13)", "next_success(3)"}));
}

TEST(TripleSingle, FizzBuzzLegal) {
  const Fixture& fb = fizz_buzz();
  const GameState s = state({"(count 9)", "(success 3)"});
  const Triple t = fb.extractor.triple_single(s, fb.game.model(s), Target::Legal);
  EXPECT_EQ(t.pos, flats({"legal_say(player,9)", "legal_say(player,fizz)",
                          "legal_say(player,buzz)", "legal_say(player,fizzbuzz)"}));
  EXPECT_EQ(t.neg.size(), 30u);
  EXPECT_TRUE(subset(flats({"true_count(9)", "true_success(3)"}), t.bk));
}

TEST(TripleSingle, FizzBuzzGoal) {
  const Fixture& fb = fizz_buzz();
  const GameState s = state({"(count 23)", "(success 20)"});
  const Triple t = fb.extractor.triple_single(s, fb.game.model(s), Target::Goal);
  EXPECT_EQ(t.pos, flats({"goal(player,50)"}));
  EXPECT_EQ(t.neg, flats({"goal(player,0)", "goal(player,25)", "goal(player,75)",
                          "goal(player,100)"}));
}

TEST(TripleSingle, FizzBuzzTerminal) {
  const Fixture& fb = fizz_buzz();
  const GameState s = state({"(count 27)", "(success 20)"});
  const Triple t = fb.extractor.triple_single(s, fb.game.model(s), Target::Terminal);
  EXPECT_TRUE(t.pos.empty());
  EXPECT_EQ(t.neg, flats({"terminal"}));
  const GameState end = state({"(count 31)", "(success 20)"});
  const Triple u = fb.extractor.triple_single(end, fb.game.model(end), Target::Terminal);
  EXPECT_EQ(u.pos, flats({"terminal"}));
  EXPECT_TRUE(u.neg.empty());
}

TEST(TripleSingle, OnePlayerClosedWorld) {
  const LoadedGame g = load_game(
      "moves",
      "(role p1) (init here)"
      "(<= (legal p1 up) (true here)) (<= (legal p1 down) (true here))"
      "(<= (next here) (does p1 up)) (<= (next here) (does p1 down))"
      "(<= (goal p1 0) (true here))",
      "role :: agent -> bool. true, next, init :: prop -> bool.\n"
      "legal, does :: agent -> move -> bool. goal :: agent -> reward -> bool.\n"
      "terminal :: bool. p1 :: agent. up, down, left, right :: move.\n"
      "here :: prop. 0 :: reward.");
  const Game game(g.program);
  const Extractor ex(game, g.signature);
  const GameState s = game.initial_state();
  const Triple t = ex.triple_single(s, game.model(s), Target::Legal);
  EXPECT_EQ(t.pos, flats({"legal(p1,up)", "legal(p1,down)"}));
  EXPECT_EQ(t.neg, flats({"legal(p1,left)", "legal(p1,right)"}));
  // The free-function form agrees.
  EXPECT_EQ(triple_single(s, game.model(s), ex.statics(), Target::Legal, g.signature), t);
  // No terminal atom in the model: everything is negative.
  const Triple term = ex.triple_single(s, game.model(s), Target::Terminal);
  EXPECT_TRUE(term.pos.empty());
  EXPECT_EQ(term.neg, flats({"terminal"}));
}

TEST(TripleSingle, NextIsNotASingleStateTarget) {
  const GameState s = rps().game.initial_state();
  EXPECT_THROW(rps().extractor.triple_single(s, rps().game.model(s), Target::Next), Error);
}

TEST(ClosedWorld, PositiveOutsideFamilyIsIllTyped) {
  try {
    closed_world({}, {FlatAtom::parse("legal(p9,up)")}, flats({"legal(p1,up)"}), Target::Legal);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IllTyped);
  }
}

TEST(ExtractTrace, IndexRanges) {
  const Fixture& f = rps();
  const auto traces = generate_traces(f.game, EpisodeConfig{1, 100, 7});
  ASSERT_EQ(traces[0].length(), 4u);
  const auto out = f.extractor.extract_trace(traces[0]);
  std::size_t total = 0;
  for (const auto& list : out) total += list.size();
  EXPECT_EQ(out[static_cast<std::size_t>(Target::Legal)].size(), 4u);
  EXPECT_EQ(out[static_cast<std::size_t>(Target::Next)].size(), 3u);
  EXPECT_EQ(total, 15u);
  EXPECT_EQ(extract_trace(traces[0], f.game, f.loaded.signature), out);
}

TEST(ExtractTrace, SingleStateTraceHasNoTransitions) {
  Trace t;
  t.steps.push_back(TraceStep{rps().game.initial_state(), std::nullopt});
  const auto out = rps().extractor.extract_trace(t);
  EXPECT_TRUE(out[static_cast<std::size_t>(Target::Next)].empty());
  EXPECT_EQ(out[static_cast<std::size_t>(Target::Goal)].size(), 1u);
}

TEST(ExtractTrace, DynamicPlusStaticsEqualsFull) {
  const Fixture& f = fizz_buzz();
  const auto traces = generate_traces(f.game, EpisodeConfig{2, 10, 3});
  for (const Trace& tr : traces) {
    const auto full = f.extractor.extract_trace(tr);
    const auto dyn = f.extractor.extract_trace_dynamic(tr);
    for (std::size_t k = 0; k < 4; ++k) {
      ASSERT_EQ(full[k].size(), dyn[k].size());
      for (std::size_t i = 0; i < dyn[k].size(); ++i) {
        EXPECT_EQ(f.extractor.with_statics(dyn[k][i]), full[k][i]);
      }
    }
  }
}

// Every emitted triple partitions its target family, keeps target atoms
// out of B, and is explained exactly by the reference program.
TEST(ExtractProperty, TriplesPartitionFamilyAndReferenceExplainsThem) {
  for (const GameBundle& b : bundles()) {
    const Fixture f(load_bundle(b.name));
    const HypothesisClassifier reference(f.loaded.program, f.loaded.signature, "reference");
    const auto traces = generate_traces(f.game, EpisodeConfig{6, 20, 13}, 2);
    for (const Trace& tr : traces) {
      const auto out = f.extractor.extract_trace(tr);
      for (Target t : kTargets) {
        const FlatAtomSet& family = f.extractor.family(t);
        for (const Triple& x : out[static_cast<std::size_t>(t)]) {
          FlatAtomSet both;
          std::set_intersection(x.pos.begin(), x.pos.end(), x.neg.begin(), x.neg.end(),
                                std::back_inserter(both));
          EXPECT_TRUE(both.empty());
          FlatAtomSet all;
          std::set_union(x.pos.begin(), x.pos.end(), x.neg.begin(), x.neg.end(),
                         std::back_inserter(all));
          EXPECT_EQ(all, family) << b.name << " " << to_string(t);
          for (const FlatAtom& a : x.bk) EXPECT_FALSE(contains(family, a)) << a;

          const auto pos = reference.classify(x.bk, x.pos);
          const auto neg = reference.classify(x.bk, x.neg);
          EXPECT_EQ(std::count(pos.begin(), pos.end(), true), static_cast<long>(x.pos.size()))
              << b.name << " " << to_string(t);
          EXPECT_EQ(std::count(neg.begin(), neg.end(), true), 0) << b.name << " " << to_string(t);
        }
      }
    }
  }
}

}  // namespace
}  // namespace iggp
