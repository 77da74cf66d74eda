#include "iggp/evaluate.hpp"

#include <cstdio>
#include <unordered_set>

#include "iggp/error.hpp"
#include "iggp/tracegen.hpp"

namespace iggp {

double balanced_accuracy(std::size_t tp, std::size_t p, std::size_t tn, std::size_t n) {
  if (p == 0 && n == 0) throw Error(ErrorKind::NoExamples, "no positive or negative examples");
  if (tp > p || tn > n) throw Error(ErrorKind::Usage, "true counts exceed class sizes");
  const double pos = p ? static_cast<double>(tp) / static_cast<double>(p) : 0.0;
  const double neg = n ? static_cast<double>(tn) / static_cast<double>(n) : 0.0;
  if (p == 0) return neg;
  if (n == 0) return pos;
  return (pos + neg) / 2.0;
}

double EvalReport::mean_balanced_accuracy() const {
  if (rows.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : rows) sum += r.ba;
  return sum / static_cast<double>(rows.size());
}

double EvalReport::percent_perfectly_solved() const {
  if (rows.empty()) return 0.0;
  std::size_t solved = 0;
  for (const auto& r : rows) solved += r.perfectly_solved ? 1 : 0;
  return 100.0 * static_cast<double>(solved) / static_cast<double>(rows.size());
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string EvalReport::to_tsv() const {
  std::string out = "game\ttarget\tmethod\ttp\tp\ttn\tn\tba\tperfectly_solved\tsingle_class\n";
  for (const auto& r : rows) {
    out += r.game + "\t" + r.target + "\t" + r.method + "\t" + std::to_string(r.tp) + "\t" +
           std::to_string(r.p) + "\t" + std::to_string(r.tn) + "\t" + std::to_string(r.n) + "\t" +
           fixed(r.ba, 6) + "\t" + (r.perfectly_solved ? "true" : "false") + "\t" +
           (r.single_class ? "true" : "false") + "\n";
  }
  return out;
}

std::string EvalReport::summary() const {
  return "tasks: " + std::to_string(rows.size()) +
         "\nmean balanced accuracy: " + fixed(100.0 * mean_balanced_accuracy(), 2) +
         "%\nperfectly solved: " + fixed(percent_perfectly_solved(), 2) + "%\n";
}

TaskScore score(const Classifier& c, const std::vector<Triple>& test, std::size_t jobs) {
  if (test.empty()) throw Error(ErrorKind::EmptyTestSet, "the test split is empty");
  struct Counts {
    std::size_t tp = 0, p = 0, tn = 0, n = 0;
  };
  std::vector<Counts> per(test.size());
  parallel_for(test.size(), jobs, [&](std::size_t i) {
    const Triple& t = test[i];
    try {
      std::vector<FlatAtom> atoms(t.pos);
      atoms.insert(atoms.end(), t.neg.begin(), t.neg.end());
      const auto labels = c.classify(t.bk, atoms);
      Counts& k = per[i];
      k.p = t.pos.size();
      k.n = t.neg.size();
      for (std::size_t j = 0; j < labels.size(); ++j) {
        if (j < k.p) {
          k.tp += labels[j] ? 1 : 0;
        } else {
          k.tn += labels[j] ? 0 : 1;
        }
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "test triple " + std::to_string(i) + ": " + e.what());
    }
  });
  TaskScore s;
  s.method = c.name();
  for (const Counts& k : per) {
    s.tp += k.tp;
    s.p += k.p;
    s.tn += k.tn;
    s.n += k.n;
  }
  s.ba = balanced_accuracy(s.tp, s.p, s.tn, s.n);
  s.perfectly_solved = s.tp == s.p && s.tn == s.n;
  s.single_class = s.p == 0 || s.n == 0;
  return s;
}

HypothesisClassifier::HypothesisClassifier(Program hypothesis, const TypeSignature& sig,
                                           std::string name, EngineLimits limits)
    : engine_(std::move(hypothesis), limits), map_(sig), name_(std::move(name)) {}

HypothesisClassifier::HypothesisClassifier(Program hypothesis, std::string name,
                                           EngineLimits limits)
    : engine_(std::move(hypothesis), limits), name_(std::move(name)) {}

std::vector<bool> HypothesisClassifier::classify(const FlatAtomSet& bk,
                                                 std::span<const FlatAtom> atoms) const {
  FactSet facts;
  for (const FlatAtom& a : bk) {
    facts.insert(a.to_atom());
    if (auto nested = map_.unflatten(a)) facts.insert(std::move(*nested));
  }
  const FactSet model = engine_.model(facts);
  std::unordered_set<std::string> derived;
  for (Symbol pred : model.predicates()) {
    for (const Atom* a : model.rows(pred)) {
      // Atoms with deeper nesting cannot equal any flat example.
      try {
        derived.insert(flatten(*a).text());
      } catch (const Error&) {
      }
    }
  }
  std::vector<bool> out;
  out.reserve(atoms.size());
  for (const FlatAtom& a : atoms) out.push_back(derived.contains(a.text()));
  return out;
}

bool classify_hypothesis(const Program& hypothesis, const Triple& triple, const FlatAtom& atom) {
  HypothesisClassifier c(hypothesis);
  return c.classify(triple.bk, std::span<const FlatAtom>(&atom, 1)).front();
}

}  // namespace iggp
