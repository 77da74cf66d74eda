#include "iggp/program.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "iggp/error.hpp"

namespace iggp {

// ---------------------------------------------------------------------------
// Atom

bool Atom::is_ground() const noexcept {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) noexcept {
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                b.args.end());
}

std::size_t Atom::hash() const noexcept {
  std::size_t h = predicate.hash();
  for (const auto& t : args) hash_combine(h, t.hash());
  return h;
}

std::string to_kif(const Atom& a) {
  if (a.args.empty()) return a.predicate.str();
  std::string out = "(";
  out += a.predicate.name();
  for (const auto& t : a.args) {
    out += ' ';
    out += to_kif(t);
  }
  out += ')';
  return out;
}

std::string to_prolog(const Atom& a) {
  if (a.args.empty()) return a.predicate.str();
  std::string out(a.predicate.name());
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += to_prolog(a.args[i]);
  }
  out += ')';
  return out;
}

std::ostream& operator<<(std::ostream& os, const Atom& a) { return os << to_prolog(a); }

std::string to_kif(const Rule& r) {
  std::string out = "(<= ";
  out += to_kif(r.head);
  for (const auto& lit : r.body) {
    out += ' ';
    if (lit.negated) {
      out += "(not " + to_kif(lit.atom) + ")";
    } else {
      out += to_kif(lit.atom);
    }
  }
  out += ')';
  return out;
}

// ---------------------------------------------------------------------------
// Program

namespace {

void record_arity(std::map<Symbol, std::size_t>& arities, Symbol name, std::size_t arity,
                  std::string_view what) {
  auto [it, inserted] = arities.emplace(name, arity);
  if (!inserted && it->second != arity) {
    std::ostringstream msg;
    msg << what << " '" << name.name() << "' used with arity " << arity
        << " and arity " << it->second;
    throw Error(ErrorKind::Arity, msg.str());
  }
}

void record_term(std::map<Symbol, std::size_t>& functors, const Term& t) {
  if (t.is_variable()) return;
  record_arity(functors, t.symbol(), t.arity(), "function symbol");
  for (const auto& a : t.args()) record_term(functors, a);
}

}  // namespace

Program::Program(std::vector<Atom> facts, std::vector<Rule> rules) : rules_(std::move(rules)) {
  auto record_atom = [this](const Atom& a) {
    record_arity(predicate_arities_, a.predicate, a.arity(), "predicate");
    for (const auto& t : a.args) record_term(functor_arities_, t);
  };

  std::unordered_set<Atom> seen;
  for (auto& f : facts) {
    if (!f.is_ground()) {
      throw Error(ErrorKind::NonGroundFact, "fact is not ground: " + to_kif(f));
    }
    if (f.predicate == sym::distinct()) {
      throw Error(ErrorKind::Parse, "'distinct' cannot be asserted as a fact");
    }
    record_atom(f);
    if (seen.insert(f).second) facts_.push_back(std::move(f));
  }
  for (const auto& r : rules_) {
    if (r.head.predicate == sym::distinct()) {
      throw Error(ErrorKind::Parse, "'distinct' cannot be the head of a rule: " + to_kif(r));
    }
    if (r.body.empty()) {
      throw Error(ErrorKind::Parse, "rule has no body: " + to_kif(r));
    }
    record_atom(r.head);
    for (const auto& lit : r.body) {
      if (lit.atom.predicate == sym::distinct() && lit.atom.arity() != 2) {
        throw Error(ErrorKind::Arity, "'distinct' takes exactly two arguments: " + to_kif(r));
      }
      record_atom(lit.atom);
    }
  }

  for (const auto& f : facts_) {
    if (f.predicate == sym::role() && f.arity() == 1 && f.args[0].is_constant()) {
      roles_.push_back(f.args[0].symbol());
    }
  }
}

Program Program::merged_with(const Program& other) const {
  std::vector<Atom> facts = facts_;
  facts.insert(facts.end(), other.facts_.begin(), other.facts_.end());
  std::vector<Rule> rules = rules_;
  rules.insert(rules.end(), other.rules_.begin(), other.rules_.end());
  return Program(std::move(facts), std::move(rules));
}

std::string print_program(const Program& p) {
  std::string out;
  for (const auto& f : p.facts()) {
    out += to_kif(f);
    out += '\n';
  }
  for (const auto& r : p.rules()) {
    out += to_kif(r);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct SExpr {
  bool is_list = false;
  std::string token;
  std::vector<SExpr> items;
  std::size_t line = 0;
  std::size_t column = 0;
};

std::string where(const SExpr& e) {
  return std::to_string(e.line) + ":" + std::to_string(e.column);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    for (;;) {
      skip_blank();
      if (pos_ >= text_.size()) break;
      out.push_back(read());
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t line, std::size_t col) const {
    throw Error(ErrorKind::Parse,
                std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = text_[pos_];
    if (c == ')') fail("unbalanced ')'", line_, col_);
    if (c == '(') {
      e.is_list = true;
      advance();
      for (;;) {
        skip_blank();
        if (pos_ >= text_.size()) fail("unbalanced '(' opened here", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      advance();
    }
    e.token = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_connective(std::string_view tok) {
  return tok == "or" || tok == "and" || tok == "<=" || tok == "not";
}

class Builder {
 public:
  Term term(const SExpr& e) {
    if (!e.is_list) {
      if (e.token.front() == '?') {
        if (e.token.size() == 1) throw Error(ErrorKind::Parse, where(e) + ": empty variable name");
        Symbol name(e.token);
        auto [it, inserted] = vars_.emplace(name, static_cast<std::uint32_t>(vars_.size()));
        return Term::variable(name, it->second);
      }
      return Term::constant(Symbol(e.token));
    }
    if (e.items.empty()) throw Error(ErrorKind::Parse, where(e) + ": empty term '()'");
    const SExpr& head = e.items.front();
    if (head.is_list || head.token.front() == '?') {
      throw Error(ErrorKind::Parse, where(e) + ": function symbol must be a constant");
    }
    if (is_connective(head.token)) {
      throw Error(ErrorKind::UnsupportedConnective,
                  where(e) + ": '" + head.token + "' is not allowed inside a term");
    }
    if (e.items.size() == 1) {
      throw Error(ErrorKind::Parse, where(e) + ": compound term '" + head.token +
                                        "' needs at least one argument");
    }
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term(e.items[i]));
    return Term::compound(Symbol(head.token), std::move(args));
  }

  Atom atom(const SExpr& e, std::string_view role) {
    if (!e.is_list) {
      if (e.token.front() == '?') {
        throw Error(ErrorKind::Parse, where(e) + ": " + std::string(role) +
                                          " must be an atom, found variable " + e.token);
      }
      if (is_connective(e.token)) {
        throw Error(ErrorKind::Parse, where(e) + ": unexpected '" + e.token + "'");
      }
      return Atom{Symbol(e.token), {}};
    }
    if (e.items.empty()) throw Error(ErrorKind::Parse, where(e) + ": empty " + std::string(role));
    const SExpr& head = e.items.front();
    if (head.is_list || head.token.front() == '?') {
      throw Error(ErrorKind::Parse,
                  where(e) + ": " + std::string(role) + " must start with a predicate name");
    }
    if (head.token == "or" || head.token == "and") {
      throw Error(ErrorKind::UnsupportedConnective,
                  where(e) + ": '" + head.token + "' is not supported; rewrite as plain rules");
    }
    if (head.token == "<=" || head.token == "not") {
      throw Error(ErrorKind::Parse, where(e) + ": " + std::string(role) +
                                        " must be an atom, found '" + head.token + "'");
    }
    Atom a{Symbol(head.token), {}};
    for (std::size_t i = 1; i < e.items.size(); ++i) a.args.push_back(term(e.items[i]));
    return a;
  }

  Literal literal(const SExpr& e) {
    if (e.is_list && !e.items.empty() && !e.items.front().is_list &&
        e.items.front().token == "not") {
      if (e.items.size() != 2) {
        throw Error(ErrorKind::Parse, where(e) + ": 'not' takes exactly one literal");
      }
      const SExpr& inner = e.items[1];
      if (inner.is_list && !inner.items.empty() && !inner.items.front().is_list &&
          inner.items.front().token == "not") {
        throw Error(ErrorKind::UnsupportedConnective, where(e) + ": nested 'not' is not supported");
      }
      return Literal{true, atom(inner, "negated literal")};
    }
    return Literal{false, atom(e, "body literal")};
  }

  Rule rule(const SExpr& e) {
    vars_.clear();
    if (e.items.size() < 2) throw Error(ErrorKind::Parse, where(e) + ": '<=' without a head");
    if (e.items.size() == 2) throw Error(ErrorKind::Parse, where(e) + ": '<=' with no body");
    const SExpr& head = e.items[1];
    if (head.is_list && !head.items.empty() && !head.items.front().is_list &&
        head.items.front().token == "not") {
      throw Error(ErrorKind::Parse, where(head) + ": rule head cannot be negated");
    }
    Rule r;
    r.head = atom(head, "rule head");
    for (std::size_t i = 2; i < e.items.size(); ++i) r.body.push_back(literal(e.items[i]));
    r.var_count = static_cast<std::uint32_t>(vars_.size());
    return r;
  }

  Atom fact(const SExpr& e) {
    vars_.clear();
    if (e.is_list && !e.items.empty() && !e.items.front().is_list &&
        e.items.front().token == "not") {
      throw Error(ErrorKind::Parse, where(e) + ": a negated literal cannot be a fact");
    }
    Atom a = atom(e, "fact");
    if (!a.is_ground()) {
      throw Error(ErrorKind::NonGroundFact, where(e) + ": fact is not ground: " + to_kif(a));
    }
    return a;
  }

 private:
  std::unordered_map<Symbol, std::uint32_t> vars_;
};

}  // namespace

Program parse_program(std::string_view text) {
  Reader reader(text);
  Builder builder;
  std::vector<Atom> facts;
  std::vector<Rule> rules;
  for (const SExpr& e : reader.read_all()) {
    if (e.is_list && !e.items.empty() && !e.items.front().is_list && e.items.front().token == "<=") {
      rules.push_back(builder.rule(e));
    } else {
      facts.push_back(builder.fact(e));
    }
  }
  return Program(std::move(facts), std::move(rules));
}

// ---------------------------------------------------------------------------
// Safety

namespace {

void collect_vars(const Term& t, std::vector<const Term*>& out) {
  if (t.is_variable()) {
    out.push_back(&t);
  } else {
    for (const auto& a : t.args()) collect_vars(a, out);
  }
}

std::vector<const Term*> vars_of(const Atom& a) {
  std::vector<const Term*> out;
  for (const auto& t : a.args) collect_vars(t, out);
  return out;
}

}  // namespace

void validate_safety(const Program& p) {
  for (const Rule& r : p.rules()) {
    std::unordered_set<std::uint32_t> bound;
    for (const Literal& lit : r.body) {
      if (lit.negated || lit.atom.predicate == sym::distinct()) continue;
      for (const Term* v : vars_of(lit.atom)) bound.insert(v->var_index());
    }
    auto check = [&](const Atom& a) {
      for (const Term* v : vars_of(a)) {
        if (!bound.contains(v->var_index())) {
          throw Error(ErrorKind::UnsafeRule, "unsafe rule " + to_kif(r) + ": variable " +
                                                 v->symbol().str() +
                                                 " does not occur in a positive body literal");
        }
      }
    };
    check(r.head);
    for (const Literal& lit : r.body) {
      if (lit.negated || lit.atom.predicate == sym::distinct()) check(lit.atom);
    }
  }
}

}  // namespace iggp
