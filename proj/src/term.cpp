#include "iggp/term.hpp"

#include <algorithm>

#include "iggp/error.hpp"

namespace iggp {

Term Term::compound(Symbol functor, std::vector<Term> args) {
  if (args.empty()) {
    throw Error(ErrorKind::Parse,
                "compound term '" + functor.str() + "' must have at least one argument");
  }
  return Term(Kind::Compound, functor, 0, std::move(args));
}

bool Term::is_ground() const noexcept {
  switch (kind_) {
    case Kind::Constant: return true;
    case Kind::Variable: return false;
    case Kind::Compound:
      return std::all_of(args_.begin(), args_.end(),
                         [](const Term& t) { return t.is_ground(); });
  }
  return false;
}

std::size_t Term::depth() const noexcept {
  if (kind_ != Kind::Compound) return 0;
  std::size_t d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth());
  return d + 1;
}

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Term::Kind::Variable) return a.var_index_ == b.var_index_;
  return a.symbol_ == b.symbol_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.kind_ == Term::Kind::Variable) return a.var_index_ <=> b.var_index_;
  if (auto c = a.symbol_ <=> b.symbol_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(),
                                                b.args_.begin(), b.args_.end());
}

std::size_t Term::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(kind_);
  if (kind_ == Kind::Variable) {
    hash_combine(h, var_index_);
    return h;
  }
  hash_combine(h, symbol_.hash());
  for (const auto& a : args_) hash_combine(h, a.hash());
  return h;
}

std::string to_kif(const Term& t) {
  if (!t.is_compound()) return t.symbol().str();
  std::string out = "(";
  out += t.symbol().name();
  for (const auto& a : t.args()) {
    out += ' ';
    out += to_kif(a);
  }
  out += ')';
  return out;
}

std::string to_prolog(const Term& t) {
  if (!t.is_compound()) return t.symbol().str();
  std::string out(t.symbol().name());
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    out += to_prolog(t.args()[i]);
  }
  out += ')';
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_prolog(t); }

}  // namespace iggp
