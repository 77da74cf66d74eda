#include "iggp/signature.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <limits>

#include "iggp/error.hpp"

namespace iggp {

namespace {

enum class Tok { Ident, Comma, DoubleColon, SubtypeOf, Arrow, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };

  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '%' || c == ';') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (starts("::")) {
      out.push_back({Tok::DoubleColon, "::", line, col});
      advance(2);
    } else if (starts(":>")) {
      out.push_back({Tok::SubtypeOf, ":>", line, col});
      advance(2);
    } else if (starts("->")) {
      out.push_back({Tok::Arrow, "->", line, col});
      advance(2);
    } else if (c == ',') {
      out.push_back({Tok::Comma, ",", line, col});
      advance(1);
    } else if (c == '.') {
      out.push_back({Tok::Dot, ".", line, col});
      advance(1);
    } else if (c == ':') {
      throw Error(ErrorKind::Parse, std::to_string(line) + ":" + std::to_string(col) +
                                        ": stray ':' in signature");
    } else {
      Token t{Tok::Ident, {}, line, col};
      while (i < text.size()) {
        const char d = text[i];
        if (std::isspace(static_cast<unsigned char>(d)) || d == ',' || d == '.' || d == ':' ||
            d == '%' || d == ';' || starts("->")) {
          break;
        }
        t.text += d;
        advance(1);
      }
      out.push_back(std::move(t));
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

[[noreturn]] void syntax_error(const Token& t, std::string_view expected) {
  throw Error(ErrorKind::Parse, std::to_string(t.line) + ":" + std::to_string(t.column) +
                                    ": expected " + std::string(expected) + ", found '" +
                                    (t.kind == Tok::End ? std::string("end of input") : t.text) +
                                    "'");
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::size_t>::max() / b) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max()
                                                         : a + b;
}

}  // namespace

TypeSignature TypeSignature::parse(std::string_view text) {
  TypeSignature sig;
  sig.types_.insert(std::string(kBoolType));
  const std::vector<Token> toks = tokenize(text);
  std::vector<std::pair<Token, Token>> subtype_decls;

  std::size_t i = 0;
  auto expect = [&](Tok kind, std::string_view what) -> const Token& {
    if (toks[i].kind != kind) syntax_error(toks[i], what);
    return toks[i++];
  };

  while (toks[i].kind != Tok::End) {
    const Token first = expect(Tok::Ident, "a symbol or type name");
    if (toks[i].kind == Tok::SubtypeOf) {
      ++i;
      const Token super = expect(Tok::Ident, "a type name");
      expect(Tok::Dot, "'.'");
      subtype_decls.emplace_back(first, super);
      continue;
    }
    std::vector<Token> names{first};
    while (toks[i].kind == Tok::Comma) {
      ++i;
      names.push_back(expect(Tok::Ident, "a symbol"));
    }
    expect(Tok::DoubleColon, "'::' or ':>'");
    std::vector<std::string> types{expect(Tok::Ident, "a type name").text};
    while (toks[i].kind == Tok::Arrow) {
      ++i;
      types.push_back(expect(Tok::Ident, "a type name").text);
    }
    expect(Tok::Dot, "'.' or '->'");

    TypeDecl decl;
    decl.result = types.back();
    types.pop_back();
    decl.arg_types = std::move(types);
    sig.types_.insert(decl.result);
    sig.types_.insert(decl.arg_types.begin(), decl.arg_types.end());
    for (const Token& n : names) {
      if (!sig.decls_.emplace(Symbol(n.text), decl).second) {
        throw Error(ErrorKind::DuplicateDeclaration,
                    std::to_string(n.line) + ":" + std::to_string(n.column) + ": symbol '" +
                        n.text + "' is declared more than once");
      }
    }
  }

  for (const auto& [sub, super] : subtype_decls) {
    for (const Token* t : {&sub, &super}) {
      if (!sig.types_.contains(t->text)) {
        throw Error(ErrorKind::UnknownType, std::to_string(t->line) + ":" +
                                                std::to_string(t->column) + ": unknown type '" +
                                                t->text + "' in subtype declaration");
      }
    }
    sig.supertypes_[sub.text].insert(super.text);
  }
  sig.close_subtypes();
  sig.reject_recursive_types();
  return sig;
}

void TypeSignature::close_subtypes() {
  closure_.clear();
  for (const std::string& t : types_) {
    std::set<std::string>& reach = closure_[t];
    std::deque<std::string> work{t};
    reach.insert(t);
    while (!work.empty()) {
      std::string cur = std::move(work.front());
      work.pop_front();
      auto it = supertypes_.find(cur);
      if (it == supertypes_.end()) continue;
      for (const std::string& up : it->second) {
        if (reach.insert(up).second) work.push_back(up);
      }
    }
  }
  for (const auto& [t, ups] : closure_) {
    for (const std::string& up : ups) {
      if (up != t && closure_[up].contains(t)) {
        throw Error(ErrorKind::CyclicSubtype,
                    "subtype declarations form a cycle between '" + t + "' and '" + up + "'");
      }
    }
  }
}

void TypeSignature::reject_recursive_types() const {
  // t depends on the argument types of every constructor whose result is a
  // subtype of t; a cycle means an infinite Herbrand universe.
  std::map<std::string, std::set<std::string>> deps;
  for (const auto& [name, decl] : decls_) {
    if (decl.arg_types.empty()) continue;
    for (const std::string& t : types_) {
      if (closure_.at(decl.result).contains(t)) {
        deps[t].insert(decl.arg_types.begin(), decl.arg_types.end());
      }
    }
  }
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> mark;
  std::function<void(const std::string&)> visit = [&](const std::string& t) {
    mark[t] = Mark::Active;
    for (const std::string& d : deps[t]) {
      if (mark[d] == Mark::Active) {
        throw Error(ErrorKind::RecursiveSignature,
                    "type '" + d + "' can contain itself; recursive signatures are not supported");
      }
      if (mark[d] == Mark::None) visit(d);
    }
    mark[t] = Mark::Done;
  };
  for (const std::string& t : types_) {
    if (mark[t] == Mark::None) visit(t);
  }
}

const TypeDecl* TypeSignature::find(Symbol s) const {
  auto it = decls_.find(s);
  return it == decls_.end() ? nullptr : &it->second;
}

bool TypeSignature::subtype(std::string_view t1, std::string_view t2) const {
  auto it = closure_.find(std::string(t1));
  if (it == closure_.end()) throw Error(ErrorKind::UnknownType, "unknown type '" + std::string(t1) + "'");
  if (!types_.contains(std::string(t2))) {
    throw Error(ErrorKind::UnknownType, "unknown type '" + std::string(t2) + "'");
  }
  return it->second.contains(std::string(t2));
}

std::string TypeSignature::term_type(const Term& term, std::string_view path) const {
  if (term.is_variable()) {
    throw Error(ErrorKind::IllTyped, "term " + std::string(path) + " is not ground");
  }
  const TypeDecl* decl = find(term.symbol());
  if (!decl) {
    throw Error(ErrorKind::Undeclared,
                "symbol '" + term.symbol().str() + "' is not declared in the signature");
  }
  if (decl->arg_types.size() != term.arity()) {
    throw Error(ErrorKind::IllTyped, "'" + term.symbol().str() + "' is declared with " +
                                         std::to_string(decl->arg_types.size()) +
                                         " argument(s) but used with " +
                                         std::to_string(term.arity()) + " in " + to_prolog(term));
  }
  for (std::size_t i = 0; i < term.arity(); ++i) {
    const std::string got = term_type(term.args()[i], path);
    if (!subtype(got, decl->arg_types[i])) {
      throw Error(ErrorKind::IllTyped, "ill-typed term " + to_prolog(term) + ": argument " +
                                           std::to_string(i + 1) + " has type " + got +
                                           ", expected " + decl->arg_types[i]);
    }
  }
  return decl->result;
}

std::string TypeSignature::well_formed(const Term& term) const {
  return term_type(term, to_prolog(term));
}

std::string TypeSignature::well_formed(const Atom& atom) const {
  if (atom.args.empty()) return well_formed(Term::constant(atom.predicate));
  return well_formed(Term::compound(atom.predicate, atom.args));
}

std::vector<Term> TypeSignature::inhabitants(std::string_view t) const {
  std::vector<Term> out;
  for (const auto& [name, decl] : decls_) {
    if (!subtype(decl.result, t)) continue;
    if (decl.arg_types.empty()) {
      out.push_back(Term::constant(name));
      continue;
    }
    std::vector<std::vector<Term>> domains;
    for (const std::string& a : decl.arg_types) domains.push_back(inhabitants(a));
    if (std::any_of(domains.begin(), domains.end(), [](const auto& d) { return d.empty(); })) {
      continue;
    }
    std::vector<std::size_t> pick(domains.size(), 0);
    for (;;) {
      std::vector<Term> args;
      for (std::size_t k = 0; k < domains.size(); ++k) args.push_back(domains[k][pick[k]]);
      out.push_back(Term::compound(name, std::move(args)));
      std::size_t k = domains.size();
      while (k > 0 && ++pick[k - 1] == domains[k - 1].size()) pick[--k] = 0;
      if (k == 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Atom> TypeSignature::ground_atoms(Symbol predicate, std::size_t cap) const {
  const TypeDecl* decl = find(predicate);
  if (!decl) {
    throw Error(ErrorKind::Undeclared,
                "predicate '" + predicate.str() + "' is not declared in the signature");
  }
  if (decl->result != kBoolType) {
    throw Error(ErrorKind::IllTyped,
                "'" + predicate.str() + "' has result type " + decl->result + ", not bool");
  }

  // Count first so a loose signature fails fast instead of exhausting memory.
  std::function<std::size_t(const std::string&)> count = [&](const std::string& t) {
    std::size_t total = 0;
    for (const auto& [name, d] : decls_) {
      if (!subtype(d.result, t)) continue;
      std::size_t n = 1;
      for (const std::string& a : d.arg_types) n = saturating_mul(n, count(a));
      total = saturating_add(total, n);
    }
    return total;
  };
  std::size_t expected = 1;
  for (const std::string& a : decl->arg_types) expected = saturating_mul(expected, count(a));
  if (expected > cap) {
    throw Error(ErrorKind::EnumerationCap,
                "ground(" + predicate.str() + ") would contain " + std::to_string(expected) +
                    " atoms, above the cap of " + std::to_string(cap));
  }

  std::vector<std::vector<Term>> domains;
  for (const std::string& a : decl->arg_types) domains.push_back(inhabitants(a));
  std::vector<Atom> out;
  if (domains.empty()) {
    out.push_back(Atom{predicate, {}});
    return out;
  }
  if (std::any_of(domains.begin(), domains.end(), [](const auto& d) { return d.empty(); })) {
    return out;
  }
  std::vector<std::size_t> pick(domains.size(), 0);
  for (;;) {
    Atom a{predicate, {}};
    for (std::size_t k = 0; k < domains.size(); ++k) a.args.push_back(domains[k][pick[k]]);
    out.push_back(std::move(a));
    std::size_t k = domains.size();
    while (k > 0 && ++pick[k - 1] == domains[k - 1].size()) pick[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

void TypeSignature::check_covers(const Program& p) const {
  auto check = [&](Symbol s, std::size_t arity, std::string_view what) {
    if (s == sym::distinct()) return;
    const TypeDecl* d = find(s);
    if (!d) {
      throw Error(ErrorKind::Undeclared, std::string(what) + " '" + s.str() +
                                             "' is used in the game but not declared in the signature");
    }
    if (d->arg_types.size() != arity) {
      throw Error(ErrorKind::IllTyped, std::string(what) + " '" + s.str() + "' has arity " +
                                           std::to_string(arity) + " in the game but " +
                                           std::to_string(d->arg_types.size()) +
                                           " in the signature");
    }
  };
  for (const auto& [s, arity] : p.predicate_arities()) check(s, arity, "predicate");
  for (const auto& [s, arity] : p.functor_arities()) check(s, arity, "symbol");
}

}  // namespace iggp
