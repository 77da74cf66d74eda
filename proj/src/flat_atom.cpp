#include "iggp/flat_atom.hpp"

#include <algorithm>
#include <cctype>

#include "iggp/error.hpp"

namespace iggp {

namespace {

bool valid_piece(std::string_view s) {
  if (s.empty() || s.back() == '.') return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ',' || c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c));
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Malformed {
  std::size_t column;
  std::string what;
};

[[noreturn]] void malformed(std::string_view text, std::size_t column, std::string_view what) {
  throw Malformed{column + 1, std::string(what) + " in atom '" + std::string(text) + "'"};
}

FlatAtom parse_or_throw(std::string_view raw);

}  // namespace

FlatAtom::FlatAtom(std::string_view predicate, const std::vector<std::string>& args) {
  if (!valid_piece(predicate)) {
    throw Error(ErrorKind::Parse, "invalid flat predicate name '" + std::string(predicate) + "'");
  }
  text_ = predicate;
  if (args.empty()) return;
  text_ += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!valid_piece(args[i])) {
      throw Error(ErrorKind::Parse, "invalid flat constant '" + args[i] + "'");
    }
    if (i) text_ += ',';
    text_ += args[i];
  }
  text_ += ')';
}

std::variant<FlatAtom, FlatParseError> FlatAtom::try_parse(std::string_view text) {
  try {
    return parse_or_throw(text);
  } catch (const Malformed& m) {
    return FlatParseError{m.column, m.what};
  }
}

FlatAtom FlatAtom::parse(std::string_view text) {
  auto r = try_parse(text);
  if (auto* e = std::get_if<FlatParseError>(&r)) {
    throw Error(ErrorKind::MalformedFile, "column " + std::to_string(e->column) + ": " + e->message);
  }
  return std::get<FlatAtom>(std::move(r));
}

namespace {

FlatAtom parse_or_throw(std::string_view raw) {
  std::string_view text = trim(raw);
  const std::size_t offset = static_cast<std::size_t>(text.data() - raw.data());
  if (!text.empty() && text.back() == '.') text = trim(text.substr(0, text.size() - 1));
  if (text.empty()) malformed(raw, offset, "empty atom");

  const std::size_t open = text.find('(');
  if (open == std::string_view::npos) {
    if (!valid_piece(text)) malformed(raw, offset, "invalid predicate name");
    return FlatAtom(text, {});
  }
  const std::string_view name = trim(text.substr(0, open));
  if (!valid_piece(name)) malformed(raw, offset, "invalid predicate name");
  if (text.back() != ')') malformed(raw, offset + text.size() - 1, "expected ')'");

  std::vector<std::string> args;
  std::size_t start = open + 1;
  const std::size_t close = text.size() - 1;
  for (;;) {
    std::size_t comma = text.find(',', start);
    const std::size_t stop = (comma == std::string_view::npos || comma > close) ? close : comma;
    const std::string_view arg = trim(text.substr(start, stop - start));
    if (!valid_piece(arg)) malformed(raw, offset + start, "invalid argument");
    args.emplace_back(arg);
    if (stop == close) break;
    start = stop + 1;
  }
  return FlatAtom(name, args);
}

}  // namespace

std::string_view FlatAtom::predicate() const {
  std::string_view t(text_);
  return t.substr(0, t.find('('));
}

std::vector<std::string> FlatAtom::args() const {
  std::vector<std::string> out;
  const std::size_t open = text_.find('(');
  if (open == std::string::npos) return out;
  std::size_t start = open + 1;
  for (;;) {
    std::size_t stop = text_.find(',', start);
    if (stop == std::string::npos) {
      out.push_back(text_.substr(start, text_.size() - 1 - start));
      return out;
    }
    out.push_back(text_.substr(start, stop - start));
    start = stop + 1;
  }
}

Atom FlatAtom::to_atom() const {
  Atom a{Symbol(predicate()), {}};
  for (const auto& s : args()) a.args.push_back(Term::constant(Symbol(s)));
  return a;
}

std::ostream& operator<<(std::ostream& os, const FlatAtom& a) { return os << a.text(); }

std::optional<std::size_t> wrapper_position(Symbol predicate) {
  if (predicate == sym::true_() || predicate == sym::next() || predicate == sym::init() ||
      predicate == sym::base()) {
    return 0;
  }
  if (predicate == sym::legal() || predicate == sym::does() || predicate == sym::input()) {
    return 1;
  }
  return std::nullopt;
}

FlatAtom flatten(const Atom& a) {
  const auto position = wrapper_position(a.predicate);
  std::string name = a.predicate.str();
  std::vector<std::string> args;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const Term& t = a.args[i];
    if (t.is_variable()) {
      throw Error(ErrorKind::Parse, "cannot flatten non-ground atom " + to_prolog(a));
    }
    if (t.is_constant()) {
      args.push_back(t.symbol().str());
      continue;
    }
    if (position != i) {
      throw Error(ErrorKind::NestingTooDeep,
                  "cannot flatten " + to_prolog(a) + ": compound argument " +
                      std::to_string(i + 1) + " outside a fluent or action position");
    }
    name += '_';
    name += t.symbol().name();
    for (const Term& inner : t.args()) {
      if (!inner.is_constant()) {
        throw Error(ErrorKind::NestingTooDeep,
                    "cannot flatten " + to_prolog(a) + ": term nested more than one level");
      }
      args.push_back(inner.symbol().str());
    }
  }
  return FlatAtom(name, args);
}

FlatteningMap::FlatteningMap(const TypeSignature& sig) {
  static const Symbol wrappers[] = {sym::true_(), sym::next(),  sym::init(), sym::base(),
                                    sym::legal(), sym::does(), sym::input()};
  for (Symbol w : wrappers) {
    const std::size_t position = *wrapper_position(w);
    const TypeDecl* wrapper_decl = sig.find(w);
    if (!wrapper_decl || wrapper_decl->arg_types.size() <= position) continue;
    for (const auto& [functor, decl] : sig.declarations()) {
      if (decl.arg_types.empty() || decl.result == kBoolType) continue;
      const std::string fused = w.str() + "_" + functor.str();
      if (sig.declares(Symbol(fused))) {
        throw Error(ErrorKind::NameCollision,
                    "flattening " + w.str() + "(" + functor.str() + "(...)) gives '" + fused +
                        "', which is already a declared symbol");
      }
      Fused entry{w, position, functor, decl.arg_types.size(),
                  wrapper_decl->arg_types.size() - 1 + decl.arg_types.size()};
      auto [it, inserted] = fused_.emplace(fused, entry);
      if (!inserted) {
        throw Error(ErrorKind::NameCollision, "flattened name '" + fused + "' is ambiguous between " +
                                                  it->second.wrapper.str() + "/" +
                                                  it->second.functor.str() + " and " + w.str() +
                                                  "/" + functor.str());
      }
    }
  }
}

std::optional<Atom> FlatteningMap::unflatten(const FlatAtom& a) const {
  auto it = fused_.find(a.predicate());
  if (it == fused_.end()) return std::nullopt;
  const Fused& f = it->second;
  const std::vector<std::string> args = a.args();
  if (args.size() != f.flat_arity) return std::nullopt;
  Atom out{f.wrapper, {}};
  for (std::size_t i = 0; i < f.position; ++i) out.args.push_back(Term::constant(args[i]));
  std::vector<Term> inner;
  for (std::size_t i = 0; i < f.arity; ++i) {
    inner.push_back(Term::constant(args[f.position + i]));
  }
  out.args.push_back(Term::compound(f.functor, std::move(inner)));
  for (std::size_t i = f.position + f.arity; i < args.size(); ++i) {
    out.args.push_back(Term::constant(args[i]));
  }
  return out;
}

FlatAtomSet make_set(std::vector<FlatAtom> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

bool contains(const FlatAtomSet& set, const FlatAtom& a) {
  return std::binary_search(set.begin(), set.end(), a);
}

}  // namespace iggp
