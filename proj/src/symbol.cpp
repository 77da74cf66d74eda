#include "iggp/symbol.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_set>

#include "iggp/error.hpp"

namespace iggp {

namespace {

struct Interner {
  std::shared_mutex mutex;
  // Node-based: element addresses are stable for the life of the process.
  std::unordered_set<std::string> names;

  const std::string* intern(std::string_view name) {
    {
      std::shared_lock lock(mutex);
      if (auto it = names.find(std::string(name)); it != names.end()) return &*it;
    }
    std::unique_lock lock(mutex);
    return &*names.emplace(name).first;
  }
};

Interner& interner() {
  static Interner instance;
  return instance;
}

}  // namespace

Symbol::Symbol(std::string_view name) : text_(interner().intern(name)) {}

const std::string& Symbol::str() const {
  static const std::string empty;
  return text_ ? *text_ : empty;
}

namespace sym {
Symbol role() { static const Symbol s("role"); return s; }
Symbol init() { static const Symbol s("init"); return s; }
Symbol true_() { static const Symbol s("true"); return s; }
Symbol does() { static const Symbol s("does"); return s; }
Symbol next() { static const Symbol s("next"); return s; }
Symbol legal() { static const Symbol s("legal"); return s; }
Symbol goal() { static const Symbol s("goal"); return s; }
Symbol terminal() { static const Symbol s("terminal"); return s; }
Symbol distinct() { static const Symbol s("distinct"); return s; }
Symbol base() { static const Symbol s("base"); return s; }
Symbol input() { static const Symbol s("input"); return s; }
}  // namespace sym

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Arity: return "ArityMismatch";
    case ErrorKind::NonGroundFact: return "NonGroundFact";
    case ErrorKind::UnsupportedConnective: return "UnsupportedConnective";
    case ErrorKind::Unstratifiable: return "Unstratifiable";
    case ErrorKind::UnsafeRule: return "UnsafeRule";
    case ErrorKind::TermDepthExceeded: return "TermDepthExceeded";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::NonGroundDistinct: return "NonGroundDistinct";
    case ErrorKind::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorKind::UnknownType: return "UnknownType";
    case ErrorKind::CyclicSubtype: return "CyclicSubtype";
    case ErrorKind::RecursiveSignature: return "RecursiveSignature";
    case ErrorKind::IllTyped: return "IllTyped";
    case ErrorKind::Undeclared: return "Undeclared";
    case ErrorKind::EnumerationCap: return "EnumerationCapExceeded";
    case ErrorKind::NoRoles: return "NoRoles";
    case ErrorKind::DeadEnd: return "DeadEnd";
    case ErrorKind::IllegalAction: return "IllegalAction";
    case ErrorKind::MissingReward: return "MissingReward";
    case ErrorKind::DuplicateReward: return "DuplicateReward";
    case ErrorKind::NestingTooDeep: return "NestingTooDeep";
    case ErrorKind::NameCollision: return "NameCollision";
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::Unfitted: return "UnfittedPredictor";
    case ErrorKind::NoExamples: return "NoExamples";
    case ErrorKind::EmptyTestSet: return "EmptyTestSet";
    case ErrorKind::UnknownBundle: return "UnknownBundle";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Usage: return "UsageError";
  }
  return "Error";
}

}  // namespace iggp
