#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iggp {

enum class ErrorKind {
  // gdl_core
  Parse,
  Arity,
  NonGroundFact,
  UnsupportedConnective,
  Unstratifiable,
  UnsafeRule,
  // inference
  TermDepthExceeded,
  IterationCapExceeded,
  NonGroundDistinct,
  // signature
  DuplicateDeclaration,
  UnknownType,
  CyclicSubtype,
  RecursiveSignature,
  IllTyped,
  Undeclared,
  EnumerationCap,
  // game
  NoRoles,
  DeadEnd,
  IllegalAction,
  MissingReward,
  DuplicateReward,
  // extract
  NestingTooDeep,
  NameCollision,
  MalformedFile,
  // baselines / evaluate
  KTooLarge,
  Unfitted,
  NoExamples,
  EmptyTestSet,
  // plumbing
  UnknownBundle,
  Io,
  Usage,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` is stable and tested; the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by the environment or invocation rather than
  /// by the content of a game, signature or dataset.
  bool is_io() const noexcept {
    return kind_ == ErrorKind::Io || kind_ == ErrorKind::Usage;
  }

 private:
  ErrorKind kind_;
};

}  // namespace iggp
