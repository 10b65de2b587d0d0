#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ugkit {

enum class ErrorCode {
  // input and validation
  Syntax,
  Usage,
  EmptyRange,
  UnknownVertex,
  UnknownEdge,
  DuplicateId,
  EmptyCycle,
  ZeroRow,
  UniverseMismatch,
  NotASink,
  NotInfiniteEmitter,
  NotInLattice,
  NotALoop,
  MissingGenerator,
  // capability limits
  InfiniteEdgeSet,
  Unbounded,
  TooManyRanges,
  TooLarge,
  FTooLarge,
  HasLoop,
  NoSinksViolated,
  NonUnitalUnit,
  TruncationEmpty,
  Unsupported,
};

const char* to_string(ErrorCode code);

// True for errors that signal a limit of the toolkit rather than bad input.
bool is_capability_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Issue {
  ErrorCode code;
  std::string message;
  int line = 0;
  int column = 0;

  std::string format() const;
};

// Thrown when validation or parsing finds one or more problems.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues);

  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

}  // namespace ugkit
