#include "ugkit/error.hpp"

namespace ugkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyCycle: return "EmptyCycle";
    case ErrorCode::ZeroRow: return "ZeroRow";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::NotASink: return "NotASink";
    case ErrorCode::NotInfiniteEmitter: return "NotInfiniteEmitter";
    case ErrorCode::NotInLattice: return "NotInLattice";
    case ErrorCode::NotALoop: return "NotALoop";
    case ErrorCode::MissingGenerator: return "MissingGenerator";
    case ErrorCode::InfiniteEdgeSet: return "InfiniteEdgeSet";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::TooManyRanges: return "TooManyRanges";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::FTooLarge: return "FTooLarge";
    case ErrorCode::HasLoop: return "HasLoop";
    case ErrorCode::NoSinksViolated: return "NoSinksViolated";
    case ErrorCode::NonUnitalUnit: return "NonUnitalUnit";
    case ErrorCode::TruncationEmpty: return "TruncationEmpty";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

bool is_capability_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfiniteEdgeSet:
    case ErrorCode::Unbounded:
    case ErrorCode::TooManyRanges:
    case ErrorCode::TooLarge:
    case ErrorCode::FTooLarge:
    case ErrorCode::HasLoop:
    case ErrorCode::NoSinksViolated:
    case ErrorCode::NonUnitalUnit:
    case ErrorCode::TruncationEmpty:
    case ErrorCode::Unsupported:
      return true;
    default:
      return false;
  }
}

std::string Issue::format() const {
  std::string out;
  if (line > 0) {
    out = std::to_string(line) + ":" + std::to_string(column) + ": ";
  }
  out += to_string(code);
  out += ": ";
  out += message;
  return out;
}

namespace {

std::string join_issues(const std::vector<Issue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    if (!out.empty()) out += '\n';
    out += i.format();
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(issues.empty() ? ErrorCode::Syntax : issues.front().code,
            join_issues(issues)),
      issues_(std::move(issues)) {}

}  // namespace ugkit
