#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohobs {

enum class ErrorCode {
  DuplicateSimplex,
  NonIncreasingTuple,
  DanglingVertex,
  OrientationNotACycle,
  DegreeOutOfRange,
  DegreeOverflow,
  NonOrientable,
  NotClosed,
  UnknownVertex,
  UnknownName,
  BadParameter,
  Overflow,
  NotACocycle,
  BaseMismatch,
  SolverFailure,
  MNotCocycle,
  CoverNotGood,
  StarSolveFailure,
  VerdictInconsistent,
  UnknownCommand,
  BadFlag,
  FileNotFound,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateSimplex: return "DUPLICATE_SIMPLEX";
    case ErrorCode::NonIncreasingTuple: return "NON_INCREASING_TUPLE";
    case ErrorCode::DanglingVertex: return "DANGLING_VERTEX";
    case ErrorCode::OrientationNotACycle: return "ORIENTATION_NOT_A_CYCLE";
    case ErrorCode::DegreeOutOfRange: return "DEGREE_OUT_OF_RANGE";
    case ErrorCode::DegreeOverflow: return "DEGREE_OVERFLOW";
    case ErrorCode::NonOrientable: return "NON_ORIENTABLE";
    case ErrorCode::NotClosed: return "NOT_CLOSED";
    case ErrorCode::UnknownVertex: return "UNKNOWN_VERTEX";
    case ErrorCode::UnknownName: return "UNKNOWN_NAME";
    case ErrorCode::BadParameter: return "BAD_PARAMETER";
    case ErrorCode::Overflow: return "OVERFLOW";
    case ErrorCode::NotACocycle: return "NOT_A_COCYCLE";
    case ErrorCode::BaseMismatch: return "BASE_MISMATCH";
    case ErrorCode::SolverFailure: return "SOLVER_FAILURE";
    case ErrorCode::MNotCocycle: return "M_NOT_COCYCLE";
    case ErrorCode::CoverNotGood: return "COVER_NOT_GOOD";
    case ErrorCode::StarSolveFailure: return "STAR_SOLVE_FAILURE";
    case ErrorCode::VerdictInconsistent: return "VERDICT_INCONSISTENT";
    case ErrorCode::UnknownCommand: return "UNKNOWN_COMMAND";
    case ErrorCode::BadFlag: return "BAD_FLAG";
    case ErrorCode::FileNotFound: return "FILE_NOT_FOUND";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

/// Exception carrying one of the library's error codes. The message is a
/// single line naming the offending input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cohobs
