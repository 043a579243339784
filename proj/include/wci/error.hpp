#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace wci {

enum class ErrorCode {
  NonPositiveEntry,
  TooManyDegrees,
  EmptyWeights,
  Overflow,
  NotNormalized,
  NoDegrees,
  TooLarge,
  OverallGcdNotOne,
  DegreeNotDivisible,
  DegenerateEmpty,
  NoUnitWeight,
  NotFano,
  DimensionZero,
  InvalidQuery,
  CapTooSmall,
  ParseError,
};

inline const char *to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
  case ErrorCode::TooManyDegrees: return "TooManyDegrees";
  case ErrorCode::EmptyWeights: return "EmptyWeights";
  case ErrorCode::Overflow: return "Overflow";
  case ErrorCode::NotNormalized: return "NotNormalized";
  case ErrorCode::NoDegrees: return "NoDegrees";
  case ErrorCode::TooLarge: return "TooLarge";
  case ErrorCode::OverallGcdNotOne: return "OverallGcdNotOne";
  case ErrorCode::DegreeNotDivisible: return "DegreeNotDivisible";
  case ErrorCode::DegenerateEmpty: return "DegenerateEmpty";
  case ErrorCode::NoUnitWeight: return "NoUnitWeight";
  case ErrorCode::NotFano: return "NotFano";
  case ErrorCode::DimensionZero: return "DimensionZero";
  case ErrorCode::InvalidQuery: return "InvalidQuery";
  case ErrorCode::CapTooSmall: return "CapTooSmall";
  case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Checked 64-bit arithmetic. Overflow is always an error, never wraparound.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "addition overflows 64 bits");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "subtraction overflows 64 bits");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "multiplication overflows 64 bits");
  return r;
}

} // namespace wci
