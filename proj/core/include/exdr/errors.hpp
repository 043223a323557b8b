#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace exdr {

enum class ErrorKind {
  EmptyPolytope,
  ShapeError,
  GluingError,
  UnsupportedFan,
  DualityUnavailable,
  InconsistentNerve,
  DimensionMismatch,
  UnsupportedGluing,
  InvalidManifest,
  NotAFamily,
  NotTransverse,
  DivergenceSuspected,
  IntegralVectorSurjectivityFailure,
  DegreeOverflow,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every engine failure carries a kind so callers (and the CLI exit-code
// mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, int line, int column, const std::string& message)
      : Error(ErrorKind::ParseError,
              source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyPolytope: return "EmptyPolytope";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::GluingError: return "GluingError";
    case ErrorKind::UnsupportedFan: return "UnsupportedFan";
    case ErrorKind::DualityUnavailable: return "DualityUnavailable";
    case ErrorKind::InconsistentNerve: return "InconsistentNerve";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnsupportedGluing: return "UnsupportedGluing";
    case ErrorKind::InvalidManifest: return "InvalidManifest";
    case ErrorKind::NotAFamily: return "NotAFamily";
    case ErrorKind::NotTransverse: return "NotTransverse";
    case ErrorKind::DivergenceSuspected: return "DivergenceSuspected";
    case ErrorKind::IntegralVectorSurjectivityFailure: return "IntegralVectorSurjectivityFailure";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace exdr
