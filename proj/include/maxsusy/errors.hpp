#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxsusy {

enum class ErrorKind {
  // ring
  MixedChart,
  UnregisteredDenominator,
  DenominatorZero,
  TrigInExactMode,
  NotAUnit,
  NotASquare,
  // exprlang
  SyntaxError,
  UnknownVariable,
  IllegalDenominator,
  IllegalFrequency,
  // clifford
  BadSignature,
  DegreeOutOfRange,
  NoSolution,
  NonUniqueSolution,
  // chartgeom
  BasisMismatch,
  DegreeZero,
  FrameBasis,
  DegreeMismatch,
  SingularCoframe,
  // sugra
  NoAdmissiblePoint,
  // backgrounds
  DegenerateA,
  IrrationalFlux,
  WrongSign,
  IrrationalFrequency,
  ZeroInput,
  // kaluza
  NotInvariant,
  NotSpacelike,
  TimelikeFiber,
  NonAdaptedCoframe,
  FluxNotClosed,
  // io
  InvalidInput,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// Parse errors carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, int line, int column)
      : Error(kind, message + " at " + std::to_string(line) + ":" +
                        std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace maxsusy
