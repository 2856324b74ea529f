#pragma once

#include <stdexcept>
#include <string>

namespace hopfcoh {

enum class ErrorKind {
  MalformedData,
  UnsupportedRing,
  UnsupportedBaseChange,
  UseRowReduction,
  ContainmentViolation,
  CharacteristicMismatch,
  HopfIdealViolation,
  TheoremViolation,
  InternalConsistency,
  SizeLimit,
  DegreeOverflow,
  Schema,
  Usage,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace hopfcoh
