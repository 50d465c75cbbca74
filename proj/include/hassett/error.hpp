#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hassett {

enum class ErrorKind {
  Parse,
  WeightOutOfRange,
  TotalTooSmall,
  TooFewPoints,
  BlockTooHeavy,
  UnstableVertex,
  InvalidTree,
  NotAnEdge,
  NotAtVertex,
  IncompatibleSplits,
  InvalidResidualDatum,
  NotSingleton,
  UnknownStratum,
  BadPartition,
  TooFewMarks,
  MarksNotDistinct,
  NegativeCoefficient,
  InvalidFamily,
};

std::string_view error_name(ErrorKind kind);

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hassett
