#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace efalloc {

enum class ErrorKind {
  // validation
  NonProbability,
  NotAPermutation,
  NotAWeakOrder,
  PairwiseInconsistent,
  TooFewHouses,
  EmptySupport,
  InvalidAllocation,
  // evaluation / solving
  ModelMismatch,
  NotIndependentModel,
  CapExceeded,
  EnumerationCapExceeded,
  MatrixEnumerationCapExceeded,
  SearchCapExceeded,
  NoViolator,
  // generators / io
  InvalidParams,
  ParseError,
  MethodModelMismatch,
};

std::string_view to_string(ErrorKind kind);

/// The single exception type thrown by the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  bool is_cap_exceeded() const {
    return kind_ == ErrorKind::CapExceeded || kind_ == ErrorKind::EnumerationCapExceeded ||
           kind_ == ErrorKind::MatrixEnumerationCapExceeded || kind_ == ErrorKind::SearchCapExceeded;
  }

 private:
  ErrorKind kind_;
};

}  // namespace efalloc
