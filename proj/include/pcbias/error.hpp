#pragma once

#include <stdexcept>
#include <string>

namespace pcbias {

/// Malformed user input: truth tables, ANF text, JSON documents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that an operation refuses to process.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested enumeration exceeds the configured work budget.
class BudgetError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace pcbias
