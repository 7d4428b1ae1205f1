#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tablin {

enum class ErrorKind {
  MalformedDocument,
  EmptyTable,
  BudgetUnsatisfiable,
  NoUsableColumn,
  NothingGenerable,
  ColumnNotNumeric,
  SchemaViolation,
  EmptyInput,
  InvalidConfig,
  Io,
};

std::string_view error_kind_name(ErrorKind kind);

// Every failure the library reports is an Error carrying a kind, so the CLI
// can emit a machine-readable summary without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tablin
