#pragma once

#include <exception>
#include <string>
#include <utility>

namespace invk {

// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorCategory {
  Usage,      // malformed specs, arguments, unsupported combinations
  Numerical,  // non-kernel triples, eigensolver failures, degenerate results
  Io,         // file access and file format problems
};

class Error : public std::exception {
 public:
  Error(ErrorCategory category, std::string message)
      : category_(category), message_(std::move(message)) {}

  const char* what() const noexcept override { return message_.c_str(); }
  ErrorCategory category() const noexcept { return category_; }

  // Prefix the message with location context, e.g. the Gram entry being
  // evaluated. The dynamic type of the exception is preserved on rethrow.
  void add_context(const std::string& context) {
    message_ = context + ": " + message_;
  }

 private:
  ErrorCategory category_;
  std::string message_;
};

#define INVK_DEFINE_ERROR(Name, Category)                                \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(std::string message)                                   \
        : Error(ErrorCategory::Category, std::move(message)) {}          \
  }

INVK_DEFINE_ERROR(DimensionError, Usage);
INVK_DEFINE_ERROR(FieldError, Usage);
INVK_DEFINE_ERROR(SpecError, Usage);
INVK_DEFINE_ERROR(ZeroVectorError, Usage);
INVK_DEFINE_ERROR(OracleSizeError, Usage);
INVK_DEFINE_ERROR(MetricSizeError, Usage);
INVK_DEFINE_ERROR(NegativeDistanceError, Numerical);
INVK_DEFINE_ERROR(NumericalError, Numerical);
INVK_DEFINE_ERROR(DegenerateEmbeddingError, Numerical);
INVK_DEFINE_ERROR(DegenerateClusterError, Numerical);
INVK_DEFINE_ERROR(IoError, Io);

#undef INVK_DEFINE_ERROR

// Ragged CSV rows.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : Error(ErrorCategory::Io, "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Unparseable cell or token. Line and column are 1-based; a zero line means
// the text did not come from a file (command-line vectors, spec strings).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(line == 0 ? ErrorCategory::Usage : ErrorCategory::Io,
              (line == 0 ? std::string{}
                         : "line " + std::to_string(line) + ", column " +
                               std::to_string(column) + ": ") +
                  message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace invk
