#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phonlesson {

enum class ErrorKind {
  InvalidArgument,
  UnknownNode,
  PositionOutOfRange,
  ZeroDuration,
  MalformedXml,
  UnknownSchemaVersion,
  DuplicateId,
  PathTraversal,
  MalformedMarkup,
  DisallowedElement,
  NotRiff,
  UnsupportedCodec,
  MissingChunk,
  CorruptHeader,
  ValidationFailed,
  UnknownElement,
  BadClockValue,
  DanglingHref,
  UndeclaredRegion,
  SubsetViolation,
  OutOfRange,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Severity { Warning, Error };

// A finding addressed to a lesson node, e.g. "rule 2" or "rule 1 example 3".
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string node;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

std::string format_diagnostic(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace phonlesson
