#include "phonlesson/error.hpp"

#include <algorithm>

namespace phonlesson {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorKind::ZeroDuration: return "ZeroDuration";
    case ErrorKind::MalformedXml: return "MalformedXml";
    case ErrorKind::UnknownSchemaVersion: return "UnknownSchemaVersion";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::PathTraversal: return "PathTraversal";
    case ErrorKind::MalformedMarkup: return "MalformedMarkup";
    case ErrorKind::DisallowedElement: return "DisallowedElement";
    case ErrorKind::NotRiff: return "NotRiff";
    case ErrorKind::UnsupportedCodec: return "UnsupportedCodec";
    case ErrorKind::MissingChunk: return "MissingChunk";
    case ErrorKind::CorruptHeader: return "CorruptHeader";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::BadClockValue: return "BadClockValue";
    case ErrorKind::DanglingHref: return "DanglingHref";
    case ErrorKind::UndeclaredRegion: return "UndeclaredRegion";
    case ErrorKind::SubsetViolation: return "SubsetViolation";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.severity == Severity::Error ? "error" : "warning";
  if (!d.node.empty()) {
    out += " [" + d.node + "]";
  }
  out += ": " + d.message;
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (d.severity != Severity::Error) continue;
    if (!out.empty()) out += "; ";
    out += format_diagnostic(d);
  }
  return out.empty() ? "validation failed" : out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorKind::ValidationFailed, summarize(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace phonlesson
