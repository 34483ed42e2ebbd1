#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace riesz {

enum class ErrorKind {
  InvalidInput,
  AmbiguousEndpoint,
  NotFound,
  IndependenceSuspect,
  ResourceLimit,
  DegenerateBeta,
  DegenerateCoverage,
  OverlappingTerms,
  IncompatibleShift,
  LevelNotInNZ,
  NotPrime,
  NotPermutation,
  EmptySubset,
  InvalidSubset,
  UnsupportedASet,
  EmptyWindow,
  PatternMismatch,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::AmbiguousEndpoint: return "AmbiguousEndpoint";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::IndependenceSuspect: return "IndependenceSuspect";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::DegenerateBeta: return "DegenerateBeta";
    case ErrorKind::DegenerateCoverage: return "DegenerateCoverage";
    case ErrorKind::OverlappingTerms: return "OverlappingTerms";
    case ErrorKind::IncompatibleShift: return "IncompatibleShift";
    case ErrorKind::LevelNotInNZ: return "LevelNotInNZ";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotPermutation: return "NotPermutation";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::InvalidSubset: return "InvalidSubset";
    case ErrorKind::UnsupportedASet: return "UnsupportedASet";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
  }
  return "Unknown";
}

}  // namespace riesz
