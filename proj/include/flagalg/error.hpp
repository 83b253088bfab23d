#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flagalg {

enum class Errc {
  CycleDetected,
  NotGraded,
  DuplicateCover,
  SizeLimitExceeded,
  InvalidParams,
  ElementOutOfRange,
  EnumerationLimitExceeded,
  ArityMismatch,
  PosetMismatch,
  Overflow,
  IndexOutOfRange,
  FlagNotInPoset,
  InvalidShift,
  CapExceeded,
  MalformedTerm,
  RankTooSmall,
  NotBoundedBelow,
  NotBounded,
  NotLattice,
  InconsistentRecursion,
  VariableCountMismatch,
  ParseError,
};

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::NotGraded: return "NotGraded";
    case Errc::DuplicateCover: return "DuplicateCover";
    case Errc::SizeLimitExceeded: return "SizeLimitExceeded";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::ElementOutOfRange: return "ElementOutOfRange";
    case Errc::EnumerationLimitExceeded: return "EnumerationLimitExceeded";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::PosetMismatch: return "PosetMismatch";
    case Errc::Overflow: return "Overflow";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::FlagNotInPoset: return "FlagNotInPoset";
    case Errc::InvalidShift: return "InvalidShift";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::MalformedTerm: return "MalformedTerm";
    case Errc::RankTooSmall: return "RankTooSmall";
    case Errc::NotBoundedBelow: return "NotBoundedBelow";
    case Errc::NotBounded: return "NotBounded";
    case Errc::NotLattice: return "NotLattice";
    case Errc::InconsistentRecursion: return "InconsistentRecursion";
    case Errc::VariableCountMismatch: return "VariableCountMismatch";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace flagalg
