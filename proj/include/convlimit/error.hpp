#pragma once

#include <stdexcept>
#include <string>

namespace convlimit {

enum class Errc {
  AllZero,
  DuplicateOffset,
  Overflow,
  ZeroArgument,
  SupercriticalSymbol,
  AmbiguousCluster,
  DissipationNotDetected,
  NonDissipative,
  ZeroFirstMoment,
  IndexOutOfRange,
  InsufficientJetOrder,
  WindowViolation,
  ZeroDrift,
  QuadratureNonConvergence,
  OnSpectrum,
  IllConditioned,
  MissingPolynomials,
  NotProbabilistic,
  InvalidArgument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::AllZero: return "AllZero";
    case Errc::DuplicateOffset: return "DuplicateOffset";
    case Errc::Overflow: return "Overflow";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::SupercriticalSymbol: return "SupercriticalSymbol";
    case Errc::AmbiguousCluster: return "AmbiguousCluster";
    case Errc::DissipationNotDetected: return "DissipationNotDetected";
    case Errc::NonDissipative: return "NonDissipative";
    case Errc::ZeroFirstMoment: return "ZeroFirstMoment";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InsufficientJetOrder: return "InsufficientJetOrder";
    case Errc::WindowViolation: return "WindowViolation";
    case Errc::ZeroDrift: return "ZeroDrift";
    case Errc::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case Errc::OnSpectrum: return "OnSpectrum";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::MissingPolynomials: return "MissingPolynomials";
    case Errc::NotProbabilistic: return "NotProbabilistic";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace convlimit
