#include "logalg/error.hpp"

namespace logalg {

namespace {
thread_local Limits current_limits;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResourceExceeded: return "ResourceExceeded";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::TorsionGp: return "TorsionGp";
    case ErrorKind::NotVirtuallySurjective: return "NotVirtuallySurjective";
    case ErrorKind::UnsupportedPresentation: return "UnsupportedPresentation";
    case ErrorKind::NotAPoint: return "NotAPoint";
    case ErrorKind::NotMonomial: return "NotMonomial";
    case ErrorKind::NotStrict: return "NotStrict";
    case ErrorKind::NotADerivation: return "NotADerivation";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::TruncationTooLow: return "TruncationTooLow";
    case ErrorKind::Incompatible: return "Incompatible";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ResolveError: return "ResolveError";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

const Limits& limits() { return current_limits; }

ScopedLimits::ScopedLimits(const Limits& l) : saved_(current_limits) {
  current_limits = l;
}

ScopedLimits::~ScopedLimits() { current_limits = saved_; }

void check_deadline() {
  if (current_limits.deadline &&
      std::chrono::steady_clock::now() > *current_limits.deadline) {
    fail(ErrorKind::ResourceExceeded, "deadline reached");
  }
}

}  // namespace logalg
