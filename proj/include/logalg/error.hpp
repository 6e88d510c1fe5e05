#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace logalg {

enum class ErrorKind {
  ResourceExceeded,
  NotAComplex,
  NonCommuting,
  NotIntegral,
  TorsionGp,
  NotVirtuallySurjective,
  UnsupportedPresentation,
  NotAPoint,
  NotMonomial,
  NotStrict,
  NotADerivation,
  TooLarge,
  TruncationTooLow,
  Incompatible,
  InvalidArgument,
  ParseError,
  ResolveError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Caps consulted by the completion procedures (Groebner bases, Hilbert
// bases, brute-force enumerations). They live in a thread-local context so
// that pure functions stay pure in their signatures; a caller that wants
// different caps installs a ScopedLimits for the duration of a computation.
struct Limits {
  std::size_t max_gb = 20000;          // rules / basis elements
  std::size_t max_hilbert = 100000;    // Contejean-Devie candidates
  std::size_t max_enumeration = 4096;  // finite-set materialisation
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

const Limits& limits();

class ScopedLimits {
 public:
  explicit ScopedLimits(const Limits& l);
  ~ScopedLimits();
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
};

// Throws ResourceExceeded once the installed deadline has passed.
void check_deadline();

}  // namespace logalg
