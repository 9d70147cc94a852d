#ifndef ROTOR_ERRORS_HPP
#define ROTOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rotor {

/// Base class for every error raised by the library.
class RotorError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A basis index lies outside the truncation window [-N, N].
class CutoffViolation : public RotorError {
  public:
    using RotorError::RotorError;
};

/// A state or sample set with zero norm.
class DegenerateState : public RotorError {
  public:
    using RotorError::RotorError;
};

/// Angle grid too coarse for the requested band limit.
class ResolutionError : public RotorError {
  public:
    using RotorError::RotorError;
};

/// Two objects built with different hbar / inertia.
class SpecMismatch : public RotorError {
  public:
    using RotorError::RotorError;
};

/// Integer momentum lattice requested for a state with mixed parity.
class ParityLatticeError : public RotorError {
  public:
    using RotorError::RotorError;
};

/// Weight truncation leaves more than the allowed tail mass.
class TailMassError : public RotorError {
  public:
    using RotorError::RotorError;
};

/// Argument outside an operation's domain.
class DomainError : public RotorError {
  public:
    using RotorError::RotorError;
};

/// Internal consistency check failed (e.g. imaginary residue of a real field).
class ConsistencyError : public RotorError {
  public:
    using RotorError::RotorError;
};

[[noreturn]] void throw_domain(const std::string& what);

} // namespace rotor

#endif
