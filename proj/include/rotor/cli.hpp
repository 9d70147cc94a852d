#ifndef ROTOR_CLI_HPP
#define ROTOR_CLI_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rotor/errors.hpp"
#include "rotor/rotor_core.hpp"
#include "rotor/thermal.hpp"
#include "rotor/wigner.hpp"

namespace rotor::cli {

/// Malformed input document; the message names the line or the field.
class ParseError : public RotorError {
  public:
    using RotorError::RotorError;
};

/// A state document after validation. Optional fields stay empty when absent.
struct StateDocument {
    AngularWaveFunction state;
    std::optional<std::size_t> grid;
    std::optional<LatticeStep> lattice;
};

/**
 * Parses a JSON state document:
 *
 *   {"hbar": 1, "inertia": 1, "cutoff": 8, "grid": 64, "lattice": "int",
 *    "state": {"kind": "eigenstate", "n": 3}}
 *
 * kind is one of eigenstate (n), superposition (terms: [[n, [re, im]], ...]) or
 * wavepacket (mean_angle, concentration, optional mean_momentum).
 */
StateDocument parse_state_document(std::string_view json_text);

AngularWaveFunction parse_state_spec(std::string_view json_text);

/**
 * Parses an ensemble document:
 *
 *   {"hbar": 1, "inertia": 1, "cutoff": 8, "members": [{"kind": ...}, ...],
 *    "weights": [...]}   // weights optional; Boltzmann weights are used otherwise
 */
struct EnsembleDocument {
    RotorSpec spec;
    std::vector<AngularWaveFunction> members;
    std::optional<std::vector<double>> weights;
    std::optional<std::size_t> grid;
    std::optional<LatticeStep> lattice;
};

EnsembleDocument parse_ensemble_document(std::string_view json_text);

/// Shortest round-trip decimal representation ("." separator).
std::string format_number(double v);

/// FNV-1a 64-bit digest, printed as 16 hex digits.
std::string digest_hex(std::string_view bytes);

/// Exit codes of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand; args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rotor::cli

#endif
