#pragma once

#include "protoforge/encoder.hpp"
#include "protoforge/trace.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace protoforge {

/// SMT-LIB2 document over uninterpreted functions
///   sleep, listen : Int Int -> Bool        (time, process)
///   transmit      : Int Int -> Int         -1 silent, 0 garbage, k packet
///   knows         : Int Int Int -> Bool    (time, process, packet)
///   audible       : Int Int Int -> Bool    (slot, listener, speaker)
/// with every requirement grounded and named `|<LABEL>@t=..,p=..[,k=..]|`,
/// followed by check-sat, get-value queries for every cell and knowledge
/// atom, and get-unsat-core.
std::string emit_smtlib(const NetworkSpec& spec);

/// Same, but only the labels enabled in `cs` are asserted.
std::string emit_smtlib(const ConstraintSystem& cs);

/// Requirement label encoded in an assertion name (bars optional).
std::optional<RequirementLabel> label_of_assertion(std::string_view name);

/// Rebuilds a trace from the solver's answers to the emitted get-value
/// queries. Throws SmtError on malformed text, a missing value, an
/// out-of-range content code, an inconsistent (sleep, listen, transmit)
/// triple, or a knows value that disagrees with the derived knowledge.
ProtocolTrace parse_value_response(std::string_view text, const NetworkSpec& spec);

enum class SolverStatus { Sat, Unsat, Unknown };

std::string_view status_name(SolverStatus s);

struct ExternalResult {
    SolverStatus status = SolverStatus::Unknown;
    std::string output;                  ///< full standard output
    std::string values;                  ///< output after the status line (sat only)
    std::vector<std::string> core_names; ///< named core (unsat, when provided)
    LabelSet core_labels;
};

/// Runs `command` with `document` on standard input. Throws
/// ExternalSolverError on spawn failure, timeout, or an unparseable status.
ExternalResult run_external(const std::vector<std::string>& command, std::string_view document,
                            double timeout_seconds);

/// Splits "z3 -in" style command strings on whitespace.
std::vector<std::string> split_command(std::string_view command);

/// Command from PROTOFORGE_SOLVER, if set and non-empty.
std::optional<std::vector<std::string>> solver_from_environment();

} // namespace protoforge
