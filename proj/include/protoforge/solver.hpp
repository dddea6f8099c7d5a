#pragma once

#include "protoforge/encoder.hpp"
#include "protoforge/trace.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace protoforge {

/// Value classes for the per-cell branching order. TransmitPacket expands
/// to Transmit(Packet 1..M) in ascending packet order.
enum class ValueClass { Sleep, Listen, TransmitPacket, TransmitGarbage };

/// Cells are always branched in (t ascending, p ascending) order; only the
/// value order is configurable.
struct SearchConfig {
    std::array<ValueClass, 4> value_order = {ValueClass::Sleep, ValueClass::Listen, ValueClass::TransmitPacket,
                                             ValueClass::TransmitGarbage};
    std::optional<std::uint64_t> node_limit;

    bool valid() const;
};

/// Concrete per-cell value sequence for `packets` packets.
std::vector<Action> expand_value_order(const SearchConfig& config, int packets);

struct UnsatCore {
    LabelSet labels;
    bool operator==(const UnsatCore&) const = default;
};

struct Sat {
    ProtocolTrace trace;
    std::uint64_t nodes = 0;
};
struct Unsat {
    UnsatCore core; ///< Every enabled label; see unsat_core_minimize.
    std::uint64_t nodes = 0;
};
struct BudgetExhausted {
    std::uint64_t nodes = 0;
};
using SolveResult = std::variant<Sat, Unsat, BudgetExhausted>;

/// Deterministic depth-first search over the action grid. Returns the
/// lexicographically first satisfying assignment under the value order.
SolveResult solve(const ConstraintSystem& cs, const SearchConfig& config = {});

inline constexpr std::uint64_t kDefaultEnumerationCeiling = 10'000'000;

/// Brute-force oracle: tries every assignment in lexicographic cell order
/// and keeps those accepted by the trace validator. Shares nothing with
/// solve() beyond the value-order expansion. Throws SolverError when
/// (M+3)^(T*P) exceeds `ceiling`.
std::vector<ProtocolTrace> enumerate_all(const ConstraintSystem& cs, std::size_t limit,
                                         const SearchConfig& config = {},
                                         std::uint64_t ceiling = kDefaultEnumerationCeiling);

struct HorizonFound {
    int horizon = 0;
    ProtocolTrace trace;
};
struct NotFoundWithin {
    int t_max = 0;
};
struct Inconclusive {
    int horizon = 0; ///< first horizon the search could not decide
};
using MinHorizonResult = std::variant<HorizonFound, NotFoundWithin, Inconclusive>;

/// Least T in [0, t_max] at which the goal is reachable. Ignores
/// spec.horizon. Requires goal = all-know-all.
MinHorizonResult min_horizon(const NetworkSpec& spec, int t_max, const SearchConfig& config = {});

/// Deletion-based minimization at requirement-family granularity, in
/// taxonomy order. Structural labels are implicit and never reported.
/// Throws SolverError if `cs` is satisfiable or the budget runs out.
UnsatCore unsat_core_minimize(const ConstraintSystem& cs, const SearchConfig& config = {});

} // namespace protoforge
