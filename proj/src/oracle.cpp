#include "protoforge/errors.hpp"
#include "protoforge/solver.hpp"
#include "protoforge/trace.hpp"

namespace protoforge {

std::vector<ProtocolTrace> enumerate_all(const ConstraintSystem& cs, std::size_t limit, const SearchConfig& config,
                                         std::uint64_t ceiling)
{
    const auto& spec = cs.spec();
    const std::vector<Action> values = expand_value_order(config, spec.packets);
    const int cells = cs.cell_count();

    std::uint64_t total = 1;
    for (int i = 0; i < cells; ++i) {
        if (total > ceiling / values.size() + 1)
            throw SolverError("enumeration ceiling exceeded: (M+3)^(T*P) > " + std::to_string(ceiling));
        total *= values.size();
    }
    if (total > ceiling)
        throw SolverError("enumeration ceiling exceeded: (M+3)^(T*P) > " + std::to_string(ceiling));

    std::vector<ProtocolTrace> found;
    if (limit == 0)
        return found;

    std::vector<std::size_t> digits(std::size_t(cells), 0);
    ProtocolTrace candidate{spec, ActionGrid(spec.horizon, spec.processes), {}};
    for (;;) {
        for (int i = 0; i < cells; ++i)
            candidate.actions.cells()[std::size_t(i)] = values[digits[std::size_t(i)]];
        candidate.knowledge = witness_knowledge(spec, candidate.actions, cs.enabled());
        if (satisfies(candidate, cs.enabled())) {
            found.push_back(candidate);
            if (found.size() >= limit)
                break;
        }
        // Odometer: the last cell is the least significant digit.
        int i = cells - 1;
        while (i >= 0 && ++digits[std::size_t(i)] == values.size())
            digits[std::size_t(i--)] = 0;
        if (i < 0)
            break;
    }
    return found;
}

} // namespace protoforge
