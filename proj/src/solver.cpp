#include "protoforge/solver.hpp"
#include "protoforge/errors.hpp"

#include <algorithm>

namespace protoforge {

bool SearchConfig::valid() const
{
    auto sorted = value_order;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;
    return !node_limit || *node_limit >= 1;
}

std::vector<Action> expand_value_order(const SearchConfig& config, int packets)
{
    std::vector<Action> values;
    for (auto cls : config.value_order) {
        switch (cls) {
        case ValueClass::Sleep: values.push_back(Action::sleep()); break;
        case ValueClass::Listen: values.push_back(Action::listen()); break;
        case ValueClass::TransmitGarbage: values.push_back(Action::transmit(Content::garbage())); break;
        case ValueClass::TransmitPacket:
            for (PacketId k = 1; k <= packets; ++k)
                values.push_back(Action::transmit(Content::packet(k)));
            break;
        }
    }
    return values;
}

namespace {

struct BudgetHit {};

/// Lookup tables compiled from the enabled ground constraints.
struct Compiled {
    int T = 0, P = 0, M = 0;
    bool learning = false;                  // R7 enabled
    std::vector<std::uint8_t> initial;      // P*M, knowledge at time 0
    std::vector<std::uint8_t> transmit_gate; // T*P*M, R5 atoms
    std::vector<std::uint8_t> audible;      // T*P*P, [t][listener][speaker]
    std::vector<std::uint8_t> goal;         // P*M
    std::vector<std::array<bool, 3>> must_perform; // per process: sleep, listen, transmit

    std::size_t tpk(int t, int p, int k) const { return (std::size_t(t) * P + std::size_t(p)) * M + std::size_t(k - 1); }
    std::size_t pk(int p, int k) const { return std::size_t(p) * M + std::size_t(k - 1); }
    std::size_t tls(int t, int l, int s) const { return (std::size_t(t) * P + std::size_t(l)) * P + std::size_t(s); }
};

Compiled compile(const ConstraintSystem& cs)
{
    using L = RequirementLabel;
    const auto& spec = cs.spec();
    Compiled c;
    c.T = spec.horizon;
    c.P = spec.processes;
    c.M = spec.packets;
    c.learning = cs.is_enabled(L::R7_CollisionFreeLearning);
    c.initial.assign(std::size_t(c.P) * std::size_t(c.M), 1);
    c.transmit_gate.assign(std::size_t(c.T) * std::size_t(c.P) * std::size_t(c.M), 0);
    c.goal.assign(std::size_t(c.P) * std::size_t(c.M), 0);
    c.must_perform.assign(std::size_t(c.P), {false, false, false});

    const bool topo = cs.is_enabled(L::TOPO_HearsRelation);
    c.audible.assign(std::size_t(c.T) * std::size_t(c.P) * std::size_t(c.P), topo ? 0 : 1);

    for (const auto& g : cs.constraints()) {
        if (!cs.is_enabled(g.label))
            continue;
        switch (g.label) {
        case L::R4_InitialKnowledge:
            c.initial[c.pk(g.process, g.packet)] = g.initially_known ? 1 : 0;
            break;
        case L::R7_CollisionFreeLearning:
            if (g.time == 0)
                c.initial[c.pk(g.process, g.packet)] = 0;
            break;
        case L::R5_TransmitOnlyKnown:
            c.transmit_gate[c.tpk(g.time, g.process, g.packet)] = 1;
            break;
        case L::GOAL_Deadline:
            c.goal[c.pk(g.process, g.packet)] = 1;
            break;
        case L::R3_Liveness:
            c.must_perform[std::size_t(g.process)][std::size_t(*g.action)] = true;
            break;
        case L::TOPO_HearsRelation:
            for (auto s : g.speakers)
                c.audible[c.tls(g.time, g.process, s)] = 1;
            break;
        default:
            break; // R1, R2 structural; R6 implied by the transition below
        }
    }
    return c;
}

class Search {
public:
    Search(const ConstraintSystem& cs, const SearchConfig& config)
        : cs_(cs), c_(compile(cs)), values_(expand_value_order(config, cs.spec().packets)),
          limit_(config.node_limit), actions_(c_.T, c_.P),
          knowledge_(std::size_t(c_.T) + 1, std::vector<std::uint8_t>(std::size_t(c_.P) * std::size_t(c_.M), 0)),
          performed_(std::size_t(c_.P), {0, 0, 0})
    {
        knowledge_[0] = c_.initial;
    }

    SolveResult run()
    {
        try {
            if (!row_feasible(0) || !descend(0))
                return Unsat{UnsatCore{cs_.enabled()}, nodes_};
        } catch (const BudgetHit&) {
            return BudgetExhausted{nodes_};
        }
        return Sat{make_result(), nodes_};
    }

private:
    bool descend(int cell)
    {
        const int P = c_.P;
        if (cell == c_.T * P)
            return true;
        const int t = cell / P, p = cell % P;

        for (const Action& v : values_) {
            if (limit_ && nodes_ >= *limit_)
                throw BudgetHit{};
            ++nodes_;

            const int code = v.transmit_code();
            if (code >= 1 && c_.transmit_gate[c_.tpk(t, p, code)] && !knowledge_[std::size_t(t)][c_.pk(p, code)])
                continue;

            actions_.at(t, p) = v;
            auto& done = performed_[std::size_t(p)];
            const auto cls = std::size_t(v.kind());
            ++done[cls];

            bool ok = liveness_possible(p, c_.T - t - 1);
            if (ok && p == P - 1) {
                advance_knowledge(t);
                ok = row_feasible(t + 1);
            }
            if (ok && descend(cell + 1))
                return true;
            --done[cls];
        }
        return false;
    }

    bool liveness_possible(int p, int slots_left) const
    {
        int missing = 0;
        for (std::size_t cls = 0; cls < 3; ++cls)
            if (c_.must_perform[std::size_t(p)][cls] && performed_[std::size_t(p)][cls] == 0)
                ++missing;
        return missing <= slots_left;
    }

    void advance_knowledge(int t)
    {
        auto& next = knowledge_[std::size_t(t) + 1];
        if (!c_.learning) {
            std::fill(next.begin(), next.end(), 1);
            return;
        }
        next = knowledge_[std::size_t(t)];
        int speaker = -1, transmitters = 0;
        for (int s = 0; s < c_.P; ++s)
            if (actions_.at(t, s).is_transmit()) {
                speaker = s;
                ++transmitters;
            }
        if (transmitters != 1)
            return;
        const int code = actions_.at(t, speaker).transmit_code();
        if (code < 1)
            return;
        for (int l = 0; l < c_.P; ++l)
            if (l != speaker && actions_.at(t, l).is_listen() && c_.audible[c_.tls(t, l, speaker)])
                next[c_.pk(l, code)] = 1;
    }

    /// Admissible goal bound at time `row`: with learning on, a process
    /// gains at most one packet per slot.
    bool row_feasible(int row) const
    {
        const int left = c_.T - row;
        const auto& k = knowledge_[std::size_t(row)];
        for (int p = 0; p < c_.P; ++p) {
            int missing = 0;
            for (int pkt = 1; pkt <= c_.M; ++pkt)
                if (c_.goal[c_.pk(p, pkt)] && !k[c_.pk(p, pkt)])
                    ++missing;
            if (missing > 0 && (left == 0 || (c_.learning && missing > left)))
                return false;
        }
        if (row == 0)
            for (int p = 0; p < c_.P; ++p)
                if (!liveness_possible(p, c_.T))
                    return false;
        return true;
    }

    ProtocolTrace make_result() const
    {
        ProtocolTrace trace{cs_.spec(), actions_, {}};
        for (const auto& bits : knowledge_) {
            KnowledgeRow row(c_.P, c_.M);
            for (int p = 0; p < c_.P; ++p)
                for (int k = 1; k <= c_.M; ++k)
                    row.set(p, k, bits[c_.pk(p, k)] != 0);
            trace.knowledge.push_back(std::move(row));
        }
        return trace;
    }

    const ConstraintSystem& cs_;
    Compiled c_;
    std::vector<Action> values_;
    std::optional<std::uint64_t> limit_;
    std::uint64_t nodes_ = 0;
    ActionGrid actions_;
    std::vector<std::vector<std::uint8_t>> knowledge_;
    std::vector<std::array<int, 3>> performed_;
};

} // namespace

SolveResult solve(const ConstraintSystem& cs, const SearchConfig& config)
{
    if (!config.valid())
        throw SolverError("invalid search config: value order must be a permutation and node_limit >= 1");
    return Search(cs, config).run();
}

MinHorizonResult min_horizon(const NetworkSpec& spec, int t_max, const SearchConfig& config)
{
    if (spec.goal != GoalKind::AllKnowAll)
        throw SolverError("min_horizon requires goal = all-know-all");
    if (t_max < 0)
        throw SolverError("t_max must be non-negative");
    for (int T = 0; T <= t_max; ++T) {
        NetworkSpec at = spec;
        at.horizon = T;
        auto result = solve(encode(at), config);
        if (auto* sat = std::get_if<Sat>(&result))
            return HorizonFound{T, std::move(sat->trace)};
        if (std::holds_alternative<BudgetExhausted>(result))
            return Inconclusive{T};
    }
    return NotFoundWithin{t_max};
}

UnsatCore unsat_core_minimize(const ConstraintSystem& cs, const SearchConfig& config)
{
    auto first = solve(cs, config);
    if (std::holds_alternative<Sat>(first))
        throw SolverError("precondition violated: the constraint system is satisfiable");
    if (std::holds_alternative<BudgetExhausted>(first))
        throw SolverError("search budget exhausted before unsatisfiability was established");

    LabelSet core;
    for (auto l : cs.enabled().labels())
        if (!is_structural(l))
            core.insert(l);

    for (auto l : kAllLabels) {
        if (!core.contains(l))
            continue;
        LabelSet trial = core;
        trial.erase(l);
        auto r = solve(with_enabled(cs, trial), config);
        if (std::holds_alternative<BudgetExhausted>(r))
            throw SolverError("search budget exhausted during core minimization");
        if (std::holds_alternative<Unsat>(r))
            core = trial;
    }
    return UnsatCore{core};
}

} // namespace protoforge
