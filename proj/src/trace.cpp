#include "protoforge/trace.hpp"
#include "protoforge/errors.hpp"

#include <sstream>

namespace protoforge {

namespace {

std::optional<ProcessId> sole_transmitter(std::span<const Action> acts)
{
    std::optional<ProcessId> found;
    for (std::size_t p = 0; p < acts.size(); ++p) {
        if (!acts[p].is_transmit())
            continue;
        if (found)
            return std::nullopt;
        found = ProcessId(p);
    }
    return found;
}

/// Packet p learns during this slot, or 0.
PacketId learned_packet(std::span<const Action> acts, std::optional<ProcessId> speaker, ProcessId p,
                        const Topology& topo, int packets)
{
    if (!speaker || !acts[std::size_t(p)].is_listen() || !topo.can_hear(p, *speaker))
        return 0;
    auto code = acts[std::size_t(*speaker)].transmit_code();
    return code >= 1 && code <= packets ? code : 0;
}

std::string packet_list(const std::vector<PacketId>& ks)
{
    std::string s;
    for (std::size_t i = 0; i < ks.size(); ++i)
        s += (i ? "," : "") + std::to_string(ks[i]);
    return s;
}

void check_dimensions(const ProtocolTrace& trace)
{
    const auto& spec = trace.spec;
    if (trace.actions.slots() != spec.horizon || trace.actions.processes() != spec.processes)
        throw TraceError("dimension mismatch: action grid is " + std::to_string(trace.actions.slots()) + "x" +
                         std::to_string(trace.actions.processes()) + ", spec expects " +
                         std::to_string(spec.horizon) + "x" + std::to_string(spec.processes));
    if (trace.knowledge.size() != std::size_t(spec.horizon) + 1)
        throw TraceError("dimension mismatch: knowledge grid has " + std::to_string(trace.knowledge.size()) +
                         " rows, expected " + std::to_string(spec.horizon + 1));
    for (const auto& row : trace.knowledge)
        if (row.processes() != spec.processes || row.packets() != spec.packets)
            throw TraceError("dimension mismatch: knowledge row is not P x M");
}

/// Walks every requirement. `sink(label, time, process, detail_fn)` returns
/// false to stop early; detail_fn() builds the human-readable reason.
template <class Sink>
void check_requirements(const ProtocolTrace& trace, const LabelSet& enabled, Sink&& sink)
{
    check_dimensions(trace);
    const auto& spec = trace.spec;
    const auto& acts = trace.actions;
    const auto& know = trace.knowledge;
    const int T = spec.horizon, P = spec.processes, M = spec.packets;
    using L = RequirementLabel;

    if (enabled.contains(L::R1_ExactlyOneAction) || enabled.contains(L::R2_ContentDomain)) {
        for (int t = 0; t < T; ++t)
            for (ProcessId p = 0; p < P; ++p) {
                const Action a = acts.at(t, p);
                int n = int(a.is_sleep()) + int(a.is_listen()) + int(a.is_transmit());
                if (enabled.contains(L::R1_ExactlyOneAction) && n != 1)
                    if (!sink(L::R1_ExactlyOneAction, t, p, [&] { return std::string("not exactly one action"); }))
                        return;
                bool code_ok = a.is_transmit() ? (a.transmit_code() >= 0 && a.transmit_code() <= M)
                                               : a.transmit_code() == -1;
                if (enabled.contains(L::R2_ContentDomain) && !code_ok)
                    if (!sink(L::R2_ContentDomain, t, p, [&] {
                            return "content code " + std::to_string(a.transmit_code()) + " outside [-1," +
                                   std::to_string(M) + "]";
                        }))
                        return;
            }
    }

    if (enabled.contains(L::R3_Liveness) && spec.liveness == LivenessMode::EachActionAtLeastOnce) {
        for (ProcessId p = 0; p < P; ++p) {
            bool slept = false, listened = false, sent = false;
            for (int t = 0; t < T; ++t) {
                slept |= acts.at(t, p).is_sleep();
                listened |= acts.at(t, p).is_listen();
                sent |= acts.at(t, p).is_transmit();
            }
            if (!(slept && listened && sent))
                if (!sink(L::R3_Liveness, T, p, [&] {
                        std::string missing;
                        if (!slept) missing += " sleep";
                        if (!listened) missing += " listen";
                        if (!sent) missing += " transmit";
                        return "never performs:" + missing;
                    }))
                    return;
        }
    }

    if (enabled.contains(L::R4_InitialKnowledge)) {
        const KnowledgeRow expected = initial_knowledge(spec);
        for (ProcessId p = 0; p < P; ++p) {
            std::vector<PacketId> wrong;
            for (PacketId k = 1; k <= M; ++k)
                if (know[0].knows(p, k) != expected.knows(p, k))
                    wrong.push_back(k);
            if (!wrong.empty())
                if (!sink(L::R4_InitialKnowledge, 0, p,
                          [&] { return "initial knowledge wrong for packet(s) " + packet_list(wrong); }))
                    return;
        }
    }

    if (enabled.contains(L::R5_TransmitOnlyKnown)) {
        for (int t = 0; t < T; ++t)
            for (ProcessId p = 0; p < P; ++p) {
                const int code = acts.at(t, p).transmit_code();
                if (code >= 1 && code <= M && !know[std::size_t(t)].knows(p, code))
                    if (!sink(L::R5_TransmitOnlyKnown, t, p,
                              [&] { return "transmits packet " + std::to_string(code) + " it does not know"; }))
                        return;
            }
    }

    if (enabled.contains(L::R6_NeverForgets)) {
        for (int t = 0; t < T; ++t)
            for (ProcessId p = 0; p < P; ++p) {
                std::vector<PacketId> lost;
                for (PacketId k = 1; k <= M; ++k)
                    if (know[std::size_t(t)].knows(p, k) && !know[std::size_t(t) + 1].knows(p, k))
                        lost.push_back(k);
                if (!lost.empty())
                    if (!sink(L::R6_NeverForgets, t + 1, p, [&] { return "forgets packet(s) " + packet_list(lost); }))
                        return;
            }
    }

    if (enabled.contains(L::R7_CollisionFreeLearning)) {
        const Topology audible =
            enabled.contains(L::TOPO_HearsRelation) ? spec.topology : topology_all(P);
        for (ProcessId p = 0; p < P; ++p) {
            if (p == spec.source)
                continue;
            std::vector<PacketId> unearned;
            for (PacketId k = 1; k <= M; ++k)
                if (know[0].knows(p, k))
                    unearned.push_back(k);
            if (!unearned.empty())
                if (!sink(L::R7_CollisionFreeLearning, 0, p,
                          [&] { return "knows packet(s) " + packet_list(unearned) + " before any learning"; }))
                    return;
        }
        for (int t = 0; t < T; ++t) {
            const auto row = acts.row(t);
            const auto speaker = sole_transmitter(row);
            for (ProcessId p = 0; p < P; ++p) {
                const PacketId learned = learned_packet(row, speaker, p, audible, M);
                std::vector<PacketId> unearned, missed;
                for (PacketId k = 1; k <= M; ++k) {
                    const bool now = know[std::size_t(t)].knows(p, k);
                    const bool next = know[std::size_t(t) + 1].knows(p, k);
                    if (next && !now && learned != k)
                        unearned.push_back(k);
                    if (learned == k && !next)
                        missed.push_back(k);
                }
                if (!unearned.empty() || !missed.empty())
                    if (!sink(L::R7_CollisionFreeLearning, t + 1, p, [&] {
                            std::string d;
                            if (!unearned.empty())
                                d += "gains packet(s) " + packet_list(unearned) + " without a collision-free reception";
                            if (!missed.empty())
                                d += std::string(d.empty() ? "" : "; ") + "does not learn received packet " +
                                     packet_list(missed);
                            return d;
                        }))
                        return;
            }
        }
    }

    if (enabled.contains(L::GOAL_Deadline) && spec.goal == GoalKind::AllKnowAll) {
        for (ProcessId p = 0; p < P; ++p) {
            std::vector<PacketId> missing;
            for (PacketId k = 1; k <= M; ++k)
                if (!know[std::size_t(T)].knows(p, k))
                    missing.push_back(k);
            if (!missing.empty())
                if (!sink(L::GOAL_Deadline, T, p,
                          [&] { return "missing packet(s) " + packet_list(missing) + " at the deadline"; }))
                    return;
        }
    }
}

} // namespace

int KnowledgeRow::count(ProcessId p) const
{
    int n = 0;
    for (PacketId k = 1; k <= packets_; ++k)
        n += knows(p, k) ? 1 : 0;
    return n;
}

bool KnowledgeRow::all_know_all() const
{
    for (auto b : bits_)
        if (!b)
            return false;
    return true;
}

KnowledgeRow initial_knowledge(const NetworkSpec& spec)
{
    KnowledgeRow row(spec.processes, spec.packets);
    for (PacketId k = 1; k <= spec.packets; ++k)
        row.set(spec.source, k);
    return row;
}

KnowledgeRow step_knowledge(const KnowledgeRow& now, std::span<const Action> acts, const Topology& topo)
{
    KnowledgeRow next = now;
    const auto speaker = sole_transmitter(acts);
    for (ProcessId p = 0; p < now.processes(); ++p)
        if (PacketId k = learned_packet(acts, speaker, p, topo, now.packets()); k != 0)
            next.set(p, k);
    return next;
}

KnowledgeGrid derive_knowledge(const NetworkSpec& spec, const ActionGrid& actions)
{
    KnowledgeGrid grid;
    grid.reserve(std::size_t(spec.horizon) + 1);
    grid.push_back(initial_knowledge(spec));
    for (int t = 0; t < spec.horizon; ++t) {
        const auto row = actions.row(t);
        grid.push_back(step_knowledge(grid.back(), row, spec.topology));
    }
    return grid;
}

KnowledgeGrid witness_knowledge(const NetworkSpec& spec, const ActionGrid& actions, const LabelSet& enabled)
{
    using L = RequirementLabel;
    const int P = spec.processes, M = spec.packets;
    const bool learning = enabled.contains(L::R7_CollisionFreeLearning);

    KnowledgeRow first(P, M, true);
    if (enabled.contains(L::R4_InitialKnowledge))
        first = initial_knowledge(spec);
    if (learning)
        for (ProcessId p = 0; p < P; ++p)
            if (p != spec.source)
                for (PacketId k = 1; k <= M; ++k)
                    first.set(p, k, false);

    const Topology audible = enabled.contains(L::TOPO_HearsRelation) ? spec.topology : topology_all(P);
    KnowledgeGrid grid{first};
    for (int t = 0; t < spec.horizon; ++t) {
        if (learning) {
            const auto row = actions.row(t);
            grid.push_back(step_knowledge(grid.back(), row, audible));
        } else {
            grid.emplace_back(P, M, true);
        }
    }
    return grid;
}

ProtocolTrace make_trace(const NetworkSpec& spec, ActionGrid actions)
{
    ProtocolTrace trace{spec, std::move(actions), {}};
    trace.knowledge = derive_knowledge(spec, trace.actions);
    return trace;
}

std::string to_string(const Violation& v)
{
    std::ostringstream out;
    out << label_name(v.label) << " t=" << v.time;
    if (v.process)
        out << " p=" << *v.process;
    out << ": " << v.detail;
    return out.str();
}

std::vector<Violation> validate(const ProtocolTrace& trace, const LabelSet& enabled)
{
    std::vector<Violation> out;
    check_requirements(trace, enabled, [&](RequirementLabel label, int t, ProcessId p, auto&& detail) {
        out.push_back(Violation{label, t, p, detail()});
        return true;
    });
    return out;
}

bool satisfies(const ProtocolTrace& trace, const LabelSet& enabled)
{
    bool ok = true;
    check_requirements(trace, enabled, [&](RequirementLabel, int, ProcessId, auto&&) {
        ok = false;
        return false;
    });
    return ok;
}

} // namespace protoforge
