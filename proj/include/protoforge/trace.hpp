#pragma once

#include "protoforge/action.hpp"
#include "protoforge/spec_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace protoforge {

/// Which process knows which packet at one instant: a P x M boolean matrix.
class KnowledgeRow {
public:
    KnowledgeRow() = default;
    KnowledgeRow(int processes, int packets, bool fill = false)
        : processes_(processes), packets_(packets),
          bits_(std::size_t(processes) * std::size_t(packets), fill ? 1 : 0)
    {
    }

    int processes() const { return processes_; }
    int packets() const { return packets_; }

    /// Packet ids are 1-based.
    bool knows(ProcessId p, PacketId k) const { return bits_[index(p, k)] != 0; }
    void set(ProcessId p, PacketId k, bool v = true) { bits_[index(p, k)] = v ? 1 : 0; }

    int count(ProcessId p) const;
    bool knows_all(ProcessId p) const { return count(p) == packets_; }
    bool all_know_all() const;

    bool operator==(const KnowledgeRow&) const = default;

private:
    std::size_t index(ProcessId p, PacketId k) const
    {
        return std::size_t(p) * std::size_t(packets_) + std::size_t(k - 1);
    }
    int processes_ = 0;
    int packets_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// (T+1) rows; row t is the knowledge at the start of slot t.
using KnowledgeGrid = std::vector<KnowledgeRow>;

/// A synthesized protocol: the action grid plus the knowledge it induces.
struct ProtocolTrace {
    NetworkSpec spec;
    ActionGrid actions;
    KnowledgeGrid knowledge;

    bool operator==(const ProtocolTrace&) const = default;
};

/// Row 0: the source knows every packet, nobody else knows anything.
KnowledgeRow initial_knowledge(const NetworkSpec& spec);

/// Learning rule. A listener p gains packet k when exactly one process in
/// the whole network transmits, that transmission is Packet k, and p can
/// hear the transmitter. Garbage counts as a transmission but carries nothing.
KnowledgeRow step_knowledge(const KnowledgeRow& now, std::span<const Action> acts, const Topology& topo);

KnowledgeGrid derive_knowledge(const NetworkSpec& spec, const ActionGrid& actions);

/// Largest knowledge grid consistent with the enabled knowledge labels
/// (R4, R7, TOPO). Every other requirement is monotone in knowledge, so an
/// action grid is feasible under `enabled` iff it validates with this grid.
/// Equals derive_knowledge when all labels are enabled.
KnowledgeGrid witness_knowledge(const NetworkSpec& spec, const ActionGrid& actions, const LabelSet& enabled);

/// Builds a trace with derived knowledge.
ProtocolTrace make_trace(const NetworkSpec& spec, ActionGrid actions);

struct Violation {
    RequirementLabel label{};
    int time = 0;
    std::optional<ProcessId> process;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& v);

/// Independent requirement checker. One violation per offending
/// (label, time, process). Throws TraceError on dimension mismatch.
std::vector<Violation> validate(const ProtocolTrace& trace, const LabelSet& enabled);

/// validate(...).empty() without building violation records.
bool satisfies(const ProtocolTrace& trace, const LabelSet& enabled);

/// JSON trace file: spec, actions, knowledge (in that order).
std::string write_trace(const ProtocolTrace& trace);
ProtocolTrace read_trace(std::string_view text);

} // namespace protoforge
