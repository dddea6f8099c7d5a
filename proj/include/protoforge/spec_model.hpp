#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace protoforge {

// Process ids are 0-based. Packet ids are 1-based; 0 is garbage and -1 is
// "not transmitting" in the integer content-code convention.
using ProcessId = int;
using PacketId = int;

enum class TopologyKind { All, Line, Explicit };

/// Who can hear whom: a set of (listener, speaker) pairs.
struct Topology {
    TopologyKind kind = TopologyKind::All;
    std::set<std::pair<ProcessId, ProcessId>> hears;

    bool can_hear(ProcessId listener, ProcessId speaker) const
    {
        return hears.contains({listener, speaker});
    }
    bool operator==(const Topology&) const = default;
};

Topology topology_all(int processes);
Topology topology_line(int processes);
Topology topology_explicit(std::set<std::pair<ProcessId, ProcessId>> hears);

enum class LivenessMode { Off, EachActionAtLeastOnce };
enum class GoalKind { AllKnowAll, None };

struct NetworkSpec {
    int processes = 1;
    int packets = 0;
    int horizon = 0;
    ProcessId source = 0;
    Topology topology{};
    LivenessMode liveness = LivenessMode::Off;
    GoalKind goal = GoalKind::None;

    bool operator==(const NetworkSpec&) const = default;
};

/// Requirement catalog. Order here is the taxonomy order used for
/// listings and for unsat-core deletion.
enum class RequirementLabel : std::uint8_t {
    R1_ExactlyOneAction,
    R2_ContentDomain,
    R3_Liveness,
    R4_InitialKnowledge,
    R5_TransmitOnlyKnown,
    R6_NeverForgets,
    R7_CollisionFreeLearning,
    GOAL_Deadline,
    TOPO_HearsRelation,
};

inline constexpr std::array<RequirementLabel, 9> kAllLabels = {
    RequirementLabel::R1_ExactlyOneAction,     RequirementLabel::R2_ContentDomain,
    RequirementLabel::R3_Liveness,             RequirementLabel::R4_InitialKnowledge,
    RequirementLabel::R5_TransmitOnlyKnown,    RequirementLabel::R6_NeverForgets,
    RequirementLabel::R7_CollisionFreeLearning, RequirementLabel::GOAL_Deadline,
    RequirementLabel::TOPO_HearsRelation,
};

std::string_view label_name(RequirementLabel label);
std::optional<RequirementLabel> label_from_name(std::string_view name);

/// R1 and R2 are carried by the variable domain itself.
constexpr bool is_structural(RequirementLabel label)
{
    return label == RequirementLabel::R1_ExactlyOneAction ||
           label == RequirementLabel::R2_ContentDomain;
}

/// Small value-type set of requirement labels, iterated in taxonomy order.
class LabelSet {
public:
    constexpr LabelSet() = default;
    LabelSet(std::initializer_list<RequirementLabel> labels)
    {
        for (auto l : labels)
            insert(l);
    }

    static LabelSet all()
    {
        LabelSet s;
        for (auto l : kAllLabels)
            s.insert(l);
        return s;
    }

    bool contains(RequirementLabel l) const { return (bits_ >> bit(l)) & 1U; }
    void insert(RequirementLabel l) { bits_ |= std::uint16_t(1U << bit(l)); }
    void erase(RequirementLabel l) { bits_ &= std::uint16_t(~(1U << bit(l))); }
    bool empty() const { return bits_ == 0; }
    std::size_t size() const;
    std::vector<RequirementLabel> labels() const;

    bool is_subset_of(const LabelSet& other) const { return (bits_ & ~other.bits_) == 0; }
    bool operator==(const LabelSet&) const = default;

private:
    static unsigned bit(RequirementLabel l) { return static_cast<unsigned>(l); }
    std::uint16_t bits_ = 0;
};

std::string to_string(const LabelSet& labels);

// Spec file format: `key = value` lines, `#` comments, plus
// `hears <listener> <speaker>` lines when topology = explicit.
NetworkSpec parse_spec(std::string_view text);
std::string render_spec(const NetworkSpec& spec);

/// Empty when every invariant holds; otherwise one message per violation.
std::vector<std::string> validate_spec(const NetworkSpec& spec);

std::string_view topology_kind_name(TopologyKind kind);
std::string_view liveness_name(LivenessMode mode);
std::string_view goal_name(GoalKind goal);

} // namespace protoforge
