#pragma once

#include "protoforge/action.hpp"
#include "protoforge/spec_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace protoforge {

/// One grounded requirement instance. Which index fields are meaningful
/// depends on the label; unused ones stay at -1.
///
///   R1, R2        (t, p)       the cell holds exactly one in-domain action
///   R3            (p, action)  p performs `action` in some slot of [0,T)
///   R4            (t=0, p, k)  knows(0,p,k) == initially_known
///   R5            (t, p, k)    transmit(t,p) = k  =>  knows(t,p,k)
///   R6            (t, p, k)    knows(t,p,k)  =>  knows(t+1,p,k)
///   R7            (t, p, k)    t = 0, p != source: not knows(0,p,k)
///                              t >= 1: knows(t,p,k) <=> knows(t-1,p,k) or learned at slot t-1
///   GOAL          (t=T, p, k)  knows(T,p,k)
///   TOPO          (t, p)       at slot t, p can only hear `speakers`
struct GroundConstraint {
    RequirementLabel label{};
    int time = -1;
    ProcessId process = -1;
    PacketId packet = -1;
    std::optional<ActionKind> action;
    bool initially_known = false;
    std::vector<ProcessId> speakers;

    bool operator==(const GroundConstraint&) const = default;
};

std::string to_string(const GroundConstraint& c);

/// Grounded, labeled constraint system over one (M+3)-valued action
/// variable per (time, process) cell. Immutable once built.
class ConstraintSystem {
public:
    const NetworkSpec& spec() const { return spec_; }
    const std::vector<GroundConstraint>& constraints() const { return constraints_; }
    const LabelSet& enabled() const { return enabled_; }
    bool is_enabled(RequirementLabel l) const { return enabled_.contains(l); }

    int cell_count() const { return spec_.horizon * spec_.processes; }
    /// Sleep, Listen, Transmit(Garbage), Transmit(Packet 1..M).
    int domain_size() const { return spec_.packets + 3; }
    std::vector<Action> domain() const;

private:
    friend ConstraintSystem encode(const NetworkSpec& spec);
    friend ConstraintSystem disable(const ConstraintSystem& cs, RequirementLabel label);
    friend ConstraintSystem with_enabled(const ConstraintSystem& cs, const LabelSet& labels);

    NetworkSpec spec_;
    std::vector<GroundConstraint> constraints_;
    LabelSet enabled_;
};

ConstraintSystem encode(const NetworkSpec& spec);

struct Description {
    std::map<RequirementLabel, std::size_t> counts;
    std::string listing;
};

/// Per-label counts plus a deterministic listing sorted by label, time, process.
Description describe(const ConstraintSystem& cs);

/// Copy of `cs` without `label`. Throws EncodeError for structural labels
/// and for labels that are not currently enabled.
ConstraintSystem disable(const ConstraintSystem& cs, RequirementLabel label);

/// Copy of `cs` whose enabled set is exactly `labels` plus the structural ones.
ConstraintSystem with_enabled(const ConstraintSystem& cs, const LabelSet& labels);

} // namespace protoforge
