#include "protoforge/encoder.hpp"
#include "protoforge/errors.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace protoforge {

namespace {

std::string_view action_class_name(ActionKind k)
{
    switch (k) {
    case ActionKind::Sleep: return "sleep";
    case ActionKind::Listen: return "listen";
    case ActionKind::Transmit: return "transmit";
    }
    return "?";
}

} // namespace

std::vector<Action> ConstraintSystem::domain() const
{
    std::vector<Action> d{Action::sleep(), Action::listen(), Action::transmit(Content::garbage())};
    for (PacketId k = 1; k <= spec_.packets; ++k)
        d.push_back(Action::transmit(Content::packet(k)));
    return d;
}

std::string to_string(const GroundConstraint& c)
{
    std::ostringstream out;
    out << label_name(c.label);
    if (c.time >= 0)
        out << " t=" << c.time;
    if (c.process >= 0)
        out << " p=" << c.process;
    if (c.packet >= 1)
        out << " k=" << c.packet;
    out << ": ";

    const int t = c.time, p = c.process, k = c.packet;
    switch (c.label) {
    case RequirementLabel::R1_ExactlyOneAction:
        out << "exactly one of sleep/listen/transmit at (" << t << "," << p << ")";
        break;
    case RequirementLabel::R2_ContentDomain:
        out << "-1 <= transmit(" << t << "," << p << ") <= M";
        break;
    case RequirementLabel::R3_Liveness:
        out << "process " << p << " performs " << action_class_name(*c.action) << " in some slot";
        break;
    case RequirementLabel::R4_InitialKnowledge:
        out << (c.initially_known ? "" : "not ") << "knows(0," << p << "," << k << ")";
        break;
    case RequirementLabel::R5_TransmitOnlyKnown:
        out << "transmit(" << t << "," << p << ")=" << k << " -> knows(" << t << "," << p << "," << k << ")";
        break;
    case RequirementLabel::R6_NeverForgets:
        out << "knows(" << t << "," << p << "," << k << ") -> knows(" << t + 1 << "," << p << "," << k << ")";
        break;
    case RequirementLabel::R7_CollisionFreeLearning:
        if (t == 0)
            out << "not knows(0," << p << "," << k << ")";
        else
            out << "knows(" << t << "," << p << "," << k << ") <-> knows(" << t - 1 << "," << p << "," << k
                << ") or learns(" << t - 1 << "," << p << "," << k << ")";
        break;
    case RequirementLabel::GOAL_Deadline:
        out << "knows(" << t << "," << p << "," << k << ")";
        break;
    case RequirementLabel::TOPO_HearsRelation: {
        out << "process " << p << " hears only {";
        for (std::size_t i = 0; i < c.speakers.size(); ++i)
            out << (i ? "," : "") << c.speakers[i];
        out << "}";
        break;
    }
    }
    return out.str();
}

ConstraintSystem encode(const NetworkSpec& spec)
{
    if (auto errors = validate_spec(spec); !errors.empty())
        throw EncodeError("invalid spec: " + errors.front());

    const int T = spec.horizon, P = spec.processes, M = spec.packets;
    ConstraintSystem cs;
    cs.spec_ = spec;
    cs.enabled_ = LabelSet::all();
    auto& out = cs.constraints_;

    auto add = [&](RequirementLabel label, int t, ProcessId p, PacketId k = -1) -> GroundConstraint& {
        GroundConstraint c;
        c.label = label;
        c.time = t;
        c.process = p;
        c.packet = k;
        out.push_back(std::move(c));
        return out.back();
    };

    for (int t = 0; t < T; ++t)
        for (ProcessId p = 0; p < P; ++p)
            add(RequirementLabel::R1_ExactlyOneAction, t, p);
    for (int t = 0; t < T; ++t)
        for (ProcessId p = 0; p < P; ++p)
            add(RequirementLabel::R2_ContentDomain, t, p);

    if (spec.liveness == LivenessMode::EachActionAtLeastOnce)
        for (ProcessId p = 0; p < P; ++p)
            for (auto kind : {ActionKind::Sleep, ActionKind::Listen, ActionKind::Transmit})
                add(RequirementLabel::R3_Liveness, -1, p).action = kind;

    for (ProcessId p = 0; p < P; ++p)
        for (PacketId k = 1; k <= M; ++k)
            add(RequirementLabel::R4_InitialKnowledge, 0, p, k).initially_known = (p == spec.source);

    for (int t = 0; t < T; ++t)
        for (ProcessId p = 0; p < P; ++p)
            for (PacketId k = 1; k <= M; ++k)
                add(RequirementLabel::R5_TransmitOnlyKnown, t, p, k);

    for (int t = 0; t < T; ++t)
        for (ProcessId p = 0; p < P; ++p)
            for (PacketId k = 1; k <= M; ++k)
                add(RequirementLabel::R6_NeverForgets, t, p, k);

    for (int t = 0; t <= T; ++t)
        for (ProcessId p = 0; p < P; ++p)
            for (PacketId k = 1; k <= M; ++k)
                if (t > 0 || p != spec.source)
                    add(RequirementLabel::R7_CollisionFreeLearning, t, p, k);

    if (spec.goal == GoalKind::AllKnowAll)
        for (ProcessId p = 0; p < P; ++p)
            for (PacketId k = 1; k <= M; ++k)
                add(RequirementLabel::GOAL_Deadline, T, p, k);

    for (int t = 0; t < T; ++t)
        for (ProcessId p = 0; p < P; ++p) {
            auto& c = add(RequirementLabel::TOPO_HearsRelation, t, p);
            for (ProcessId s = 0; s < P; ++s)
                if (spec.topology.can_hear(p, s))
                    c.speakers.push_back(s);
        }

    return cs;
}

Description describe(const ConstraintSystem& cs)
{
    Description d;
    for (auto l : kAllLabels)
        d.counts[l] = 0;

    std::vector<const GroundConstraint*> sorted;
    sorted.reserve(cs.constraints().size());
    for (const auto& c : cs.constraints()) {
        ++d.counts[c.label];
        sorted.push_back(&c);
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](const GroundConstraint* a, const GroundConstraint* b) {
        return std::tie(a->label, a->time, a->process, a->packet) <
               std::tie(b->label, b->time, b->process, b->packet);
    });

    std::ostringstream out;
    out << "# spec: P=" << cs.spec().processes << " M=" << cs.spec().packets << " T=" << cs.spec().horizon
        << " cells=" << cs.cell_count() << " domain=" << cs.domain_size() << '\n';
    for (auto l : kAllLabels)
        out << "# " << label_name(l) << " count=" << d.counts[l]
            << (cs.is_enabled(l) ? "" : " (disabled)") << '\n';
    for (const auto* c : sorted)
        out << to_string(*c) << '\n';
    d.listing = out.str();
    return d;
}

ConstraintSystem disable(const ConstraintSystem& cs, RequirementLabel label)
{
    if (is_structural(label))
        throw EncodeError(std::string(label_name(label)) + " is structural and cannot be disabled");
    if (!cs.is_enabled(label))
        throw EncodeError(std::string(label_name(label)) + " is not enabled");
    ConstraintSystem copy = cs;
    copy.enabled_.erase(label);
    return copy;
}

ConstraintSystem with_enabled(const ConstraintSystem& cs, const LabelSet& labels)
{
    ConstraintSystem copy = cs;
    copy.enabled_ = labels;
    copy.enabled_.insert(RequirementLabel::R1_ExactlyOneAction);
    copy.enabled_.insert(RequirementLabel::R2_ContentDomain);
    return copy;
}

} // namespace protoforge
