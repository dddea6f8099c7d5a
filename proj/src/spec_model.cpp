#include "protoforge/spec_model.hpp"
#include "protoforge/errors.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace protoforge {

namespace {

constexpr std::array<std::string_view, 9> kLabelNames = {
    "R1_ExactlyOneAction",  "R2_ContentDomain",  "R3_Liveness",
    "R4_InitialKnowledge",  "R5_TransmitOnlyKnown", "R6_NeverForgets",
    "R7_CollisionFreeLearning", "GOAL_Deadline", "TOPO_HearsRelation",
};

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\f\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::optional<int> parse_int(std::string_view s)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return value;
}

bool topology_consistent(const NetworkSpec& spec)
{
    switch (spec.topology.kind) {
    case TopologyKind::All:
        return spec.topology == topology_all(spec.processes);
    case TopologyKind::Line:
        return spec.topology == topology_line(spec.processes);
    case TopologyKind::Explicit:
        return true;
    }
    return false;
}

} // namespace

std::string_view label_name(RequirementLabel label)
{
    return kLabelNames[static_cast<std::size_t>(label)];
}

std::optional<RequirementLabel> label_from_name(std::string_view name)
{
    for (std::size_t i = 0; i < kLabelNames.size(); ++i)
        if (kLabelNames[i] == name)
            return kAllLabels[i];
    return std::nullopt;
}

std::size_t LabelSet::size() const
{
    std::size_t n = 0;
    for (auto l : kAllLabels)
        n += contains(l) ? 1 : 0;
    return n;
}

std::vector<RequirementLabel> LabelSet::labels() const
{
    std::vector<RequirementLabel> out;
    for (auto l : kAllLabels)
        if (contains(l))
            out.push_back(l);
    return out;
}

std::string to_string(const LabelSet& labels)
{
    std::string out = "{";
    bool first = true;
    for (auto l : labels.labels()) {
        if (!first)
            out += ", ";
        out += label_name(l);
        first = false;
    }
    return out + "}";
}

Topology topology_all(int processes)
{
    Topology t{TopologyKind::All, {}};
    for (int l = 0; l < processes; ++l)
        for (int s = 0; s < processes; ++s)
            if (l != s)
                t.hears.emplace(l, s);
    return t;
}

Topology topology_line(int processes)
{
    Topology t{TopologyKind::Line, {}};
    for (int p = 1; p < processes; ++p)
        t.hears.emplace(p, p - 1);
    return t;
}

Topology topology_explicit(std::set<std::pair<ProcessId, ProcessId>> hears)
{
    return Topology{TopologyKind::Explicit, std::move(hears)};
}

std::string_view topology_kind_name(TopologyKind kind)
{
    switch (kind) {
    case TopologyKind::All: return "all";
    case TopologyKind::Line: return "line";
    case TopologyKind::Explicit: return "explicit";
    }
    return "?";
}

std::string_view liveness_name(LivenessMode mode)
{
    return mode == LivenessMode::Off ? "off" : "each-action-once";
}

std::string_view goal_name(GoalKind goal)
{
    return goal == GoalKind::AllKnowAll ? "all-know-all" : "none";
}

std::vector<std::string> validate_spec(const NetworkSpec& spec)
{
    std::vector<std::string> errors;
    if (spec.processes < 1)
        errors.emplace_back("processes must be at least 1");
    if (spec.packets < 0)
        errors.emplace_back("packets must be non-negative");
    if (spec.horizon < 0)
        errors.emplace_back("horizon must be non-negative");
    if (spec.source < 0 || spec.source >= spec.processes)
        errors.emplace_back("source out of range");
    for (auto [l, s] : spec.topology.hears) {
        auto pair = "(" + std::to_string(l) + "," + std::to_string(s) + ")";
        if (l == s)
            errors.push_back("reflexive hears pair " + pair);
        if (l < 0 || s < 0 || l >= spec.processes || s >= spec.processes)
            errors.push_back("process id out of range in hears pair " + pair);
    }
    if (spec.processes >= 1 && !topology_consistent(spec))
        errors.push_back("hears relation does not match topology '" +
                         std::string(topology_kind_name(spec.topology.kind)) + "'");
    return errors;
}

NetworkSpec parse_spec(std::string_view text)
{
    std::map<std::string, std::pair<std::string, int>> values;
    std::set<std::pair<ProcessId, ProcessId>> hears;
    int first_hears_line = 0;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        auto line = trim(raw);
        if (line.empty())
            continue;

        if (line.starts_with("hears") && line.size() > 5 && (line[5] == ' ' || line[5] == '\t')) {
            std::istringstream in{std::string(line.substr(5))};
            std::string a, b, extra;
            in >> a >> b;
            auto l = parse_int(a), s = parse_int(b);
            if (!l || !s || (in >> extra))
                throw SpecError("expected 'hears <listener> <speaker>'", line_no);
            if (!hears.emplace(*l, *s).second)
                throw SpecError("duplicate hears pair", line_no);
            if (first_hears_line == 0)
                first_hears_line = line_no;
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw SpecError("expected 'key = value'", line_no);
        std::string key{trim(line.substr(0, eq))};
        std::string value{trim(line.substr(eq + 1))};
        if (key.empty() || value.empty())
            throw SpecError("expected 'key = value'", line_no);

        static const std::set<std::string> known = {"processes", "packets",  "horizon", "source",
                                                    "topology",  "liveness", "goal"};
        if (!known.contains(key))
            throw SpecError("unknown key '" + key + "'", line_no);
        if (values.contains(key))
            throw SpecError("duplicate key '" + key + "'", line_no);
        values.emplace(key, std::pair{value, line_no});
    }

    for (auto key : {"processes", "packets", "horizon", "source", "topology", "liveness", "goal"})
        if (!values.contains(key))
            throw SpecError(std::string("missing key '") + key + "'");

    auto int_value = [&](const char* key) {
        auto& [v, line] = values.at(key);
        auto n = parse_int(v);
        if (!n)
            throw SpecError(std::string("'") + key + "' expects an integer", line);
        return *n;
    };

    NetworkSpec spec;
    spec.processes = int_value("processes");
    spec.packets = int_value("packets");
    spec.horizon = int_value("horizon");
    spec.source = int_value("source");

    const auto& [topo, topo_line] = values.at("topology");
    if (topo == "all")
        spec.topology = topology_all(spec.processes);
    else if (topo == "line")
        spec.topology = topology_line(spec.processes);
    else if (topo == "explicit")
        spec.topology = topology_explicit(hears);
    else
        throw SpecError("topology must be all | line | explicit", topo_line);
    if (topo != "explicit" && !hears.empty())
        throw SpecError("hears lines require topology = explicit", first_hears_line);

    const auto& [live, live_line] = values.at("liveness");
    if (live == "off")
        spec.liveness = LivenessMode::Off;
    else if (live == "each-action-once")
        spec.liveness = LivenessMode::EachActionAtLeastOnce;
    else
        throw SpecError("liveness must be off | each-action-once", live_line);

    const auto& [goal, goal_line] = values.at("goal");
    if (goal == "all-know-all")
        spec.goal = GoalKind::AllKnowAll;
    else if (goal == "none")
        spec.goal = GoalKind::None;
    else
        throw SpecError("goal must be all-know-all | none", goal_line);

    if (auto errors = validate_spec(spec); !errors.empty()) {
        std::string msg = errors.front();
        for (std::size_t i = 1; i < errors.size(); ++i)
            msg += "; " + errors[i];
        throw SpecError(msg);
    }
    return spec;
}

std::string render_spec(const NetworkSpec& spec)
{
    std::ostringstream out;
    out << "processes = " << spec.processes << '\n'
        << "packets = " << spec.packets << '\n'
        << "horizon = " << spec.horizon << '\n'
        << "source = " << spec.source << '\n'
        << "topology = " << topology_kind_name(spec.topology.kind) << '\n';
    if (spec.topology.kind == TopologyKind::Explicit)
        for (auto [l, s] : spec.topology.hears)
            out << "hears " << l << ' ' << s << '\n';
    out << "liveness = " << liveness_name(spec.liveness) << '\n'
        << "goal = " << goal_name(spec.goal) << '\n';
    return out.str();
}

} // namespace protoforge
