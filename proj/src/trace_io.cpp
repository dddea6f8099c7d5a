#include "json_util.hpp"
#include "protoforge/errors.hpp"
#include "protoforge/trace.hpp"

#include <set>
#include <sstream>

namespace protoforge {

namespace detail {

ojson spec_to_json(const NetworkSpec& spec)
{
    ojson j;
    j["processes"] = spec.processes;
    j["packets"] = spec.packets;
    j["horizon"] = spec.horizon;
    j["source"] = spec.source;
    j["topology"] = std::string(topology_kind_name(spec.topology.kind));
    if (spec.topology.kind == TopologyKind::Explicit) {
        ojson hears = ojson::array();
        for (auto [l, s] : spec.topology.hears)
            hears.push_back({l, s});
        j["hears"] = std::move(hears);
    }
    j["liveness"] = std::string(liveness_name(spec.liveness));
    j["goal"] = std::string(goal_name(spec.goal));
    return j;
}

NetworkSpec spec_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw TraceError("spec must be an object");
    static const std::set<std::string> known = {"processes", "packets",  "horizon", "source",
                                                "topology",  "hears",    "liveness", "goal"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.contains(it.key()))
            throw TraceError("unknown spec key '" + it.key() + "'");

    // Re-use the spec-file parser so both formats share one set of rules.
    std::ostringstream text;
    try {
        for (auto key : {"processes", "packets", "horizon", "source"})
            if (j.contains(key))
                text << key << " = " << j.at(key).get<int>() << '\n';
        for (auto key : {"topology", "liveness", "goal"})
            if (j.contains(key))
                text << key << " = " << j.at(key).get<std::string>() << '\n';
        if (j.contains("hears"))
            for (const auto& pair : j.at("hears")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw TraceError("hears entries must be [listener, speaker]");
                text << "hears " << pair[0].get<int>() << ' ' << pair[1].get<int>() << '\n';
            }
    } catch (const nlohmann::json::exception& e) {
        throw TraceError(std::string("spec field has wrong type: ") + e.what());
    }
    try {
        return parse_spec(text.str());
    } catch (const SpecError& e) {
        throw TraceError(std::string("invalid embedded spec: ") + e.what());
    }
}

} // namespace detail

std::string write_trace(const ProtocolTrace& trace)
{
    using detail::ojson;
    const auto& spec = trace.spec;
    std::ostringstream out;
    out << "{\n  \"spec\": " << detail::spec_to_json(spec).dump() << ",\n  \"actions\": [";
    for (int t = 0; t < trace.actions.slots(); ++t) {
        ojson row = ojson::array();
        for (ProcessId p = 0; p < trace.actions.processes(); ++p)
            row.push_back(to_string(trace.actions.at(t, p)));
        out << (t ? ",\n    " : "\n    ") << row.dump();
    }
    out << (trace.actions.slots() ? "\n  ],\n" : "],\n");

    // knowledge[t][p] lists the packet ids p knows at time t.
    out << "  \"knowledge\": [";
    for (std::size_t t = 0; t < trace.knowledge.size(); ++t) {
        const auto& row = trace.knowledge[t];
        ojson j = ojson::array();
        for (ProcessId p = 0; p < row.processes(); ++p) {
            ojson known = ojson::array();
            for (PacketId k = 1; k <= row.packets(); ++k)
                if (row.knows(p, k))
                    known.push_back(k);
            j.push_back(std::move(known));
        }
        out << (t ? ",\n    " : "\n    ") << j.dump();
    }
    out << (trace.knowledge.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return out.str();
}

ProtocolTrace read_trace(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw TraceError(std::string("syntax error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("spec") || !doc.contains("actions"))
        throw TraceError("trace must be an object with 'spec' and 'actions'");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "spec" && it.key() != "actions" && it.key() != "knowledge")
            throw TraceError("unknown trace key '" + it.key() + "'");

    const NetworkSpec spec = detail::spec_from_json(doc.at("spec"));
    const auto& rows = doc.at("actions");
    if (!rows.is_array() || rows.size() != std::size_t(spec.horizon))
        throw TraceError("dimension mismatch: expected " + std::to_string(spec.horizon) + " action rows");

    ActionGrid actions(spec.horizon, spec.processes);
    for (int t = 0; t < spec.horizon; ++t) {
        const auto& row = rows[std::size_t(t)];
        if (!row.is_array() || row.size() != std::size_t(spec.processes))
            throw TraceError("dimension mismatch: action row " + std::to_string(t) + " must have " +
                             std::to_string(spec.processes) + " entries");
        for (ProcessId p = 0; p < spec.processes; ++p) {
            const auto& cell = row[std::size_t(p)];
            if (!cell.is_string())
                throw TraceError("action at (" + std::to_string(t) + "," + std::to_string(p) + ") must be a string");
            auto a = action_from_string(cell.get<std::string>());
            if (!a)
                throw TraceError("unknown action code '" + cell.get<std::string>() + "' at (" + std::to_string(t) +
                                 "," + std::to_string(p) + ")");
            if (a->transmit_code() > spec.packets)
                throw TraceError("unknown content code " + std::to_string(a->transmit_code()) + " at (" +
                                 std::to_string(t) + "," + std::to_string(p) + ")");
            actions.at(t, p) = *a;
        }
    }

    ProtocolTrace trace = make_trace(spec, std::move(actions));

    if (doc.contains("knowledge")) {
        const auto& know = doc.at("knowledge");
        if (!know.is_array() || know.size() != trace.knowledge.size())
            throw TraceError("dimension mismatch: knowledge must have " + std::to_string(trace.knowledge.size()) +
                             " rows");
        for (std::size_t t = 0; t < know.size(); ++t) {
            if (!know[t].is_array() || know[t].size() != std::size_t(spec.processes))
                throw TraceError("dimension mismatch: knowledge row " + std::to_string(t));
            KnowledgeRow row(spec.processes, spec.packets);
            for (ProcessId p = 0; p < spec.processes; ++p)
                for (const auto& k : know[t][std::size_t(p)]) {
                    if (!k.is_number_integer() || k.get<int>() < 1 || k.get<int>() > spec.packets)
                        throw TraceError("knowledge entry out of range in row " + std::to_string(t));
                    row.set(p, k.get<int>());
                }
            if (!(row == trace.knowledge[t]))
                throw TraceError("knowledge row " + std::to_string(t) + " does not match the derived knowledge");
        }
    }
    return trace;
}

} // namespace protoforge
