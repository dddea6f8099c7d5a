#include "json_util.hpp"
#include "protoforge/errors.hpp"
#include "protoforge/sim.hpp"

#include <iomanip>
#include <numeric>
#include <sstream>

namespace protoforge {

namespace {

std::string units(double v)
{
    std::ostringstream out;
    out << v;
    return out.str();
}

void charge(SimReport& r, const std::vector<Action>& row)
{
    int transmitters = 0;
    for (std::size_t p = 0; p < row.size(); ++p) {
        r.per_process_power[p] += row[p].is_sleep() ? r.power.idle_cost : r.power.active_cost;
        transmitters += row[p].is_transmit() ? 1 : 0;
    }
    if (transmitters >= 2)
        ++r.concurrent_tx_slots;
}

SimReport start_report(const NetworkSpec& spec, const PowerModel& power)
{
    if (power.active_cost < 0 || power.idle_cost < 0)
        throw SimError("power costs must be non-negative");
    SimReport r;
    r.spec = spec;
    r.power = power;
    r.per_process_power.assign(std::size_t(spec.processes), 0.0);
    return r;
}

void finish_report(SimReport& r)
{
    r.total_power = std::accumulate(r.per_process_power.begin(), r.per_process_power.end(), 0.0);
}

detail::ojson report_object(const SimReport& r)
{
    using detail::ojson;
    ojson j;
    j["spec"] = detail::spec_to_json(r.spec);
    j["active_cost"] = r.power.active_cost;
    j["idle_cost"] = r.power.idle_cost;
    j["slots_run"] = r.slots_run;
    j["total_power"] = r.total_power;
    j["per_process_power"] = r.per_process_power;
    j["concurrent_tx_slots"] = r.concurrent_tx_slots;
    j["collision_detection_needed"] = r.collision_detection_needed();
    j["completed"] = r.completed;
    j["completion_slot"] = r.completion_slot ? ojson(*r.completion_slot) : ojson(nullptr);
    ojson delivered = ojson::array();
    for (ProcessId p = 0; p < r.delivered.processes(); ++p) {
        ojson known = ojson::array();
        for (PacketId k = 1; k <= r.delivered.packets(); ++k)
            if (r.delivered.knows(p, k))
                known.push_back(k);
        delivered.push_back(std::move(known));
    }
    j["delivered"] = std::move(delivered);
    return j;
}

bool same_instance(const NetworkSpec& a, const NetworkSpec& b)
{
    NetworkSpec x = a, y = b;
    x.horizon = y.horizon = 0;
    return x == y;
}

} // namespace

SimReport simulate_trace(const ProtocolTrace& trace, const PowerModel& power)
{
    LabelSet guard = LabelSet::all();
    guard.erase(RequirementLabel::GOAL_Deadline);
    if (auto violations = validate(trace, guard); !violations.empty())
        throw SimError("invalid trace: " + to_string(violations.front()));

    const auto& spec = trace.spec;
    SimReport r = start_report(spec, power);
    KnowledgeRow know = initial_knowledge(spec);
    if (know.all_know_all())
        r.completion_slot = 0;
    for (int t = 0; t < spec.horizon; ++t) {
        const auto row = trace.actions.row(t);
        charge(r, row);
        know = step_knowledge(know, row, spec.topology);
        if (!r.completion_slot && know.all_know_all())
            r.completion_slot = t + 1;
    }
    r.slots_run = spec.horizon;
    r.delivered = know;
    r.completed = r.completion_slot.has_value();
    finish_report(r);
    return r;
}

BaselineRun run_baseline(const NetworkSpec& spec, const PowerModel& power, int max_slots)
{
    if (auto errors = validate_spec(spec); !errors.empty())
        throw SimError("invalid spec: " + errors.front());
    if (max_slots < 0)
        throw SimError("max_slots must be non-negative");

    const int P = spec.processes, M = spec.packets;
    SimReport r = start_report(spec, power);
    KnowledgeRow know = initial_knowledge(spec);
    KnowledgeGrid grid{know};
    std::vector<std::vector<Action>> rows;
    std::vector<int> sent(std::size_t(P), 0);

    int t = 0;
    for (; t < max_slots && !know.all_know_all(); ++t) {
        std::vector<Action> row(std::size_t(P), Action::listen());
        for (ProcessId p = 0; p < P; ++p)
            if (M > 0 && know.knows_all(p))
                row[std::size_t(p)] = Action::transmit(Content::packet(sent[std::size_t(p)]++ % M + 1));

        KnowledgeRow next = know;
        for (ProcessId l = 0; l < P; ++l) {
            if (!row[std::size_t(l)].is_listen())
                continue;
            int audible_tx = 0, heard = 0;
            for (ProcessId s = 0; s < P; ++s)
                if (s != l && row[std::size_t(s)].is_transmit() && spec.topology.can_hear(l, s)) {
                    ++audible_tx;
                    heard = row[std::size_t(s)].transmit_code();
                }
            if (audible_tx == 1 && heard >= 1)
                next.set(l, heard);
        }
        charge(r, row);
        rows.push_back(std::move(row));
        know = std::move(next);
        grid.push_back(know);
    }

    r.slots_run = t;
    r.delivered = know;
    r.completed = know.all_know_all();
    if (r.completed)
        r.completion_slot = t;
    finish_report(r);

    NetworkSpec ran = spec;
    ran.horizon = t;
    ActionGrid actions(t, P);
    for (int i = 0; i < t; ++i)
        for (ProcessId p = 0; p < P; ++p)
            actions.at(i, p) = rows[std::size_t(i)][std::size_t(p)];
    r.spec = ran;
    return BaselineRun{ProtocolTrace{ran, std::move(actions), std::move(grid)}, std::move(r)};
}

ComparisonReport compare(const SimReport& synthesized, const SimReport& baseline)
{
    if (!same_instance(synthesized.spec, baseline.spec))
        throw SimError("cannot compare reports from different specs");
    if (!(synthesized.power == baseline.power))
        throw SimError("cannot compare reports with different power models");

    ComparisonReport c{synthesized, baseline, {}, {}};
    const auto s = units(synthesized.total_power), b = units(baseline.total_power);
    if (synthesized.total_power < baseline.total_power)
        c.power_verdict = "synthesized uses less power: " + s + " pw < " + b + " pw";
    else if (synthesized.total_power > baseline.total_power)
        c.power_verdict = "baseline uses less power: " + b + " pw < " + s + " pw";
    else
        c.power_verdict = "tie: " + s + " pw each";

    auto need = [](const SimReport& r) { return r.collision_detection_needed() ? "required" : "not required"; };
    if (synthesized.collision_detection_needed() == baseline.collision_detection_needed())
        c.collision_verdict = std::string("collision detection: tie (") + need(baseline) + " for both)";
    else
        c.collision_verdict =
            std::string("collision detection: baseline ") + need(baseline) + ", synthesized " + need(synthesized);
    return c;
}

std::string render_report(const SimReport& r)
{
    std::ostringstream out;
    out << "slots run:            " << r.slots_run << '\n'
        << "total power:          " << units(r.total_power) << " pw\n"
        << "per-process power:   ";
    for (double v : r.per_process_power)
        out << ' ' << units(v);
    out << '\n'
        << "concurrent tx slots:  " << r.concurrent_tx_slots << '\n'
        << "collision detection:  " << (r.collision_detection_needed() ? "required" : "not required") << '\n'
        << "completed:            " << (r.completed ? "yes" : "no");
    if (r.completion_slot)
        out << " (slot " << *r.completion_slot << ")";
    out << '\n';
    return out.str();
}

std::string report_json(const SimReport& r)
{
    return report_object(r).dump(2);
}

std::string ComparisonReport::text() const
{
    auto yn = [](bool v) { return v ? "yes" : "no"; };
    auto cd = [](const SimReport& r) { return r.collision_detection_needed() ? "required" : "not required"; };
    auto slot = [](const SimReport& r) { return r.completion_slot ? std::to_string(*r.completion_slot) : "-"; };

    std::ostringstream out;
    out << std::left << std::setw(14) << "approach" << std::setw(8) << "slots" << std::setw(10) << "power"
        << std::setw(16) << "collision det." << std::setw(10) << "completed" << "at slot\n";
    for (auto [name, r] : {std::pair{"synthesized", &synthesized}, std::pair{"baseline", &baseline}})
        out << std::setw(14) << name << std::setw(8) << r->slots_run << std::setw(10) << (units(r->total_power) + " pw")
            << std::setw(16) << cd(*r) << std::setw(10) << yn(r->completed) << slot(*r) << '\n';
    out << power_verdict << '\n' << collision_verdict << '\n';
    return out.str();
}

std::string ComparisonReport::json() const
{
    detail::ojson j;
    j["synthesized"] = report_object(synthesized);
    j["baseline"] = report_object(baseline);
    j["verdict"] = {{"power", power_verdict}, {"collision_detection", collision_verdict}};
    return j.dump(2);
}

} // namespace protoforge
