#include "protoforge/encoder.hpp"
#include "protoforge/errors.hpp"
#include "protoforge/sim.hpp"
#include "protoforge/smt_bridge.hpp"
#include "protoforge/solver.hpp"
#include "protoforge/trace.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace protoforge;

namespace {

SearchConfig config_for(std::uint64_t node_limit)
{
    SearchConfig c;
    if (node_limit > 0)
        c.node_limit = node_limit;
    return c;
}

py::list label_list(const LabelSet& labels)
{
    py::list out;
    for (auto l : labels.labels())
        out.append(std::string(label_name(l)));
    return out;
}

py::dict synth(const std::string& spec_text, std::uint64_t node_limit)
{
    const auto cs = encode(parse_spec(spec_text));
    const auto cfg = config_for(node_limit);
    const auto r = solve(cs, cfg);
    py::dict d;
    if (const auto* sat = std::get_if<Sat>(&r)) {
        d["status"] = "sat";
        d["trace"] = write_trace(sat->trace);
        d["nodes"] = sat->nodes;
    } else if (const auto* unsat = std::get_if<Unsat>(&r)) {
        d["status"] = "unsat";
        d["core"] = label_list(unsat_core_minimize(cs, cfg).labels);
        d["nodes"] = unsat->nodes;
    } else {
        d["status"] = "budget-exhausted";
        d["nodes"] = std::get<BudgetExhausted>(r).nodes;
    }
    return d;
}

py::dict horizon(const std::string& spec_text, int t_max, std::uint64_t node_limit)
{
    const auto r = min_horizon(parse_spec(spec_text), t_max, config_for(node_limit));
    py::dict d;
    if (const auto* found = std::get_if<HorizonFound>(&r)) {
        d["status"] = "found";
        d["horizon"] = found->horizon;
        d["trace"] = write_trace(found->trace);
    } else if (const auto* inc = std::get_if<Inconclusive>(&r)) {
        d["status"] = "inconclusive";
        d["horizon"] = inc->horizon;
    } else {
        d["status"] = "not-found";
        d["t_max"] = std::get<NotFoundWithin>(r).t_max;
    }
    return d;
}

std::vector<std::string> check(const std::string& trace_text)
{
    std::vector<std::string> out;
    for (const auto& v : validate(read_trace(trace_text), LabelSet::all()))
        out.push_back(to_string(v));
    return out;
}

py::dict counts(const std::string& spec_text)
{
    py::dict d;
    for (const auto& [label, n] : describe(encode(parse_spec(spec_text))).counts)
        d[py::str(std::string(label_name(label)))] = n;
    return d;
}

std::string compare_json(const std::string& spec_text, double pw, double idle, int max_slots)
{
    const auto spec = parse_spec(spec_text);
    const auto r = solve(encode(spec));
    if (!std::holds_alternative<Sat>(r))
        throw SolverError("spec is not satisfiable at horizon " + std::to_string(spec.horizon));
    const PowerModel power{pw, idle};
    return compare(simulate_trace(std::get<Sat>(r).trace, power), run_baseline(spec, power, max_slots).report).json();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Protocol synthesis core (text/JSON in, text/JSON out)";
    m.attr("__version__") = PROTOFORGE_VERSION;

    py::register_exception<Error>(m, "ProtoforgeError", PyExc_ValueError);

    m.def("canonical_spec", [](const std::string& text) { return render_spec(parse_spec(text)); }, py::arg("text"));
    m.def("synth", &synth, py::arg("spec"), py::arg("node_limit") = 0);
    m.def("min_horizon", &horizon, py::arg("spec"), py::arg("t_max"), py::arg("node_limit") = 0);
    m.def("validate", &check, py::arg("trace"));
    m.def("unsat_core", [](const std::string& spec) { return label_list(unsat_core_minimize(encode(parse_spec(spec))).labels); },
          py::arg("spec"));
    m.def("describe", &counts, py::arg("spec"));
    m.def("emit_smt", [](const std::string& spec) { return emit_smtlib(parse_spec(spec)); }, py::arg("spec"));
    m.def("simulate", [](const std::string& trace, double pw, double idle) {
              return report_json(simulate_trace(read_trace(trace), {pw, idle}));
          },
          py::arg("trace"), py::arg("pw") = 1.0, py::arg("idle") = 0.0);
    m.def("baseline", [](const std::string& spec, double pw, double idle, int max_slots) {
              return report_json(run_baseline(parse_spec(spec), {pw, idle}, max_slots).report);
          },
          py::arg("spec"), py::arg("pw") = 1.0, py::arg("idle") = 0.0, py::arg("max_slots") = 100);
    m.def("compare", &compare_json, py::arg("spec"), py::arg("pw") = 1.0, py::arg("idle") = 0.0,
          py::arg("max_slots") = 100);
}
