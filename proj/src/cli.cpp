#include "protoforge/cli.hpp"
#include "protoforge/encoder.hpp"
#include "protoforge/errors.hpp"
#include "protoforge/sim.hpp"
#include "protoforge/smt_bridge.hpp"
#include "protoforge/solver.hpp"
#include "protoforge/trace.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace protoforge::cli {

namespace {

class IoError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text))
        throw IoError("cannot write '" + path + "'");
}

NetworkSpec load_spec(const std::string& path)
{
    return parse_spec(read_file(path));
}

/// Writes the trace to `path`, or prints it when no path was given.
void emit_trace(const ProtocolTrace& trace, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << write_trace(trace);
    } else {
        write_file(path, write_trace(trace));
        out << "trace written to " << path << '\n';
    }
}

struct Options {
    std::string spec_path;
    std::string trace_path;
    std::string out_path;
    std::string trace_out;
    std::string solver;
    double timeout = 60.0;
    int t_max = 0;
    double pw = 1.0;
    double idle = 0.0;
    int max_slots = 100;
    std::uint64_t node_limit = 0;
    bool json = false;
};

SearchConfig search_config(const Options& o)
{
    SearchConfig c;
    if (o.node_limit > 0)
        c.node_limit = o.node_limit;
    return c;
}

void print_core(const UnsatCore& core, std::ostream& out)
{
    for (auto l : core.labels.labels())
        out << label_name(l) << '\n';
}

int cmd_synth(const Options& o, std::ostream& out)
{
    const auto cs = encode(load_spec(o.spec_path));
    auto result = solve(cs, search_config(o));
    if (auto* sat = std::get_if<Sat>(&result)) {
        emit_trace(sat->trace, o.out_path, out);
        return kOk;
    }
    if (std::holds_alternative<BudgetExhausted>(result)) {
        out << "budget exhausted after " << std::get<BudgetExhausted>(result).nodes << " nodes\n";
        return kBudget;
    }
    out << "unsat\n";
    print_core(unsat_core_minimize(cs, search_config(o)), out);
    return kUnsat;
}

int cmd_min_horizon(const Options& o, std::ostream& out)
{
    auto result = min_horizon(load_spec(o.spec_path), o.t_max, search_config(o));
    if (auto* found = std::get_if<HorizonFound>(&result)) {
        out << "T_min = " << found->horizon << '\n';
        emit_trace(found->trace, o.out_path, out);
        return kOk;
    }
    if (auto* inc = std::get_if<Inconclusive>(&result)) {
        out << "inconclusive at T = " << inc->horizon << " (budget exhausted)\n";
        return kBudget;
    }
    out << "not found within T <= " << o.t_max << '\n';
    return kUnsat;
}

int cmd_validate(const Options& o, std::ostream& out)
{
    const auto trace = read_trace(read_file(o.trace_path));
    const auto violations = validate(trace, LabelSet::all());
    for (const auto& v : violations)
        out << to_string(v) << '\n';
    return violations.empty() ? kOk : kViolations;
}

int cmd_unsat_core(const Options& o, std::ostream& out)
{
    const auto cs = encode(load_spec(o.spec_path));
    auto result = solve(cs, search_config(o));
    if (std::holds_alternative<Sat>(result)) {
        out << "sat (no core)\n";
        return kOk;
    }
    if (std::holds_alternative<BudgetExhausted>(result)) {
        out << "budget exhausted\n";
        return kBudget;
    }
    print_core(unsat_core_minimize(cs, search_config(o)), out);
    return kUnsat;
}

int cmd_emit_smt(const Options& o, std::ostream& out)
{
    const auto spec = load_spec(o.spec_path);
    const auto doc = emit_smtlib(spec);

    std::optional<std::vector<std::string>> solver;
    if (!o.solver.empty())
        solver = split_command(o.solver);
    else
        solver = solver_from_environment();

    if (!o.out_path.empty()) {
        write_file(o.out_path, doc);
        out << "SMT-LIB2 written to " << o.out_path << '\n';
    } else if (!solver) {
        out << doc;
    }
    if (!solver)
        return kOk;

    auto result = run_external(*solver, doc, o.timeout);
    out << "status: " << status_name(result.status) << '\n';
    switch (result.status) {
    case SolverStatus::Sat: {
        auto trace = parse_value_response(result.values, spec);
        if (auto v = validate(trace, LabelSet::all()); !v.empty()) {
            for (const auto& x : v)
                out << to_string(x) << '\n';
            return kViolations;
        }
        emit_trace(trace, o.trace_out, out);
        return kOk;
    }
    case SolverStatus::Unsat:
        for (auto l : result.core_labels.labels())
            out << label_name(l) << '\n';
        return kUnsat;
    case SolverStatus::Unknown:
        break;
    }
    return kIoError;
}

void print_report(const SimReport& r, bool json, std::ostream& out)
{
    out << render_report(r);
    if (json)
        out << '\n' << report_json(r) << '\n';
}

int cmd_simulate(const Options& o, std::ostream& out)
{
    const auto trace = read_trace(read_file(o.trace_path));
    print_report(simulate_trace(trace, {o.pw, o.idle}), o.json, out);
    return kOk;
}

int cmd_baseline(const Options& o, std::ostream& out)
{
    auto run = run_baseline(load_spec(o.spec_path), {o.pw, o.idle}, o.max_slots);
    print_report(run.report, o.json, out);
    return kOk;
}

int cmd_compare(const Options& o, std::ostream& out)
{
    const auto spec = load_spec(o.spec_path);
    auto result = solve(encode(spec), search_config(o));
    if (std::holds_alternative<Unsat>(result)) {
        out << "unsat: nothing to compare at horizon " << spec.horizon << '\n';
        return kUnsat;
    }
    if (std::holds_alternative<BudgetExhausted>(result)) {
        out << "budget exhausted\n";
        return kBudget;
    }
    const PowerModel power{o.pw, o.idle};
    const auto synth = simulate_trace(std::get<Sat>(result).trace, power);
    const auto base = run_baseline(spec, power, o.max_slots).report;
    const auto report = compare(synth, base);
    out << report.text();
    if (o.json)
        out << '\n' << report.json() << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Protocol synthesis from bounded network requirements"};
    app.name("protoforge");
    app.set_version_flag("--version", std::string("protoforge ") + PROTOFORGE_VERSION);
    app.require_subcommand(1);

    Options o;
    auto pw_flags = [&](CLI::App* sub) {
        sub->add_option("--pw", o.pw, "power units per active (transmit/listen) slot")->check(CLI::NonNegativeNumber);
        sub->add_option("--idle", o.idle, "power units per sleep slot")->check(CLI::NonNegativeNumber);
    };
    auto limit_flag = [&](CLI::App* sub) {
        sub->add_option("--node-limit", o.node_limit, "search node budget (0 = unlimited)");
    };

    auto* synth = app.add_subcommand("synth", "encode and solve; write the trace on sat, print the core on unsat");
    synth->add_option("spec", o.spec_path)->required();
    synth->add_option("--out", o.out_path, "trace file to write");
    limit_flag(synth);

    auto* mh = app.add_subcommand("min-horizon", "least horizon reaching the goal");
    mh->add_option("spec", o.spec_path)->required();
    mh->add_option("--max", o.t_max, "largest horizon to try")->required()->check(CLI::NonNegativeNumber);
    mh->add_option("--out", o.out_path, "trace file to write");
    limit_flag(mh);

    auto* val = app.add_subcommand("validate", "check a trace file against every requirement");
    val->add_option("trace", o.trace_path)->required();

    auto* core = app.add_subcommand("unsat-core", "print a minimal set of conflicting requirement labels");
    core->add_option("spec", o.spec_path)->required();
    limit_flag(core);

    auto* smt = app.add_subcommand("emit-smt", "write the SMT-LIB2 encoding, optionally run an external solver");
    smt->add_option("spec", o.spec_path)->required();
    smt->add_option("--out", o.out_path, "SMT-LIB2 file to write");
    smt->add_option("--solver", o.solver, "solver command reading SMT-LIB2 on stdin (default: $PROTOFORGE_SOLVER)");
    smt->add_option("--timeout", o.timeout, "solver timeout in seconds");
    smt->add_option("--trace-out", o.trace_out, "trace file for the recovered protocol");

    auto* sim = app.add_subcommand("simulate", "replay a trace and report power and collisions");
    sim->add_option("trace", o.trace_path)->required();
    pw_flags(sim);
    sim->add_flag("--json", o.json, "append a machine-readable JSON block");

    auto* base = app.add_subcommand("baseline", "run the eager always-on baseline");
    base->add_option("spec", o.spec_path)->required();
    pw_flags(base);
    base->add_option("--max-slots", o.max_slots)->check(CLI::NonNegativeNumber);
    base->add_flag("--json", o.json, "append a machine-readable JSON block");

    auto* cmp = app.add_subcommand("compare", "synthesize, run the baseline, and compare");
    cmp->add_option("spec", o.spec_path)->required();
    pw_flags(cmp);
    cmp->add_option("--max-slots", o.max_slots)->check(CLI::NonNegativeNumber);
    cmp->add_flag("--json", o.json, "append a machine-readable JSON block");
    limit_flag(cmp);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*synth) return cmd_synth(o, out);
        if (*mh) return cmd_min_horizon(o, out);
        if (*val) return cmd_validate(o, out);
        if (*core) return cmd_unsat_core(o, out);
        if (*smt) return cmd_emit_smt(o, out);
        if (*sim) return cmd_simulate(o, out);
        if (*base) return cmd_baseline(o, out);
        if (*cmp) return cmd_compare(o, out);
    } catch (const SolverError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SimError& e) {
        err << "error: " << e.what() << '\n';
        return kViolations;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;
}

} // namespace protoforge::cli
