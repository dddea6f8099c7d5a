#include "protoforge/cli.hpp"
#include "protoforge/trace.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace protoforge;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("protoforge-cli-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const char* kLine3 = "processes=3\npackets=1\nhorizon=2\nsource=0\ntopology=line\nliveness=off\ngoal=all-know-all\n";
const char* kTight = "processes=2\npackets=2\nhorizon=1\nsource=0\ntopology=all\nliveness=off\ngoal=all-know-all\n";

} // namespace

TEST_CASE("synth writes a readable trace")
{
    TempDir dir;
    const auto spec = dir.write("line3.net", kLine3);
    const auto out = dir.file("t.json");
    auto r = run({"synth", spec, "--out", out});
    CHECK(r.code == cli::kOk);
    const auto trace = read_trace(slurp(out));
    CHECK(validate(trace, LabelSet::all()).empty());
    CHECK(run({"validate", out}).code == cli::kOk);
    CHECK(run({"validate", out}).out.empty());
}

TEST_CASE("synth on an infeasible spec prints the core")
{
    TempDir dir;
    auto r = run({"synth", dir.write("tight.net", kTight)});
    CHECK(r.code == cli::kUnsat);
    CHECK(r.out == "unsat\nR7_CollisionFreeLearning\nGOAL_Deadline\n");
    auto core = run({"unsat-core", dir.file("tight.net")});
    CHECK(core.code == cli::kUnsat);
    CHECK(core.out == "R7_CollisionFreeLearning\nGOAL_Deadline\n");
    CHECK(run({"unsat-core", dir.write("line3.net", kLine3)}).code == cli::kOk);
}

TEST_CASE("min-horizon")
{
    TempDir dir;
    const auto spec = dir.write("all.net", "processes=3\npackets=2\nhorizon=0\nsource=0\ntopology=all\nliveness=off\ngoal=all-know-all\n");
    auto r = run({"min-horizon", spec, "--max", "4", "--out", dir.file("m.json")});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.starts_with("T_min = 2\n"));
    CHECK(read_trace(slurp(dir.file("m.json"))).spec.horizon == 2);
    CHECK(run({"min-horizon", spec, "--max", "1"}).code == cli::kUnsat);
    CHECK(run({"min-horizon", spec, "--max", "4", "--node-limit", "1"}).code == cli::kBudget);
    CHECK(run({"min-horizon", spec}).code == cli::kUsage);
}

TEST_CASE("validate reports violations")
{
    TempDir dir;
    const auto path = dir.write("bad.json", R"({"spec": {"processes": 2, "packets": 1, "horizon": 1, "source": 0,
        "topology": "all", "liveness": "off", "goal": "all-know-all"}, "actions": [["sleep", "tx:1"]]})");
    auto r = run({"validate", path});
    CHECK(r.code == cli::kViolations);
    CHECK(r.out.find("R5_TransmitOnlyKnown") != std::string::npos);
    CHECK(r.out.find("GOAL_Deadline") != std::string::npos);
}

TEST_CASE("simulate, baseline and compare")
{
    TempDir dir;
    const auto spec = dir.write("line3.net", kLine3);
    run({"synth", spec, "--out", dir.file("t.json")});

    auto sim = run({"simulate", dir.file("t.json"), "--json"});
    CHECK(sim.code == cli::kOk);
    CHECK(sim.out.find("\"total_power\": 4") != std::string::npos);

    auto base = run({"baseline", spec, "--pw", "1"});
    CHECK(base.code == cli::kOk);
    CHECK(base.out.find("total power:          6 pw") != std::string::npos);

    auto cmp = run({"compare", spec, "--pw", "1", "--json"});
    CHECK(cmp.code == cli::kOk);
    CHECK(cmp.out.find("synthesized uses less power: 4 pw < 6 pw") != std::string::npos);
    CHECK(cmp.out.find("collision detection: baseline required, synthesized not required") != std::string::npos);
    CHECK(cmp.out == run({"compare", spec, "--pw", "1", "--json"}).out);

    CHECK(run({"compare", dir.write("tight.net", kTight)}).code == cli::kUnsat);
    CHECK(run({"compare", spec, "--node-limit", "1"}).code == cli::kBudget);
}

TEST_CASE("emit-smt writes a document")
{
    TempDir dir;
    const auto spec = dir.write("line3.net", kLine3);
    auto r = run({"emit-smt", spec, "--out", dir.file("d.smt2")});
    CHECK(r.code == cli::kOk);
    CHECK(slurp(dir.file("d.smt2")).find("(check-sat)") != std::string::npos);
    CHECK(run({"emit-smt", spec, "--solver", "/nonexistent/solver"}).code == cli::kIoError);
}

TEST_CASE("usage and io errors")
{
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"synth"}).code == cli::kUsage);
    CHECK(run({"synth", "/nonexistent/spec.net"}).code == cli::kIoError);
    CHECK(run({"--version"}).code == cli::kOk);
    CHECK(run({"--version"}).out.find("protoforge") != std::string::npos);

    TempDir dir;
    auto bad = run({"synth", dir.write("bad.net", "processes=2\n")});
    CHECK(bad.code == cli::kIoError);
    CHECK(bad.err.find("missing key") != std::string::npos);
}
