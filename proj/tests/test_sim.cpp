#include "protoforge/errors.hpp"
#include "protoforge/sim.hpp"
#include "protoforge/solver.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace protoforge;
using namespace protoforge::testing;

namespace {

const NetworkSpec kLine3 = make_spec(3, 1, 2, TopologyKind::Line, GoalKind::AllKnowAll);

ProtocolTrace solved(const NetworkSpec& spec)
{
    auto r = solve(encode(spec));
    REQUIRE(is_sat(r));
    return std::get<Sat>(r).trace;
}

} // namespace

TEST_CASE("synthesized line schedule costs 4")
{
    const auto r = simulate_trace(solved(kLine3), {1, 0});
    CHECK(r.total_power == 4);
    CHECK(r.completed);
    CHECK(r.completion_slot == 2);
    CHECK(r.concurrent_tx_slots == 0);
    CHECK_FALSE(r.collision_detection_needed());
    CHECK(r.per_process_power == std::vector<double>{1, 2, 1});
}

TEST_CASE("hand schedule with an idle listener costs 5")
{
    const auto t = make_trace(kLine3, grid_from({{tx(1), Li, Li}, {Sl, tx(1), Li}}));
    const auto r = simulate_trace(t, {1, 0});
    CHECK(r.total_power == 5);
    CHECK(r.completed);
    CHECK(r.concurrent_tx_slots == 0);
}

TEST_CASE("all-sleep trace")
{
    const auto r = simulate_trace(make_trace(kLine3, ActionGrid(2, 3)), {1, 0});
    CHECK(r.total_power == 0);
    CHECK_FALSE(r.completed);
    CHECK_FALSE(r.completion_slot.has_value());
}

TEST_CASE("simulate_trace guards against invalid traces")
{
    auto bad = make_trace(kLine3, grid_from({{Li, tx(1), Sl}, {Sl, Sl, Sl}}));
    CHECK_THROWS_AS(simulate_trace(bad), SimError);
    CHECK_THROWS_AS(simulate_trace(solved(kLine3), {-1, 0}), SimError);
}

TEST_CASE("baseline examples")
{
    const auto line = run_baseline(kLine3, {1, 0}).report;
    CHECK(line.completed);
    CHECK(line.completion_slot == 2);
    CHECK(line.total_power == 6);
    CHECK(line.concurrent_tx_slots == 1);
    CHECK(line.collision_detection_needed());

    const auto all = run_baseline(make_spec(3, 2, 0, TopologyKind::All, GoalKind::AllKnowAll), {1, 0}).report;
    CHECK(all.completion_slot == 2);
    CHECK(all.total_power == 6);

    const auto none = run_baseline(make_spec(3, 0, 0), {1, 0}).report;
    CHECK(none.completion_slot == 0);
    CHECK(none.total_power == 0);
}

TEST_CASE("baseline trace has the expected shape")
{
    const auto run = run_baseline(kLine3, {1, 0});
    CHECK(run.trace.actions == grid_from({{tx(1), Li, Li}, {tx(1), tx(1), Li}}));
    CHECK(run.trace.knowledge.size() == 3);
    CHECK(run.trace.knowledge.back().all_know_all());
}

TEST_CASE("baseline on a line finishes in P-1 slots")
{
    for (int P = 2; P <= 5; ++P) {
        const auto r = run_baseline(make_spec(P, 1, 0, TopologyKind::Line), {1, 0}).report;
        CHECK(r.completion_slot == P - 1);
        CHECK(r.total_power == double(P * (P - 1)));
    }
}

TEST_CASE("baseline stops at max_slots")
{
    auto spec = make_spec(3, 1, 0, TopologyKind::Line);
    spec.source = 2;
    const auto r = run_baseline(spec, {2, 0}, 7).report;
    CHECK_FALSE(r.completed);
    CHECK(r.slots_run == 7);
    CHECK(r.total_power == 2.0 * 3 * 7);
    CHECK_THROWS_AS(run_baseline(spec, {1, 0}, -1), SimError);
}

TEST_CASE("power accounting property")
{
    std::mt19937 rng(17);
    for (int i = 0; i < 200; ++i) {
        auto spec = random_spec(rng, 4, 3, 4);
        spec.liveness = LivenessMode::Off;
        const auto t = random_lawful_trace(rng, spec);
        const PowerModel pm{double(rng() % 4 + 1), double(rng() % 2)};
        int active = 0, asleep = 0;
        for (auto a : t.actions.cells())
            (a.is_sleep() ? asleep : active)++;
        const auto r = simulate_trace(t, pm);
        CHECK(r.total_power == doctest::Approx(pm.active_cost * active + pm.idle_cost * asleep));
        if (r.completed)
            CHECK(*r.completion_slot <= r.slots_run);
    }
}

TEST_CASE("sat traces of goal instances complete in time")
{
    std::mt19937 rng(19);
    for (int i = 0; i < 100; ++i) {
        auto spec = random_spec(rng);
        spec.goal = GoalKind::AllKnowAll;
        auto r = solve(encode(spec));
        if (!is_sat(r))
            continue;
        const auto rep = simulate_trace(std::get<Sat>(r).trace);
        CHECK(rep.completed);
        CHECK(*rep.completion_slot <= spec.horizon);
    }
}

TEST_CASE("compare")
{
    const auto synth = simulate_trace(solved(kLine3), {1, 0});
    const auto base = run_baseline(kLine3, {1, 0}).report;
    const auto c = compare(synth, base);
    CHECK(c.power_verdict == "synthesized uses less power: 4 pw < 6 pw");
    CHECK(c.collision_verdict == "collision detection: baseline required, synthesized not required");
    CHECK(c.text() == compare(synth, base).text());
    CHECK(c.text().find("baseline") != std::string::npos);
    CHECK(c.json().find("\"total_power\": 6") != std::string::npos);

    CHECK(compare(base, base).power_verdict == "tie: 6 pw each");

    const auto other = run_baseline(make_spec(3, 1, 0, TopologyKind::All, GoalKind::AllKnowAll), {1, 0}).report;
    CHECK_THROWS_AS(compare(synth, other), SimError);
    CHECK_THROWS_AS(compare(synth, run_baseline(kLine3, {2, 0}).report), SimError);
}
