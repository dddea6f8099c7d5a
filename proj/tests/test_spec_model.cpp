#include "protoforge/errors.hpp"
#include "protoforge/spec_model.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace protoforge;
using namespace protoforge::testing;

namespace {

bool throws_with(std::string_view text, std::string_view needle)
{
    try {
        parse_spec(text);
    } catch (const SpecError& e) {
        return std::string_view(e.what()).find(needle) != std::string_view::npos;
    }
    return false;
}

bool has_error(const NetworkSpec& s, std::string_view needle)
{
    for (const auto& e : validate_spec(s))
        if (e.find(needle) != std::string::npos)
            return true;
    return false;
}

} // namespace

TEST_CASE("parse the three-node line spec")
{
    const auto s = parse_spec("processes=3\npackets=1\nhorizon=2\nsource=0\ntopology=line\nliveness=off\ngoal=all-know-all");
    CHECK(s.processes == 3);
    CHECK(s.packets == 1);
    CHECK(s.horizon == 2);
    CHECK(s.source == 0);
    CHECK(s.topology == topology_line(3));
    CHECK(s.liveness == LivenessMode::Off);
    CHECK(s.goal == GoalKind::AllKnowAll);
}

TEST_CASE("parse the empty problem")
{
    const auto s = parse_spec("processes=1\npackets=0\nhorizon=0\nsource=0\ntopology=all\nliveness=off\ngoal=none");
    CHECK(s.processes == 1);
    CHECK(s.packets == 0);
    CHECK(s.horizon == 0);
    CHECK(s.topology.hears.empty());
    CHECK(s.goal == GoalKind::None);
}

TEST_CASE("parse accepts comments, spacing and explicit hears lines")
{
    const auto s = parse_spec("# demo\n processes = 3 \npackets=1 # trailing\nhorizon=2\nsource=0\n"
                              "topology = explicit\nhears 1 0\nhears 2 1\nliveness=each-action-once\ngoal=none\n");
    CHECK(s.topology.kind == TopologyKind::Explicit);
    CHECK(s.topology.hears == topology_line(3).hears);
    CHECK(s.liveness == LivenessMode::EachActionAtLeastOnce);
}

TEST_CASE("parse errors")
{
    const std::string rest = "packets=1\nhorizon=2\ntopology=all\nliveness=off\ngoal=none\n";
    CHECK(throws_with("processes=2\nsource=5\n" + rest, "source out of range"));
    CHECK(throws_with("processes=2\nsource=0\ncolour=red\n" + rest, "unknown key"));
    CHECK(throws_with("processes=2\nprocesses=3\nsource=0\n" + rest, "duplicate key"));
    CHECK(throws_with("processes=2\n" + rest, "missing key"));
    CHECK(throws_with("processes=2\nsource=0\nhears 1 0\n" + rest, "explicit"));
    CHECK(throws_with("processes=2\nsource=0\nthis is not a line\n" + rest, "line 3"));
    CHECK(throws_with("processes=x\nsource=0\n" + rest, "line 1"));
}

TEST_CASE("topology constructors")
{
    CHECK(topology_all(3).hears.size() == 6);
    CHECK(topology_all(1).hears.empty());
    CHECK(topology_all(2).hears == std::set<std::pair<int, int>>{{0, 1}, {1, 0}});
    CHECK(topology_line(3).hears == std::set<std::pair<int, int>>{{1, 0}, {2, 1}});
    CHECK(topology_line(1).hears.empty());
    CHECK(topology_line(4).hears == std::set<std::pair<int, int>>{{1, 0}, {2, 1}, {3, 2}});
}

TEST_CASE("line is contained in all")
{
    for (int p = 1; p <= 8; ++p) {
        const auto all = topology_all(p).hears;
        CHECK(all.size() == std::size_t(p * (p - 1)));
        for (const auto& pair : topology_line(p).hears)
            CHECK(all.contains(pair));
    }
}

TEST_CASE("validate_spec")
{
    CHECK(validate_spec(make_spec(3, 1, 2, TopologyKind::Line)).empty());

    NetworkSpec s = make_spec(3, 1, 2);
    s.topology = topology_explicit({{0, 0}});
    CHECK(has_error(s, "reflexive hears pair"));

    s.topology = topology_explicit({{9, 0}});
    CHECK(has_error(s, "process id out of range"));

    s.topology = topology_explicit({{0, 0}, {9, 0}});
    s.source = 7;
    CHECK(validate_spec(s).size() == 3);
}

TEST_CASE("render then parse is identity")
{
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto s = random_spec(rng, 5, 4, 6);
        if (i % 5 == 0) {
            std::set<std::pair<int, int>> hears;
            for (int l = 0; l < s.processes; ++l)
                for (int sp = 0; sp < s.processes; ++sp)
                    if (l != sp && rng() % 2)
                        hears.insert({l, sp});
            s.topology = topology_explicit(hears);
        }
        REQUIRE(validate_spec(s).empty());
        CHECK(parse_spec(render_spec(s)) == s);
    }
}

TEST_CASE("label names round-trip and LabelSet behaves")
{
    for (auto l : kAllLabels)
        CHECK(label_from_name(label_name(l)) == l);
    CHECK_FALSE(label_from_name("R8_Nope").has_value());

    LabelSet s{RequirementLabel::GOAL_Deadline, RequirementLabel::R7_CollisionFreeLearning};
    CHECK(s.size() == 2);
    CHECK(to_string(s) == "{R7_CollisionFreeLearning, GOAL_Deadline}");
    CHECK(s.is_subset_of(LabelSet::all()));
    s.erase(RequirementLabel::GOAL_Deadline);
    CHECK(s.labels() == std::vector{RequirementLabel::R7_CollisionFreeLearning});
    CHECK(is_structural(RequirementLabel::R1_ExactlyOneAction));
    CHECK_FALSE(is_structural(RequirementLabel::TOPO_HearsRelation));
}
