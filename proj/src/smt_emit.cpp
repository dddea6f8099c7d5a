#include "protoforge/errors.hpp"
#include "protoforge/smt_bridge.hpp"

#include <sstream>

namespace protoforge {

namespace {

std::string app(std::string_view fn, std::initializer_list<int> args)
{
    std::string s = "(" + std::string(fn);
    for (int a : args)
        s += " " + std::to_string(a);
    return s + ")";
}

std::string sleep_at(int t, int p) { return app("sleep", {t, p}); }
std::string listen_at(int t, int p) { return app("listen", {t, p}); }
std::string tx_at(int t, int p) { return app("transmit", {t, p}); }
std::string knows_at(int t, int p, int k) { return app("knows", {t, p, k}); }
std::string audible_at(int t, int l, int s) { return app("audible", {t, l, s}); }

std::string neg(const std::string& e) { return "(not " + e + ")"; }
std::string silent(int t, int p) { return "(= " + tx_at(t, p) + " (- 1))"; }

std::string nary(std::string_view op, const std::vector<std::string>& xs, std::string_view empty)
{
    if (xs.empty())
        return std::string(empty);
    if (xs.size() == 1)
        return xs.front();
    std::string s = "(" + std::string(op);
    for (const auto& x : xs)
        s += " " + x;
    return s + ")";
}

std::string all_of(const std::vector<std::string>& xs) { return nary("and", xs, "true"); }
std::string any_of(const std::vector<std::string>& xs) { return nary("or", xs, "false"); }

struct Name {
    Name(RequirementLabel l, int t_ = -1, int p_ = -1, int k_ = -1, std::string extra_ = {})
        : label(l), t(t_), p(p_), k(k_), extra(std::move(extra_))
    {
    }
    RequirementLabel label;
    int t, p, k;
    std::string extra;
};

std::string render(const Name& n)
{
    std::string s = "|" + std::string(label_name(n.label)) + "@";
    std::string sep;
    auto field = [&](const char* key, const std::string& v) {
        s += sep + key + "=" + v;
        sep = ",";
    };
    if (n.t >= 0) field("t", std::to_string(n.t));
    if (n.p >= 0) field("p", std::to_string(n.p));
    if (n.k >= 1) field("k", std::to_string(n.k));
    if (!n.extra.empty()) {
        s += sep + n.extra;
    }
    return s + "|";
}

/// Listener p learns packet k during `slot`.
std::string learns(const NetworkSpec& spec, int slot, int p, int k)
{
    std::vector<std::string> speakers;
    for (int s = 0; s < spec.processes; ++s) {
        if (s == p)
            continue;
        std::vector<std::string> parts{"(= " + tx_at(slot, s) + " " + std::to_string(k) + ")",
                                       audible_at(slot, p, s)};
        for (int other = 0; other < spec.processes; ++other)
            if (other != s)
                parts.push_back(silent(slot, other));
        speakers.push_back(all_of(parts));
    }
    return all_of({listen_at(slot, p), any_of(speakers)});
}

std::string emit(const NetworkSpec& spec, const LabelSet& enabled)
{
    if (auto errors = validate_spec(spec); !errors.empty())
        throw SmtError("invalid spec: " + errors.front());

    using L = RequirementLabel;
    const int T = spec.horizon, P = spec.processes, M = spec.packets;
    std::ostringstream out;

    out << "; protoforge SMT-LIB2 encoding\n"
        << "; P=" << P << " M=" << M << " T=" << T << " source=" << spec.source
        << " topology=" << topology_kind_name(spec.topology.kind) << " liveness=" << liveness_name(spec.liveness)
        << " goal=" << goal_name(spec.goal) << '\n'
        << "; liveness is bounded: 'each action infinitely often' is approximated as\n"
        << "; 'each action at least once within slots [0,T)' (only when liveness=each-action-once)\n"
        << "(set-option :produce-unsat-cores true)\n"
        << "(set-option :produce-models true)\n"
        << "(set-logic QF_UFLIA)\n"
        << "(declare-fun sleep (Int Int) Bool)\n"
        << "(declare-fun listen (Int Int) Bool)\n"
        << "(declare-fun transmit (Int Int) Int)\n"
        << "(declare-fun knows (Int Int Int) Bool)\n"
        << "(declare-fun audible (Int Int Int) Bool)\n";

    auto assert_named = [&](const std::string& expr, const Name& name) {
        out << "(assert (! " << expr << " :named " << render(name) << "))\n";
    };

    // R1 is always asserted: mutual exclusion plus "at least one action".
    for (int t = 0; t < T; ++t)
        for (int p = 0; p < P; ++p) {
            const auto sl = sleep_at(t, p), li = listen_at(t, p), tx = tx_at(t, p);
            const std::string transmitting = "(>= " + tx + " 0)";
            assert_named(all_of({"(=> " + sl + " " + all_of({neg(li), silent(t, p)}) + ")",
                                 "(=> " + transmitting + " " + all_of({neg(sl), neg(li)}) + ")",
                                 "(=> " + li + " " + all_of({neg(sl), silent(t, p)}) + ")"}),
                         {L::R1_ExactlyOneAction, t, p, -1, "part=exclusive"});
            assert_named(any_of({sl, transmitting, li}), {L::R1_ExactlyOneAction, t, p, -1, "part=some"});
        }

    for (int t = 0; t < T; ++t)
        for (int p = 0; p < P; ++p)
            assert_named("(and (>= " + tx_at(t, p) + " (- 1)) (<= " + tx_at(t, p) + " " + std::to_string(M) + "))",
                         {L::R2_ContentDomain, t, p});

    if (enabled.contains(L::R3_Liveness) && spec.liveness == LivenessMode::EachActionAtLeastOnce)
        for (int p = 0; p < P; ++p) {
            std::vector<std::string> sl, li, tx;
            for (int t = 0; t < T; ++t) {
                sl.push_back(sleep_at(t, p));
                li.push_back(listen_at(t, p));
                tx.push_back("(>= " + tx_at(t, p) + " 0)");
            }
            assert_named(any_of(sl), {L::R3_Liveness, -1, p, -1, "a=sleep"});
            assert_named(any_of(li), {L::R3_Liveness, -1, p, -1, "a=listen"});
            assert_named(any_of(tx), {L::R3_Liveness, -1, p, -1, "a=transmit"});
        }

    if (enabled.contains(L::R4_InitialKnowledge))
        for (int p = 0; p < P; ++p)
            for (int k = 1; k <= M; ++k)
                assert_named(p == spec.source ? knows_at(0, p, k) : neg(knows_at(0, p, k)),
                             {L::R4_InitialKnowledge, 0, p, k});

    if (enabled.contains(L::R5_TransmitOnlyKnown))
        for (int t = 0; t < T; ++t)
            for (int p = 0; p < P; ++p)
                for (int k = 1; k <= M; ++k)
                    assert_named("(=> (= " + tx_at(t, p) + " " + std::to_string(k) + ") " + knows_at(t, p, k) + ")",
                                 {L::R5_TransmitOnlyKnown, t, p, k});

    if (enabled.contains(L::R6_NeverForgets))
        for (int t = 0; t < T; ++t)
            for (int p = 0; p < P; ++p)
                for (int k = 1; k <= M; ++k)
                    assert_named("(=> " + knows_at(t, p, k) + " " + knows_at(t + 1, p, k) + ")",
                                 {L::R6_NeverForgets, t, p, k});

    if (enabled.contains(L::R7_CollisionFreeLearning))
        for (int t = 0; t <= T; ++t)
            for (int p = 0; p < P; ++p)
                for (int k = 1; k <= M; ++k) {
                    if (t == 0) {
                        if (p != spec.source)
                            assert_named(neg(knows_at(0, p, k)), {L::R7_CollisionFreeLearning, 0, p, k});
                        continue;
                    }
                    const auto gained = learns(spec, t - 1, p, k);
                    const auto next = knows_at(t, p, k);
                    assert_named("(and (=> " + next + " (or " + knows_at(t - 1, p, k) + " " + gained + ")) (=> " +
                                     gained + " " + next + "))",
                                 {L::R7_CollisionFreeLearning, t, p, k});
                }

    if (enabled.contains(L::GOAL_Deadline) && spec.goal == GoalKind::AllKnowAll)
        for (int p = 0; p < P; ++p)
            for (int k = 1; k <= M; ++k)
                assert_named(knows_at(T, p, k), {L::GOAL_Deadline, T, p, k});

    if (enabled.contains(L::TOPO_HearsRelation))
        for (int t = 0; t < T; ++t)
            for (int l = 0; l < P; ++l) {
                std::vector<std::string> parts;
                for (int s = 0; s < P; ++s)
                    if (s != l)
                        parts.push_back(spec.topology.can_hear(l, s) ? audible_at(t, l, s) : neg(audible_at(t, l, s)));
                assert_named(all_of(parts), {L::TOPO_HearsRelation, t, l});
            }

    out << "(check-sat)\n";
    if (T * P > 0) {
        out << "(get-value (";
        std::string sep;
        for (int t = 0; t < T; ++t)
            for (int p = 0; p < P; ++p) {
                out << sep << sleep_at(t, p) << ' ' << listen_at(t, p) << ' ' << tx_at(t, p);
                sep = " ";
            }
        out << "))\n";
    }
    if (P * M > 0) {
        out << "(get-value (";
        std::string sep;
        for (int t = 0; t <= T; ++t)
            for (int p = 0; p < P; ++p)
                for (int k = 1; k <= M; ++k) {
                    out << sep << knows_at(t, p, k);
                    sep = " ";
                }
        out << "))\n";
    }
    out << "(get-unsat-core)\n";
    return out.str();
}

} // namespace

std::string emit_smtlib(const NetworkSpec& spec)
{
    return emit(spec, LabelSet::all());
}

std::string emit_smtlib(const ConstraintSystem& cs)
{
    return emit(cs.spec(), cs.enabled());
}

std::optional<RequirementLabel> label_of_assertion(std::string_view name)
{
    if (name.size() >= 2 && name.front() == '|' && name.back() == '|')
        name = name.substr(1, name.size() - 2);
    auto at = name.find('@');
    if (at == std::string_view::npos)
        return std::nullopt;
    return label_from_name(name.substr(0, at));
}

} // namespace protoforge
