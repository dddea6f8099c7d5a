#include "protoforge/errors.hpp"
#include "protoforge/sexpr.hpp"
#include "protoforge/smt_bridge.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <tuple>

namespace protoforge {

namespace {

using Key = std::tuple<std::string, int, int, int>;

std::optional<long long> as_int(const SExpr& e)
{
    auto num = [](const std::string& s) -> std::optional<long long> {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            return std::nullopt;
        return v;
    };
    if (!e.is_list)
        return num(e.atom);
    if (e.items.size() == 2 && !e.items[0].is_list && e.items[0].atom == "-" && !e.items[1].is_list)
        if (auto v = num(e.items[1].atom))
            return -*v;
    return std::nullopt;
}

std::optional<Key> as_term(const SExpr& e)
{
    if (!e.is_list || e.items.size() < 3 || e.items.size() > 4 || e.items[0].is_list)
        return std::nullopt;
    Key key{e.items[0].atom, -1, -1, -1};
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        auto v = as_int(e.items[i]);
        if (!v)
            return std::nullopt;
        (i == 1 ? std::get<1>(key) : i == 2 ? std::get<2>(key) : std::get<3>(key)) = int(*v);
    }
    return key;
}

std::string cell(int t, int p)
{
    return "(" + std::to_string(t) + "," + std::to_string(p) + ")";
}

} // namespace

std::string_view status_name(SolverStatus s)
{
    switch (s) {
    case SolverStatus::Sat: return "sat";
    case SolverStatus::Unsat: return "unsat";
    case SolverStatus::Unknown: return "unknown";
    }
    return "?";
}

ProtocolTrace parse_value_response(std::string_view text, const NetworkSpec& spec)
{
    std::vector<SExpr> exprs;
    try {
        exprs = parse_sexprs(text);
    } catch (const SmtError& e) {
        throw SmtError(std::string("malformed response: ") + e.what());
    }

    std::map<Key, SExpr> values;
    for (const auto& e : exprs) {
        if (!e.is_list) {
            if (e.atom == "sat" || e.atom == "unsat" || e.atom == "unknown" || e.atom == "success")
                continue;
            throw SmtError("malformed response: unexpected token '" + e.atom + "'");
        }
        if (!e.items.empty() && !e.items[0].is_list && e.items[0].atom == "error")
            continue; // get-unsat-core after sat, and similar
        for (const auto& pair : e.items) {
            if (!pair.is_list || pair.items.size() != 2)
                throw SmtError("malformed response: expected (term value) pairs");
            auto key = as_term(pair.items[0]);
            if (!key)
                throw SmtError("malformed response: unrecognized term " + to_string(pair.items[0]));
            values[*key] = pair.items[1];
        }
    }

    auto lookup_bool = [&](const Key& key, bool& out) {
        auto it = values.find(key);
        if (it == values.end())
            return false;
        if (it->second.is_list || (it->second.atom != "true" && it->second.atom != "false"))
            throw SmtError("malformed response: non-boolean value for " + std::get<0>(key));
        out = it->second.atom == "true";
        return true;
    };

    const int T = spec.horizon, P = spec.processes, M = spec.packets;
    ActionGrid actions(T, P);
    for (int t = 0; t < T; ++t)
        for (int p = 0; p < P; ++p) {
            bool sl = false, li = false;
            if (!lookup_bool({"sleep", t, p, -1}, sl) || !lookup_bool({"listen", t, p, -1}, li))
                throw SmtError("malformed response: missing sleep/listen value at " + cell(t, p));
            auto it = values.find({"transmit", t, p, -1});
            if (it == values.end())
                throw SmtError("malformed response: missing transmit value at " + cell(t, p));
            auto code = as_int(it->second);
            if (!code)
                throw SmtError("malformed response: non-integer transmit value at " + cell(t, p));
            if (*code < -1 || *code > M)
                throw SmtError("content code out of range at " + cell(t, p) + ": " + std::to_string(*code));
            const bool tx = *code >= 0;
            if (int(sl) + int(li) + int(tx) != 1)
                throw SmtError("inconsistent triple at " + cell(t, p) + ": sleep=" + (sl ? "true" : "false") +
                               " listen=" + (li ? "true" : "false") + " transmit=" + std::to_string(*code));
            if (tx)
                actions.at(t, p) = Action::transmit(*code == 0 ? Content::garbage() : Content::packet(int(*code)));
            else
                actions.at(t, p) = li ? Action::listen() : Action::sleep();
        }

    ProtocolTrace trace = make_trace(spec, std::move(actions));

    for (int t = 0; t <= T; ++t)
        for (int p = 0; p < P; ++p)
            for (int k = 1; k <= M; ++k) {
                bool v = false;
                if (lookup_bool({"knows", t, p, k}, v) && v != trace.knowledge[std::size_t(t)].knows(p, k))
                    throw SmtError("knows mismatch at (" + std::to_string(t) + "," + std::to_string(p) + "," +
                                   std::to_string(k) + "): solver says " + (v ? "true" : "false"));
            }
    return trace;
}

std::vector<std::string> split_command(std::string_view command)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < command.size()) {
        while (i < command.size() && (command[i] == ' ' || command[i] == '\t'))
            ++i;
        std::size_t j = i;
        while (j < command.size() && command[j] != ' ' && command[j] != '\t')
            ++j;
        if (j > i)
            out.emplace_back(command.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<std::vector<std::string>> solver_from_environment()
{
    const char* env = std::getenv("PROTOFORGE_SOLVER");
    if (!env)
        return std::nullopt;
    auto cmd = split_command(env);
    if (cmd.empty())
        return std::nullopt;
    return cmd;
}

} // namespace protoforge
