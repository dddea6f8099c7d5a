#include "protoforge/action.hpp"

#include <charconv>

namespace protoforge {

std::string to_string(Action a)
{
    switch (a.kind()) {
    case ActionKind::Sleep: return "sleep";
    case ActionKind::Listen: return "listen";
    case ActionKind::Transmit: return "tx:" + std::to_string(a.transmit_code());
    }
    return "?";
}

std::optional<Action> action_from_string(std::string_view text)
{
    if (text == "sleep")
        return Action::sleep();
    if (text == "listen")
        return Action::listen();
    if (!text.starts_with("tx:"))
        return std::nullopt;
    auto digits = text.substr(3);
    int code = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), code);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || code < 0)
        return std::nullopt;
    return Action::transmit(code == 0 ? Content::garbage() : Content::packet(code));
}

} // namespace protoforge
