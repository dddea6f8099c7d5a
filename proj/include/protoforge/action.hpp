#pragma once

#include "protoforge/spec_model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace protoforge {

/// What a transmitter puts on the channel: garbage (code 0) or packet k >= 1.
class Content {
public:
    static constexpr Content garbage() { return Content{0}; }
    static constexpr Content packet(PacketId id) { return Content{id}; }

    constexpr bool is_garbage() const { return code_ == 0; }
    constexpr PacketId packet_id() const { return code_; }
    /// 0 for garbage, k for packet k.
    constexpr int code() const { return code_; }

    constexpr bool operator==(const Content&) const = default;

private:
    constexpr explicit Content(int code) : code_(code) {}
    int code_;
};

enum class ActionKind { Sleep, Listen, Transmit };

/// Per-slot behavior of one process.
class Action {
public:
    constexpr Action() = default;
    static constexpr Action sleep() { return Action{ActionKind::Sleep, -1}; }
    static constexpr Action listen() { return Action{ActionKind::Listen, -1}; }
    static constexpr Action transmit(Content c) { return Action{ActionKind::Transmit, c.code()}; }

    constexpr ActionKind kind() const { return kind_; }
    constexpr bool is_sleep() const { return kind_ == ActionKind::Sleep; }
    constexpr bool is_listen() const { return kind_ == ActionKind::Listen; }
    constexpr bool is_transmit() const { return kind_ == ActionKind::Transmit; }
    /// Only meaningful for Transmit.
    constexpr Content content() const { return code_ == 0 ? Content::garbage() : Content::packet(code_); }
    /// -1 when not transmitting, 0 for garbage, k for packet k.
    constexpr int transmit_code() const { return code_; }
    constexpr bool transmits_packet(PacketId k) const { return kind_ == ActionKind::Transmit && code_ == k; }

    constexpr bool operator==(const Action&) const = default;

private:
    constexpr Action(ActionKind kind, int code) : kind_(kind), code_(code) {}
    ActionKind kind_ = ActionKind::Sleep;
    int code_ = -1;
};

/// "sleep" | "listen" | "tx:0" | "tx:<k>"
std::string to_string(Action a);
std::optional<Action> action_from_string(std::string_view text);

/// T x P grid of actions, row-major by time.
class ActionGrid {
public:
    ActionGrid() = default;
    ActionGrid(int slots, int processes, Action fill = Action::sleep())
        : slots_(slots), processes_(processes), cells_(std::size_t(slots) * std::size_t(processes), fill)
    {
    }

    int slots() const { return slots_; }
    int processes() const { return processes_; }

    Action& at(int t, ProcessId p) { return cells_[index(t, p)]; }
    Action at(int t, ProcessId p) const { return cells_[index(t, p)]; }

    std::vector<Action> row(int t) const
    {
        auto first = cells_.begin() + std::ptrdiff_t(index(t, 0));
        return {first, first + processes_};
    }
    const std::vector<Action>& cells() const { return cells_; }
    std::vector<Action>& cells() { return cells_; }

    bool operator==(const ActionGrid&) const = default;

private:
    std::size_t index(int t, ProcessId p) const { return std::size_t(t) * std::size_t(processes_) + std::size_t(p); }
    int slots_ = 0;
    int processes_ = 0;
    std::vector<Action> cells_;
};

} // namespace protoforge
