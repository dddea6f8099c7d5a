#pragma once

#include "protoforge/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace protoforge {

/// Per-slot cost of each action, in abstract power units (pw).
struct PowerModel {
    double active_cost = 1.0; ///< Transmit or Listen
    double idle_cost = 0.0;   ///< Sleep

    bool operator==(const PowerModel&) const = default;
};

struct SimReport {
    NetworkSpec spec;
    PowerModel power;
    int slots_run = 0;
    KnowledgeRow delivered; ///< P x M at the end of the run
    std::vector<double> per_process_power;
    double total_power = 0;
    int concurrent_tx_slots = 0; ///< slots with two or more transmitters
    bool completed = false;
    std::optional<int> completion_slot; ///< earliest time index with full knowledge

    bool collision_detection_needed() const { return concurrent_tx_slots > 0; }
};

/// Replays a synthesized trace through the learning rule. Throws SimError if
/// the trace violates any requirement other than the deadline goal.
SimReport simulate_trace(const ProtocolTrace& trace, const PowerModel& power = {});

struct BaselineRun {
    ProtocolTrace trace; ///< knowledge follows the per-listener rule, not derive_knowledge
    SimReport report;
};

/// Eager always-on policy: a process that holds every packet transmits them
/// round-robin (lowest id first); a process still missing packets listens.
/// Nobody sleeps. A listener learns when exactly one of the speakers it can
/// hear transmits a packet. Runs until completion or `max_slots`.
BaselineRun run_baseline(const NetworkSpec& spec, const PowerModel& power = {}, int max_slots = 100);

struct ComparisonReport {
    SimReport synthesized;
    SimReport baseline;
    std::string power_verdict;
    std::string collision_verdict;

    std::string text() const;
    std::string json() const;
};

/// Throws SimError when the reports come from different specs (horizon
/// aside) or power models.
ComparisonReport compare(const SimReport& synthesized, const SimReport& baseline);

std::string render_report(const SimReport& report);
std::string report_json(const SimReport& report);

} // namespace protoforge
