#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dax/agents.hpp"
#include "dax/equilibrium.hpp"
#include "dax/events.hpp"
#include "dax/metrics.hpp"
#include "dax/rng.hpp"

namespace dax {

struct Seat {
    AgentId id = -1;
    PrivateCard card;
    std::unique_ptr<Strategy> strategy;
};

struct SessionConfig {
    int n_periods = 5;
    std::uint64_t seed = 0;
    int max_ticks_per_period = 500;
    int final_call_limit = 3;
    /// Consecutive silent ordinary polls before a final-call sweep;
    /// 0 means "match the current active-agent count" (one expected sweep).
    int silence_threshold = 0;
    PriceDomain domain;
    std::string rules_digest;
    std::vector<Seat> roster;
};

struct PeriodOutcome {
    int period = 0;
    std::vector<Trade> trades;
    PeriodReport report;
};

struct SessionReport {
    Schedule schedule;
    EquilibriumResult equilibrium;
    std::vector<PeriodOutcome> periods;
    std::vector<SessionEvent> events;
    std::vector<Trade> history;
};

/// Throws ConfigError unless: roster non-empty with ids exactly 0..n-1 (any
/// order), every card limit inside the price domain, n_periods and
/// max_ticks_per_period >= 1, final_call_limit >= 1.
void validate_config(const SessionConfig& config);

/// Runs the full protocol: per period, agents are polled one at a time in
/// uniformly random order over the active set; quotes flow through the book
/// and trades settle immediately. Sustained silence triggers final-call
/// sweeps in roster order; after `final_call_limit` consecutive silent sweeps
/// the period ends. Cards, the active set, and the book reset each period;
/// trade history accumulates across the whole session. Deterministic given
/// the config, including the seed.
///
/// The config is borrowed, not consumed, so callers can interrogate strategy
/// state (e.g. recorded transcripts) afterwards. Strategies carry their
/// learned state out of the run; reuse a config only with fresh strategies.
SessionReport run_session(SessionConfig& config);

/// Cards indexed by agent id, as validated.
std::vector<PrivateCard> roster_cards(const SessionConfig& config);

}  // namespace dax
