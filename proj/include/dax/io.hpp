#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dax/session.hpp"

namespace dax {

/// First line of events.jsonl: everything needed to recompute reports from
/// the log alone (design cards, domain, protocol parameters).
struct EventLogHeader {
    int schema = 1;
    std::uint64_t seed = 0;
    int n_periods = 0;
    int max_ticks_per_period = 0;
    int final_call_limit = 0;
    int silence_threshold = 0;
    PriceDomain domain;
    std::string rules_digest;
    std::vector<PrivateCard> cards;  // indexed by agent id

    bool operator==(const EventLogHeader&) const = default;
};

EventLogHeader header_from_config(const SessionConfig& config);

struct EventLog {
    EventLogHeader header;
    std::vector<SessionEvent> events;

    bool operator==(const EventLog&) const = default;
};

/// One JSON object per line, each carrying a schema version field; the
/// header line first, then events in order.
void write_event_log(std::ostream& out, const EventLogHeader& header,
                     std::span<const SessionEvent> events);
EventLog read_event_log(std::istream& in);
EventLog read_event_log_file(const std::string& path);

/// Recomputes per-period trades, reports, and the equilibrium from a stored
/// log; the simulation is not re-run.
struct LogSummary {
    Schedule schedule;
    EquilibriumResult equilibrium;
    std::vector<PeriodOutcome> periods;
};

LogSummary summarize_log(const EventLog& log);

/// period,predicted_qty,actual_qty,predicted_price,avg_price,convergence_coeff,efficiency
/// Prices print as dollars with 2 decimals, the coefficient with 2 decimals,
/// efficiency with 4; absent values print as empty fields.
void write_report_csv(std::ostream& out, std::span<const PeriodOutcome> periods);

/// period,tick,price — one row per executed trade, for plotting.
void write_prices_csv(std::ostream& out, std::span<const SessionEvent> events);

/// Full report rows plus the equilibrium, prices in integer cents.
void write_report_json(std::ostream& out, const EquilibriumResult& eq,
                       std::span<const PeriodOutcome> periods);

}  // namespace dax
