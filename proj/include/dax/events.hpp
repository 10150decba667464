#pragma once

#include <string>
#include <variant>

#include "dax/market.hpp"
#include "dax/money.hpp"

namespace dax {

struct QuotePostedEvent {
    AgentId agent = -1;
    Role side = Role::Buyer;
    Money price;
    bool operator==(const QuotePostedEvent&) const = default;
};

enum class RejectReason {
    Constraint,     // price violates the poster's card
    Inactive,       // poster already traded this period
    InvalidAccept,  // no standing counter-quote, or it violates the card
};

const char* to_cstring(RejectReason r);
RejectReason reject_reason(AdmitError e);

struct QuoteRejectedEvent {
    AgentId agent = -1;
    Role side = Role::Buyer;
    Money price;
    RejectReason reason = RejectReason::Constraint;
    bool operator==(const QuoteRejectedEvent&) const = default;
};

struct TradeExecutedEvent {
    Trade trade;
    bool operator==(const TradeExecutedEvent&) const = default;
};

struct FinalCallIssuedEvent {
    int round = 0;  // 1-based within the current silent streak
    bool operator==(const FinalCallIssuedEvent&) const = default;
};

enum class PeriodEndReason { FinalCall, SideExhausted, TickBudget };

const char* to_cstring(PeriodEndReason r);

struct PeriodEndedEvent {
    PeriodEndReason reason = PeriodEndReason::FinalCall;
    int n_trades = 0;
    bool operator==(const PeriodEndedEvent&) const = default;
};

struct SessionEndedEvent {
    bool operator==(const SessionEndedEvent&) const = default;
};

/// Out-of-band agent condition (external agents only): a timed-out poll, a
/// malformed reply, or a dropped connection. The poll itself degrades to Pass.
struct AgentNoteEvent {
    AgentId agent = -1;
    std::string kind;  // "timeout" | "malformed" | "connection_lost"
    bool operator==(const AgentNoteEvent&) const = default;
};

using EventPayload = std::variant<QuotePostedEvent, QuoteRejectedEvent, TradeExecutedEvent,
                                  FinalCallIssuedEvent, PeriodEndedEvent, SessionEndedEvent,
                                  AgentNoteEvent>;

/// One log record. Events are strictly ordered by (period, tick, seq); seq
/// disambiguates multiple events within one tick (e.g. a post and the trade
/// it triggers).
struct SessionEvent {
    int period = 0;
    int tick = 0;
    int seq = 0;
    EventPayload payload;

    bool operator==(const SessionEvent&) const = default;
};

}  // namespace dax
