#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dax/agents.hpp"
#include "dax/money.hpp"

namespace dax {

/// Wire protocol: every message is exactly one line of UTF-8 JSON with a
/// `type` tag, terminated by '\n'. Prices cross the wire as integer cents
/// only. Unknown fields are ignored on input and never emitted.

struct InitMsg {
    AgentId agent = -1;
    Role role = Role::Buyer;
    Money limit;
    int periods = 0;
    std::string rules;

    bool operator==(const InitMsg&) const = default;
};

struct WireTrade {
    int period = 0;
    int tick = 0;
    Money price;

    bool operator==(const WireTrade&) const = default;
};

struct PollMsg {
    int period = 0;
    int tick = 0;
    std::optional<Money> best_bid;
    std::optional<Money> best_ask;
    /// Most recent trades, oldest first, capped at kHistoryTail.
    std::vector<WireTrade> history_tail;
    bool final_call = false;

    static constexpr std::size_t kHistoryTail = 10;

    bool operator==(const PollMsg&) const = default;
};

struct ActionMsg {
    AgentAction action;

    bool operator==(const ActionMsg&) const = default;
};

struct TradeMsg {
    int period = 0;
    int tick = 0;
    Money price;
    AgentId buyer = -1;
    AgentId seller = -1;

    bool operator==(const TradeMsg&) const = default;
};

struct PeriodEndMsg {
    int period = 0;
    int n_trades = 0;

    bool operator==(const PeriodEndMsg&) const = default;
};

struct SessionEndMsg {
    bool operator==(const SessionEndMsg&) const = default;
};

using WireMessage =
    std::variant<InitMsg, PollMsg, ActionMsg, TradeMsg, PeriodEndMsg, SessionEndMsg>;

/// One line including the trailing newline.
std::string encode_message(const WireMessage& msg);

/// Parses one line (the trailing newline is optional). Throws
/// MalformedMessage on invalid JSON, unknown or missing type, missing or
/// mistyped fields, and prices outside `domain`.
WireMessage decode_message(std::string_view line, const PriceDomain& domain = {});

}  // namespace dax
