#pragma once

#include <optional>
#include <set>

#include "dax/money.hpp"

namespace dax {

/// A posted limit quote. `tick` records when it was posted and decides which
/// side's price a crossing trade executes at.
struct Quote {
    AgentId agent = -1;
    Role side = Role::Buyer;
    Money price;
    int tick = 0;

    bool operator==(const Quote&) const = default;
};

/// The book keeps at most one quote per side; a new quote on a side replaces
/// the standing one unconditionally.
struct StandingBook {
    std::optional<Quote> best_bid;
    std::optional<Quote> best_ask;

    std::optional<Quote>& quote(Role side) {
        return side == Role::Buyer ? best_bid : best_ask;
    }
    const std::optional<Quote>& quote(Role side) const {
        return side == Role::Buyer ? best_bid : best_ask;
    }

    bool crossed() const {
        return best_bid && best_ask && best_bid->price >= best_ask->price;
    }

    void clear() {
        best_bid.reset();
        best_ask.reset();
    }

    bool operator==(const StandingBook&) const = default;
};

struct Trade {
    AgentId buyer = -1;
    AgentId seller = -1;
    Money price;
    int period = 0;
    int tick = 0;
    /// Side whose quote stood first and therefore set the execution price.
    Role price_setter = Role::Seller;

    bool operator==(const Trade&) const = default;
};

enum class AdmitError {
    ConstraintViolation,  // bid above a buyer's cash, or ask below a seller's cost
    InactiveAgent,        // poster already traded this period (or never active)
};

enum class SettleError {
    DoubleTrade,  // a counterparty was not active when the trade settled
};

const char* to_cstring(AdmitError e);
const char* to_cstring(SettleError e);

/// Validates a quote against the poster's card and activity, then installs it,
/// replacing any standing quote on that side. Returns the rejection reason,
/// or nullopt on success.
std::optional<AdmitError> admit_quote(StandingBook& book, const Quote& quote,
                                      const PrivateCard& card,
                                      const std::set<AgentId>& active);

/// If the book is crossed (bid >= ask), executes one trade at the price of
/// the earlier-posted quote and clears both sides. Ties on tick execute at
/// the ask price. Returns nullopt when the book does not cross.
std::optional<Trade> try_match(StandingBook& book, int period, int tick);

/// Removes both parties from the active set and drops any quote either still
/// has standing. Fails if a party was not active.
std::optional<SettleError> settle(const Trade& trade, std::set<AgentId>& active,
                                  StandingBook& book);

}  // namespace dax
