#include "dax/market.hpp"

namespace dax {

const char* to_cstring(AdmitError e) {
    switch (e) {
        case AdmitError::ConstraintViolation: return "constraint";
        case AdmitError::InactiveAgent: return "inactive";
    }
    return "?";
}

const char* to_cstring(SettleError e) {
    switch (e) {
        case SettleError::DoubleTrade: return "double_trade";
    }
    return "?";
}

std::optional<AdmitError> admit_quote(StandingBook& book, const Quote& quote,
                                      const PrivateCard& card,
                                      const std::set<AgentId>& active) {
    if (!active.count(quote.agent)) return AdmitError::InactiveAgent;
    if (!card.admits(quote.price)) return AdmitError::ConstraintViolation;
    book.quote(quote.side) = quote;
    return std::nullopt;
}

std::optional<Trade> try_match(StandingBook& book, int period, int tick) {
    if (!book.crossed()) return std::nullopt;
    const Quote& bid = *book.best_bid;
    const Quote& ask = *book.best_ask;
    // Earlier-posted quote sets the price; a tick tie resolves to the ask.
    const bool ask_sets = ask.tick <= bid.tick;
    Trade trade;
    trade.buyer = bid.agent;
    trade.seller = ask.agent;
    trade.price = ask_sets ? ask.price : bid.price;
    trade.price_setter = ask_sets ? Role::Seller : Role::Buyer;
    trade.period = period;
    trade.tick = tick;
    book.clear();
    return trade;
}

std::optional<SettleError> settle(const Trade& trade, std::set<AgentId>& active,
                                  StandingBook& book) {
    if (!active.count(trade.buyer) || !active.count(trade.seller)) {
        return SettleError::DoubleTrade;
    }
    active.erase(trade.buyer);
    active.erase(trade.seller);
    for (auto* side : {&book.best_bid, &book.best_ask}) {
        if (*side && ((*side)->agent == trade.buyer || (*side)->agent == trade.seller)) {
            side->reset();
        }
    }
    return std::nullopt;
}

}  // namespace dax
