#pragma once

// Reference implementations the engine is checked against. Each is written
// from first principles with its own state, sharing nothing with the library
// beyond elementary value types, so agreement is meaningful.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "dax/money.hpp"

namespace oracle {

// --- quote matching -------------------------------------------------------
// Scalar replay of a post stream: one standing bid, one standing ask, a
// traded set. A post by a traded agent is rejected; a crossing pair trades
// at the earlier quote's price (tick ties go to the ask) and retires both.

struct QuoteEvent {
    dax::AgentId agent;
    dax::Role side;
    std::int64_t price;
};

struct TradeRec {
    dax::AgentId buyer;
    dax::AgentId seller;
    std::int64_t price;
    int tick;

    bool operator==(const TradeRec&) const = default;
};

struct MatchResult {
    std::vector<TradeRec> trades;
    std::vector<int> rejected;  // indices into the event stream
};

inline MatchResult replay_quotes(const std::vector<QuoteEvent>& events) {
    struct Standing {
        dax::AgentId agent;
        std::int64_t price;
        int tick;
    };
    std::optional<Standing> bid, ask;
    std::set<dax::AgentId> traded;
    MatchResult out;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const QuoteEvent& e = events[i];
        const int tick = static_cast<int>(i) + 1;
        if (traded.count(e.agent)) {
            out.rejected.push_back(static_cast<int>(i));
            continue;
        }
        if (e.side == dax::Role::Buyer) {
            bid = Standing{e.agent, e.price, tick};
        } else {
            ask = Standing{e.agent, e.price, tick};
        }
        if (bid && ask && bid->price >= ask->price) {
            const bool ask_first = ask->tick <= bid->tick;
            out.trades.push_back(
                TradeRec{bid->agent, ask->agent, ask_first ? ask->price : bid->price, tick});
            traded.insert(bid->agent);
            traded.insert(ask->agent);
            bid.reset();
            ask.reset();
        }
    }
    return out;
}

// --- maximum welfare ------------------------------------------------------
// Exhaustive search over all one-unit matchings: each buyer pairs with at
// most one seller, pairs require value >= cost, maximize total surplus.
// Sellers are tracked as a bitmask; fine for the <= 16 per side used here.

inline std::int64_t max_welfare(const std::vector<std::int64_t>& values,
                                const std::vector<std::int64_t>& costs) {
    const std::size_t n = values.size();
    const std::size_t m = costs.size();
    const std::size_t masks = std::size_t{1} << m;
    // best[mask] = max surplus from buyers seen so far with sellers in `mask` used
    std::vector<std::int64_t> best(masks, INT64_MIN);
    best[0] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::int64_t> next = best;  // buyer i may stay unmatched
        for (std::size_t mask = 0; mask < masks; ++mask) {
            if (best[mask] == INT64_MIN) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if ((mask >> j) & 1) continue;
                if (values[i] < costs[j]) continue;
                const std::size_t used = mask | (std::size_t{1} << j);
                next[used] = std::max(next[used], best[mask] + values[i] - costs[j]);
            }
        }
        best = std::move(next);
    }
    std::int64_t top = 0;
    for (std::int64_t w : best) top = std::max(top, w);
    return top;
}

// --- market-clearing price scan -------------------------------------------
// A uniform price supports equilibrium when everyone with a strict gain can
// trade and the two sides can be balanced by indifferent agents:
//   #{v > p} <= #{c <= p}  and  #{c < p} <= #{v >= p}.

inline bool supports_clearing(const std::vector<std::int64_t>& values,
                              const std::vector<std::int64_t>& costs, std::int64_t p) {
    const auto count = [](const std::vector<std::int64_t>& xs, auto pred) {
        std::int64_t n = 0;
        for (std::int64_t x : xs) {
            if (pred(x)) ++n;
        }
        return n;
    };
    const auto eager_buyers = count(values, [&](std::int64_t v) { return v > p; });
    const auto willing_sellers = count(costs, [&](std::int64_t c) { return c <= p; });
    const auto eager_sellers = count(costs, [&](std::int64_t c) { return c < p; });
    const auto willing_buyers = count(values, [&](std::int64_t v) { return v >= p; });
    return eager_buyers <= willing_sellers && eager_sellers <= willing_buyers;
}

// Largest min(demand, supply) over every cent in [lo, hi].
inline int max_clearable_quantity(const std::vector<std::int64_t>& values,
                                  const std::vector<std::int64_t>& costs, std::int64_t lo,
                                  std::int64_t hi) {
    int best = 0;
    for (std::int64_t p = lo; p <= hi; ++p) {
        int d = 0, s = 0;
        for (std::int64_t v : values) {
            if (v >= p) ++d;
        }
        for (std::int64_t c : costs) {
            if (c <= p) ++s;
        }
        best = std::max(best, std::min(d, s));
    }
    return best;
}

// --- welfare of a linear market at a candidate price -----------------------
// Supply s*p + k and demand t*p - h (s > 0 > t for a proper market). At price
// p the short side trades: q(p) = min(D(p), S(p)). Total surplus is the area
// between the inverse demand and inverse supply curves up to q(p), computed
// by midpoint quadrature so the check stays independent of any closed form.

inline double linear_welfare_at(double s, double k, double t, double h, double p) {
    const double demand = t * p - h;
    const double supply = s * p + k;
    const double q = std::min(demand, supply);
    if (q <= 0.0) return 0.0;
    const int slices = 4000;
    double sum = 0.0;
    for (int i = 0; i < slices; ++i) {
        const double x = q * (i + 0.5) / slices;
        const double inv_demand = (x + h) / t;
        const double inv_supply = (x - k) / s;
        sum += inv_demand - inv_supply;
    }
    return sum * q / slices;
}

}  // namespace oracle
