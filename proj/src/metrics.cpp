#include "dax/metrics.hpp"

#include <cmath>

#include "dax/errors.hpp"

namespace dax {

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

double convergence_coefficient(std::span<const Money> prices, Money p_e) {
    if (prices.empty()) throw EmptyPrices("no trade prices");
    if (p_e.cents() <= 0) throw std::invalid_argument("equilibrium price must be positive");
    double ss = 0.0;
    for (Money p : prices) {
        const double d = (p - p_e).dollars();
        ss += d * d;
    }
    const double rms = std::sqrt(ss / static_cast<double>(prices.size()));
    return round2(100.0 * rms / p_e.dollars());
}

VolatilityStats volatility_stats(std::span<const SessionEvent> events) {
    StandingBook book;
    double spread_sum = 0.0;
    double spread_max = 0.0;
    int spread_n = 0;
    double price_sum = 0.0, price_ss = 0.0;
    int trades = 0;

    std::size_t i = 0;
    while (i < events.size()) {
        // One tick's events at a time: quotes land, the post-quote book is
        // sampled, then trades and period boundaries clear it.
        const int period = events[i].period;
        const int tick = events[i].tick;
        std::size_t j = i;
        bool posted = false;
        for (; j < events.size() && events[j].period == period && events[j].tick == tick; ++j) {
            if (const auto* q = std::get_if<QuotePostedEvent>(&events[j].payload)) {
                book.quote(q->side) = Quote{q->agent, q->side, q->price, tick};
                posted = true;
            }
        }
        if (posted && book.best_bid && book.best_ask) {
            const double gap = std::abs((book.best_bid->price - book.best_ask->price).dollars());
            spread_sum += gap;
            spread_max = std::max(spread_max, gap);
            ++spread_n;
        }
        for (std::size_t k = i; k < j; ++k) {
            if (const auto* t = std::get_if<TradeExecutedEvent>(&events[k].payload)) {
                const double p = t->trade.price.dollars();
                price_sum += p;
                price_ss += p * p;
                ++trades;
                book.clear();
            } else if (std::holds_alternative<PeriodEndedEvent>(events[k].payload)) {
                book.clear();
            }
        }
        i = j;
    }

    VolatilityStats out;
    if (trades > 0) {
        const double mean = price_sum / trades;
        const double var = std::max(0.0, price_ss / trades - mean * mean);
        out.price_stddev = std::sqrt(var);
    }
    if (spread_n > 0) {
        out.mean_spread = spread_sum / spread_n;
        out.max_spread = spread_max;
    }
    return out;
}

PeriodReport period_report(int period, std::span<const Trade> trades,
                           const EquilibriumResult& eq, std::span<const PrivateCard> cards,
                           const VolatilityStats* vol) {
    PeriodReport r;
    r.period = period;
    r.predicted_qty = eq.quantity;
    r.predicted_price = eq.price_mid;
    r.actual_qty = static_cast<int>(trades.size());
    r.efficiency = realized_efficiency(cards, trades, eq.max_welfare);

    if (!trades.empty()) {
        std::vector<Money> prices;
        prices.reserve(trades.size());
        std::int64_t sum = 0;
        for (const Trade& t : trades) {
            prices.push_back(t.price);
            sum += t.price.cents();
        }
        r.avg_price = Money(round_half_up_cents(static_cast<double>(sum) /
                                                static_cast<double>(trades.size())));
        r.convergence_coeff = convergence_coefficient(prices, eq.price_mid);

        const double mean = static_cast<double>(sum) / trades.size() / 100.0;
        double ss = 0.0;
        for (Money p : prices) {
            const double d = p.dollars() - mean;
            ss += d * d;
        }
        r.price_stddev = std::sqrt(ss / static_cast<double>(trades.size()));
    }
    if (vol) {
        r.mean_spread = vol->mean_spread;
        r.max_spread = vol->max_spread;
    }
    return r;
}

}  // namespace dax
