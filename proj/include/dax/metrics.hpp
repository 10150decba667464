#pragma once

#include <optional>
#include <span>

#include "dax/equilibrium.hpp"
#include "dax/events.hpp"
#include "dax/money.hpp"

namespace dax {

/// 100 * RMS(p_i - p_e) / p_e, reported to 2 decimals. Throws EmptyPrices on
/// an empty list. RMS dominates the mean absolute deviation, so the result is
/// always >= 100*|avg - p_e|/p_e up to the 2-decimal rounding.
double convergence_coefficient(std::span<const Money> prices, Money p_e);

/// Dispersion of a period's prices and quotes: population standard deviation
/// of trade prices, and the mean/max bid-ask gap. The gap is sampled at each
/// quote-posting tick after that tick's quotes land and before any resulting
/// trade clears the book, so a momentarily crossed book still contributes.
/// All values in dollars.
struct VolatilityStats {
    double price_stddev = 0.0;
    std::optional<double> mean_spread;
    std::optional<double> max_spread;
};

VolatilityStats volatility_stats(std::span<const SessionEvent> events);

/// One reporting row per trading period. Zero-trade periods carry absent
/// avg_price and convergence_coeff rather than zeros; a silent market did not
/// converge perfectly.
struct PeriodReport {
    int period = 0;
    int predicted_qty = 0;
    int actual_qty = 0;
    Money predicted_price;
    std::optional<Money> avg_price;
    std::optional<double> convergence_coeff;
    double efficiency = 0.0;
    double price_stddev = 0.0;
    std::optional<double> mean_spread;
    std::optional<double> max_spread;
};

/// Fills a report row from one period's trades. `cards` is indexed by agent
/// id and must be the design that produced the trades. Pass the period's
/// volatility stats when quote events are available; trade-price stddev is
/// recomputed here either way.
PeriodReport period_report(int period, std::span<const Trade> trades,
                           const EquilibriumResult& eq, std::span<const PrivateCard> cards,
                           const VolatilityStats* vol = nullptr);

}  // namespace dax
