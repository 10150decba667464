#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dax/market.hpp"
#include "dax/money.hpp"

namespace dax {

/// Exact rational with int64 numerator/denominator, always normalized
/// (gcd 1, denominator positive). Products use 128-bit intermediates.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend Rational operator/(Rational a, Rational b);
    friend Rational operator-(Rational a) { return Rational(-a.num, a.den); }

    bool operator==(const Rational&) const = default;
    friend bool operator<(Rational a, Rational b);
    friend bool operator>(Rational a, Rational b) { return b < a; }
    friend bool operator<=(Rational a, Rational b) { return !(b < a); }
    friend bool operator>=(Rational a, Rational b) { return !(a < b); }
};

/// Sorted marginal schedules induced by a set of cards: buyer values
/// descending, seller costs ascending.
struct Schedule {
    std::vector<Money> buyer_values;
    std::vector<Money> seller_costs;

    bool operator==(const Schedule&) const = default;
};

Schedule build_schedule(std::span<const PrivateCard> cards);

/// Units demanded at `price`: buyers whose value is >= price.
int demand_at(const Schedule& s, Money price);
/// Units supplied at `price`: sellers whose cost is <= price.
int supply_at(const Schedule& s, Money price);

struct EquilibriumResult {
    Money price_low;
    Money price_high;
    /// Midpoint of the interval, fractional cents rounded half up.
    Money price_mid;
    int quantity = 0;
    /// Total surplus of the efficient allocation.
    Money max_welfare;

    bool operator==(const EquilibriumResult&) const = default;
};

/// Competitive equilibrium of the step schedules. The interval is every price
/// at which demand and supply both equal the clearing quantity; when no unit
/// clears it widens to the whole price domain.
EquilibriumResult clearing(const Schedule& s, const PriceDomain& domain = {});

/// Linear supply S(p) = s*p + k and demand D(p) = t*p - h.
struct LinearMarket {
    Rational s;
    Rational k;
    Rational t;
    Rational h;
};

/// Price where the two lines intersect, solved exactly and rounded to cents.
/// Throws DegenerateSlopes when s == t and NegativePrice when the solved
/// price is not strictly positive.
Money linear_equilibrium(const LinearMarket& m);

/// Sum over trades of (buyer value - seller cost). `cards` is indexed by
/// agent id; an out-of-range id or a role mismatch throws UnknownAgent.
Money realized_welfare(std::span<const PrivateCard> cards, std::span<const Trade> trades);

/// realized / maximum welfare; a market with nothing to gain scores 1.
double realized_efficiency(std::span<const PrivateCard> cards,
                           std::span<const Trade> trades, Money max_welfare);

/// The symmetric 22-trader design: 11 buyer values 3.25 down to 0.75 and 11
/// seller costs 0.75 up to 3.25, 0.25 apart. Card index is the agent id.
std::vector<PrivateCard> default_design_cards();

}  // namespace dax
