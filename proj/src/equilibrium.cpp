#include "dax/equilibrium.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dax/errors.hpp"

namespace dax {

namespace {

std::int64_t checked(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(what);
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational operator+(Rational a, Rational b) {
    const __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    const __int128 d = static_cast<__int128>(a.den) * b.den;
    return Rational(checked(n, "Rational +"), checked(d, "Rational +"));
}

Rational operator-(Rational a, Rational b) { return a + (-b); }

Rational operator*(Rational a, Rational b) {
    const __int128 n = static_cast<__int128>(a.num) * b.num;
    const __int128 d = static_cast<__int128>(a.den) * b.den;
    return Rational(checked(n, "Rational *"), checked(d, "Rational *"));
}

Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::invalid_argument("Rational: divide by zero");
    const __int128 n = static_cast<__int128>(a.num) * b.den;
    const __int128 d = static_cast<__int128>(a.den) * b.num;
    return Rational(checked(n, "Rational /"), checked(d, "Rational /"));
}

bool operator<(Rational a, Rational b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Schedule build_schedule(std::span<const PrivateCard> cards) {
    Schedule s;
    for (const PrivateCard& c : cards) {
        (c.role == Role::Buyer ? s.buyer_values : s.seller_costs).push_back(c.limit);
    }
    std::sort(s.buyer_values.begin(), s.buyer_values.end(), std::greater<>{});
    std::sort(s.seller_costs.begin(), s.seller_costs.end());
    return s;
}

int demand_at(const Schedule& s, Money price) {
    int n = 0;
    for (Money v : s.buyer_values) {
        if (v >= price) ++n;
    }
    return n;
}

int supply_at(const Schedule& s, Money price) {
    int n = 0;
    for (Money c : s.seller_costs) {
        if (c <= price) ++n;
    }
    return n;
}

EquilibriumResult clearing(const Schedule& s, const PriceDomain& domain) {
    const auto& v = s.buyer_values;
    const auto& c = s.seller_costs;
    const int max_q = static_cast<int>(std::min(v.size(), c.size()));

    int q = 0;
    Money welfare(0);
    while (q < max_q && v[q] >= c[q]) {
        welfare += v[q] - c[q];
        ++q;
    }

    EquilibriumResult r;
    r.quantity = q;
    r.max_welfare = welfare;
    if (q == 0) {
        // Any price in the domain clears zero units.
        r.price_low = domain.floor;
        r.price_high = domain.ceiling;
    } else {
        Money lo = c[q - 1];
        Money hi = v[q - 1];
        if (q < static_cast<int>(v.size())) lo = std::max(lo, v[q]);
        if (q < static_cast<int>(c.size())) hi = std::min(hi, c[q]);
        r.price_low = lo;
        r.price_high = hi;
    }
    r.price_mid = Money(round_half_up_cents(
        (static_cast<double>(r.price_low.cents()) + static_cast<double>(r.price_high.cents())) / 2.0));
    return r;
}

Money linear_equilibrium(const LinearMarket& m) {
    if (m.s == m.t) throw DegenerateSlopes("supply and demand slopes are equal");
    // s*p + k = t*p - h  =>  p = (h + k) / (t - s), in dollars
    const Rational price = (m.h + m.k) / (m.t - m.s);
    if (price <= Rational(0)) throw NegativePrice("cleared price is not positive");
    // Exact cents with halves up: floor(100*price + 1/2); price is positive.
    const Rational cents = price * Rational(100) + Rational(1, 2);
    return Money(cents.num / cents.den);
}

namespace {

const PrivateCard& card_for(std::span<const PrivateCard> cards, AgentId id, Role role) {
    if (id < 0 || static_cast<std::size_t>(id) >= cards.size()) {
        throw UnknownAgent("trade references an agent with no card");
    }
    const PrivateCard& c = cards[static_cast<std::size_t>(id)];
    if (c.role != role) throw UnknownAgent("trade role does not match the agent's card");
    return c;
}

}  // namespace

Money realized_welfare(std::span<const PrivateCard> cards, std::span<const Trade> trades) {
    Money total(0);
    for (const Trade& t : trades) {
        const PrivateCard& b = card_for(cards, t.buyer, Role::Buyer);
        const PrivateCard& s = card_for(cards, t.seller, Role::Seller);
        total += b.limit - s.limit;
    }
    return total;
}

double realized_efficiency(std::span<const PrivateCard> cards,
                           std::span<const Trade> trades, Money max_welfare) {
    if (max_welfare.cents() == 0) return 1.0;
    return static_cast<double>(realized_welfare(cards, trades).cents()) /
           static_cast<double>(max_welfare.cents());
}

std::vector<PrivateCard> default_design_cards() {
    std::vector<PrivateCard> cards;
    cards.reserve(22);
    for (int i = 0; i < 11; ++i) {
        cards.push_back({Role::Buyer, Money(325 - 25 * i)});
    }
    for (int i = 0; i < 11; ++i) {
        cards.push_back({Role::Seller, Money(75 + 25 * i)});
    }
    return cards;
}

}  // namespace dax
