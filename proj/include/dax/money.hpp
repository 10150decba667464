#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>

namespace dax {

using AgentId = std::int32_t;

enum class Role { Buyer, Seller };

inline Role opposite(Role r) { return r == Role::Buyer ? Role::Seller : Role::Buyer; }
inline const char* to_cstring(Role r) { return r == Role::Buyer ? "buyer" : "seller"; }

/// Price in integer cents; one unit == $0.01. All market arithmetic stays in
/// integers so dollar amounts like 0.75, 2.04, 3.25 are exact.
class Money {
public:
    constexpr Money() = default;
    constexpr explicit Money(std::int64_t cents) : cents_(cents) {}

    static constexpr Money from_cents(std::int64_t c) { return Money(c); }
    static Money from_dollars(double d) { return Money(std::llround(d * 100.0)); }

    constexpr std::int64_t cents() const { return cents_; }
    double dollars() const { return static_cast<double>(cents_) / 100.0; }

    std::string str() const {
        char buf[32];
        std::int64_t a = cents_ < 0 ? -cents_ : cents_;
        std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", cents_ < 0 ? "-" : "",
                      static_cast<long long>(a / 100), static_cast<long long>(a % 100));
        return buf;
    }

    friend constexpr auto operator<=>(Money, Money) = default;
    friend constexpr Money operator+(Money a, Money b) { return Money(a.cents_ + b.cents_); }
    friend constexpr Money operator-(Money a, Money b) { return Money(a.cents_ - b.cents_); }
    Money& operator+=(Money o) { cents_ += o.cents_; return *this; }

private:
    std::int64_t cents_ = 0;
};

/// Nearest-cent rounding with halves rounded up (toward +inf on the price axis).
inline std::int64_t round_half_up_cents(double cents) {
    return static_cast<std::int64_t>(std::floor(cents + 0.5));
}

/// Admissible price range for the whole market. The default strictly contains
/// the default card range so constrained-random quoting is not clipped at the
/// card extremes.
struct PriceDomain {
    Money floor{1};       // $0.01
    Money ceiling{400};   // $4.00

    bool contains(Money p) const { return p >= floor && p <= ceiling; }
    Money clamp(Money p) const { return p < floor ? floor : (p > ceiling ? ceiling : p); }
    friend bool operator==(const PriceDomain&, const PriceDomain&) = default;
};

/// An agent's induced value: a buyer's cash ceiling or a seller's unit cost.
/// One unit may be traded per card per period. Constraints are weak so the
/// marginal trader (limit equal to the clearing price) can still trade.
struct PrivateCard {
    Role role = Role::Buyer;
    Money limit{};

    bool admits(Money price) const {
        return role == Role::Buyer ? price <= limit : price >= limit;
    }
    friend bool operator==(const PrivateCard&, const PrivateCard&) = default;
};

}  // namespace dax
