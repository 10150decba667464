#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dax/market.hpp"
#include "dax/money.hpp"
#include "dax/rng.hpp"

namespace dax {

/// Everything an agent sees when polled. `history` is the cumulative trade
/// list for the whole session (all prior periods plus the current one, in
/// order); it only ever grows.
struct Observation {
    int period = 0;
    int tick = 0;
    PrivateCard card;
    PriceDomain domain;
    StandingBook book;
    const std::vector<Trade>* history = nullptr;
    bool is_final_call = false;
    /// Not-yet-traded counts at this tick; the demand/supply proxies visible
    /// to responsive agents.
    int active_buyers = 0;
    int active_sellers = 0;

    std::optional<Money> last_trade() const {
        if (!history || history->empty()) return std::nullopt;
        return history->back().price;
    }
};

struct AgentAction {
    enum class Kind { Post, Accept, Pass };

    Kind kind = Kind::Pass;
    Money price;  // meaningful only for Post

    static AgentAction post(Money p) { return {Kind::Post, p}; }
    static AgentAction accept() { return {Kind::Accept, Money(0)}; }
    static AgentAction pass() { return {Kind::Pass, Money(0)}; }

    bool operator==(const AgentAction&) const = default;
};

/// Out-of-band condition raised by a strategy (external transports only);
/// collected by the orchestrator after each poll.
struct StrategyNote {
    enum class Kind { Timeout, Malformed, ConnectionLost };
    Kind kind = Kind::Timeout;
    std::string detail;
};

/// Seat assignment handed to a strategy at session start.
struct SessionSeat {
    AgentId id = -1;
    PrivateCard card;
    PriceDomain domain;
    int n_periods = 0;
    std::string rules_digest;
};

/// A trading strategy. The orchestrator serializes every call; state is owned
/// by the strategy and must not be shared across agents. `decide` must be a
/// pure function of (internal state, observation, rng position).
class Strategy {
public:
    virtual ~Strategy() = default;

    virtual AgentAction decide(const Observation& obs, Rng& rng) = 0;

    /// Broadcast to every agent after a trade settles; counts are the
    /// post-settlement active totals.
    virtual void observe_trade(const Trade&, int /*active_buyers*/, int /*active_sellers*/) {}

    virtual void begin_session(const SessionSeat&) {}
    virtual void begin_period(int /*period*/) {}
    virtual void end_period(int /*period*/) {}
    virtual void end_session() {}

    /// Conditions accumulated since the last drain, oldest first.
    virtual std::vector<StrategyNote> drain_notes() { return {}; }

    virtual const char* name() const = 0;
};

/// Tightest price range satisfying both the card and the market domain.
/// Cards are validated against the domain at configuration time, so the
/// range is never empty.
std::pair<Money, Money> admissible_range(const PrivateCard& card, const PriceDomain& domain);
Money clamp_admissible(Money p, const PrivateCard& card, const PriceDomain& domain);

// ---------------------------------------------------------------------------
// Behavioral update rules (pure functions over plain parameter structs).

/// Recursive price estimate with learning rate gamma in [0, 1].
struct AdaptiveState {
    AdaptiveState(Money p, double g);

    Money p_current;
    double gamma;
};

/// p_{t+1} = p_t + gamma * (p_star - p_t), rounded to cents half-up.
Money adaptive_update(Money p_t, Money p_star, double gamma);

/// Discrete belief over prices: strictly increasing grid, non-negative mass
/// summing to 1 within 1e-12.
struct BeliefGrid {
    std::vector<Money> prices;
    std::vector<double> mass;

    /// Uniform prior over every `step`-th cent of the domain.
    static BeliefGrid uniform(const PriceDomain& domain, Money step = Money(1));

    double mean_price_cents() const;
    void validate() const;
};

/// Posterior with mass'_i proportional to mass_i * likelihood_i. Throws
/// ZeroEvidence when every product vanishes.
BeliefGrid bayes_update(const BeliefGrid& prior, std::span<const double> likelihood);

struct ProspectParams {
    double alpha_risk = 0.88;   // > 0, curvature of the value function
    double lambda_loss = 0.25;  // >= 0, penalty per unit distance from the reference
    Money reference;

    void validate() const;
};

/// U(x) = x^alpha * exp(-lambda * delta) for surplus x >= 0 at distance
/// delta from the reference point.
double prospect_utility(double x, const ProspectParams& params, double delta);

/// Fixed-weight linear policy over [1, last_trade, own_side_standing, limit];
/// absent features enter as 0.
struct StaticPolicyParams {
    std::array<double, 4> theta{2.00, 0.0, 0.0, 0.0};
};

Money static_policy_price(const StaticPolicyParams& params,
                          const std::array<double, 4>& features,
                          const PrivateCard& card, const PriceDomain& domain);

struct ResponsiveParams {
    double alpha_s = 0.10;    // weight on the supply proxy
    double beta_d = 0.25;     // weight on the demand proxy
    double noise_sd = 0.0;    // >= 0, Gaussian noise in dollars
    double learn_rate = 0.0;  // >= 0, LMS step size

    void validate() const;
};

/// alpha*S_t + beta*D_t + Gaussian(0, noise_sd) dollars, rounded and clamped.
/// noise_sd of 0 consumes no randomness.
Money responsive_price(const ResponsiveParams& params, int s_t, int d_t, Rng& rng,
                       const PrivateCard& card, const PriceDomain& domain);

/// One least-mean-squares step of (alpha, beta) against a realized trade
/// price under the proxies in effect for that trade.
void lms_step(ResponsiveParams& params, int s_t, int d_t, Money realized);

}  // namespace dax
