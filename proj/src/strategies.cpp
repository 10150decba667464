#include "dax/strategies.hpp"

#include <cmath>

#include "dax/errors.hpp"

namespace dax {

AgentAction post_or_accept(Money candidate, const Observation& obs) {
    const auto& counter = obs.book.quote(opposite(obs.card.role));
    if (counter && obs.card.admits(counter->price)) {
        const bool weakly_better = obs.card.role == Role::Buyer
                                       ? counter->price <= candidate
                                       : counter->price >= candidate;
        if (weakly_better) return AgentAction::accept();
    }
    return AgentAction::post(candidate);
}

AgentAction ZiStrategy::decide(const Observation& obs, Rng& rng) {
    const auto [lo, hi] = admissible_range(obs.card, obs.domain);
    return AgentAction::post(rng.uniform_money(lo, hi));
}

AdaptiveStrategy::AdaptiveStrategy(double gamma, std::optional<Money> start)
    : gamma_(gamma), start_(start) {
    AdaptiveState(start.value_or(Money(0)), gamma);  // bounds check
}

void AdaptiveStrategy::begin_session(const SessionSeat& seat) {
    p_current_ = start_.value_or(seat.card.limit);
}

AgentAction AdaptiveStrategy::decide(const Observation& obs, Rng&) {
    return post_or_accept(clamp_admissible(p_current_, obs.card, obs.domain), obs);
}

void AdaptiveStrategy::observe_trade(const Trade& t, int, int) {
    p_current_ = adaptive_update(p_current_, t.price, gamma_);
}

BeliefStrategy::BeliefStrategy(double likelihood_sd, Money grid_step)
    : sd_(likelihood_sd), step_(grid_step) {
    if (!(likelihood_sd > 0.0)) throw std::invalid_argument("likelihood_sd must be positive");
}

void BeliefStrategy::begin_session(const SessionSeat& seat) {
    grid_ = BeliefGrid::uniform(seat.domain, step_);
}

AgentAction BeliefStrategy::decide(const Observation& obs, Rng&) {
    const Money mean(round_half_up_cents(grid_.mean_price_cents()));
    return post_or_accept(clamp_admissible(mean, obs.card, obs.domain), obs);
}

void BeliefStrategy::observe_trade(const Trade& t, int, int) {
    std::vector<double> like(grid_.prices.size());
    const double y = t.price.dollars();
    for (std::size_t i = 0; i < grid_.prices.size(); ++i) {
        const double z = (grid_.prices[i].dollars() - y) / sd_;
        like[i] = std::exp(-0.5 * z * z);
    }
    try {
        grid_ = bayes_update(grid_, like);
    } catch (const ZeroEvidence&) {
        // Posterior underflowed to nothing; restart from ignorance rather
        // than trade on a dead grid.
        PriceDomain d{grid_.prices.front(), grid_.prices.back()};
        grid_ = BeliefGrid::uniform(d, step_);
    }
}

ProspectStrategy::ProspectStrategy(double alpha_risk, double lambda_loss,
                                   std::optional<Money> reference)
    : params_{alpha_risk, lambda_loss, reference.value_or(Money(0))},
      reference_fixed_(reference.has_value()) {
    params_.validate();
}

void ProspectStrategy::begin_session(const SessionSeat& seat) {
    if (!reference_fixed_) params_.reference = seat.card.limit;
}

AgentAction ProspectStrategy::decide(const Observation& obs, Rng&) {
    const Money ref = obs.last_trade().value_or(params_.reference);
    const auto [lo, hi] = admissible_range(obs.card, obs.domain);
    const bool buyer = obs.card.role == Role::Buyer;

    // Scan from the favorable end so ties keep the higher-surplus price.
    Money best = buyer ? lo : hi;
    double best_u = -1.0;
    for (Money c = lo; c <= hi; c += Money(1)) {
        const Money at = buyer ? c : hi - (c - lo);
        const double surplus =
            (buyer ? obs.card.limit - at : at - obs.card.limit).dollars();
        const double delta = std::abs((at - ref).dollars());
        const double u = prospect_utility(surplus, params_, delta);
        if (u > best_u) {
            best_u = u;
            best = at;
        }
    }
    return post_or_accept(best, obs);
}

AgentAction StaticPolicyStrategy::decide(const Observation& obs, Rng&) {
    const auto& own = obs.book.quote(obs.card.role);
    const std::array<double, 4> features{
        1.0,
        obs.last_trade() ? obs.last_trade()->dollars() : 0.0,
        own ? own->price.dollars() : 0.0,
        obs.card.limit.dollars(),
    };
    return post_or_accept(static_policy_price(params_, features, obs.card, obs.domain), obs);
}

ResponsiveStrategy::ResponsiveStrategy(ResponsiveParams params) : params_(params) {
    params_.validate();
}

AgentAction ResponsiveStrategy::decide(const Observation& obs, Rng& rng) {
    const Money candidate = responsive_price(params_, obs.active_sellers, obs.active_buyers,
                                             rng, obs.card, obs.domain);
    return post_or_accept(candidate, obs);
}

void ResponsiveStrategy::observe_trade(const Trade& t, int active_buyers, int active_sellers) {
    lms_step(params_, active_sellers, active_buyers, t.price);
}

}  // namespace dax
