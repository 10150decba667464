#include "dax/agents.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dax/errors.hpp"

namespace dax {

std::pair<Money, Money> admissible_range(const PrivateCard& card, const PriceDomain& domain) {
    if (card.role == Role::Buyer) {
        return {domain.floor, std::min(card.limit, domain.ceiling)};
    }
    return {std::max(card.limit, domain.floor), domain.ceiling};
}

Money clamp_admissible(Money p, const PrivateCard& card, const PriceDomain& domain) {
    const auto [lo, hi] = admissible_range(card, domain);
    return p < lo ? lo : (p > hi ? hi : p);
}

AdaptiveState::AdaptiveState(Money p, double g) : p_current(p), gamma(g) {
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("gamma outside [0, 1]");
}

Money adaptive_update(Money p_t, Money p_star, double gamma) {
    const double next = static_cast<double>(p_t.cents()) +
                        gamma * static_cast<double>((p_star - p_t).cents());
    return Money(round_half_up_cents(next));
}

BeliefGrid BeliefGrid::uniform(const PriceDomain& domain, Money step) {
    if (step.cents() <= 0) throw std::invalid_argument("grid step must be positive");
    BeliefGrid g;
    for (Money p = domain.floor; p <= domain.ceiling; p += step) {
        g.prices.push_back(p);
    }
    g.mass.assign(g.prices.size(), 1.0 / static_cast<double>(g.prices.size()));
    return g;
}

double BeliefGrid::mean_price_cents() const {
    double m = 0.0;
    for (std::size_t i = 0; i < prices.size(); ++i) {
        m += mass[i] * static_cast<double>(prices[i].cents());
    }
    return m;
}

void BeliefGrid::validate() const {
    if (prices.empty() || prices.size() != mass.size()) {
        throw std::invalid_argument("belief grid shape");
    }
    for (std::size_t i = 1; i < prices.size(); ++i) {
        if (!(prices[i - 1] < prices[i])) throw std::invalid_argument("grid not increasing");
    }
    double sum = 0.0;
    for (double m : mass) {
        if (m < 0.0) throw std::invalid_argument("negative belief mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("belief mass not normalized");
}

BeliefGrid bayes_update(const BeliefGrid& prior, std::span<const double> likelihood) {
    if (likelihood.size() != prior.mass.size()) {
        throw std::invalid_argument("likelihood length mismatch");
    }
    BeliefGrid post;
    post.prices = prior.prices;
    post.mass.resize(prior.mass.size());
    double total = 0.0;
    for (std::size_t i = 0; i < prior.mass.size(); ++i) {
        if (likelihood[i] < 0.0) throw std::invalid_argument("negative likelihood");
        post.mass[i] = prior.mass[i] * likelihood[i];
        total += post.mass[i];
    }
    if (total <= 0.0) throw ZeroEvidence("all posterior mass vanished");
    for (double& m : post.mass) m /= total;
    return post;
}

void ProspectParams::validate() const {
    if (!(alpha_risk > 0.0)) throw std::invalid_argument("alpha_risk must be positive");
    if (!(lambda_loss >= 0.0)) throw std::invalid_argument("lambda_loss must be non-negative");
}

double prospect_utility(double x, const ProspectParams& params, double delta) {
    return std::pow(x, params.alpha_risk) * std::exp(-params.lambda_loss * delta);
}

Money static_policy_price(const StaticPolicyParams& params,
                          const std::array<double, 4>& features,
                          const PrivateCard& card, const PriceDomain& domain) {
    double dollars = 0.0;
    for (std::size_t i = 0; i < 4; ++i) dollars += params.theta[i] * features[i];
    return clamp_admissible(Money(round_half_up_cents(dollars * 100.0)), card, domain);
}

void ResponsiveParams::validate() const {
    if (!(noise_sd >= 0.0)) throw std::invalid_argument("noise_sd must be non-negative");
    if (!(learn_rate >= 0.0)) throw std::invalid_argument("learn_rate must be non-negative");
}

Money responsive_price(const ResponsiveParams& params, int s_t, int d_t, Rng& rng,
                       const PrivateCard& card, const PriceDomain& domain) {
    double dollars = params.alpha_s * s_t + params.beta_d * d_t;
    if (params.noise_sd > 0.0) dollars += rng.gaussian(0.0, params.noise_sd);
    return clamp_admissible(Money(round_half_up_cents(dollars * 100.0)), card, domain);
}

void lms_step(ResponsiveParams& params, int s_t, int d_t, Money realized) {
    const double err = params.alpha_s * s_t + params.beta_d * d_t - realized.dollars();
    params.alpha_s -= params.learn_rate * err * s_t;
    params.beta_d -= params.learn_rate * err * d_t;
}

}  // namespace dax
