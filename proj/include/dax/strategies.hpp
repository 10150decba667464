#pragma once

#include <memory>
#include <optional>

#include "dax/agents.hpp"

namespace dax {

/// Shared decision tail for the deterministic strategies: take the standing
/// counter-quote when it is admissible and weakly better than the price the
/// strategy was about to post; otherwise post that price.
AgentAction post_or_accept(Money candidate, const Observation& obs);

/// Never acts. Useful as a control and for protocol tests.
class PassStrategy final : public Strategy {
public:
    AgentAction decide(const Observation&, Rng&) override { return AgentAction::pass(); }
    const char* name() const override { return "pass"; }
};

/// Zero-intelligence constrained trader: posts uniformly at random within its
/// budget/cost constraint and never accepts (crossings happen through the
/// book). The stochastic control group.
class ZiStrategy final : public Strategy {
public:
    AgentAction decide(const Observation& obs, Rng& rng) override;
    const char* name() const override { return "zi"; }
};

/// Keeps a running price estimate p and moves it a fraction gamma toward
/// every observed trade price.
class AdaptiveStrategy final : public Strategy {
public:
    explicit AdaptiveStrategy(double gamma = 0.5, std::optional<Money> start = std::nullopt);

    void begin_session(const SessionSeat& seat) override;
    AgentAction decide(const Observation& obs, Rng&) override;
    void observe_trade(const Trade& t, int, int) override;
    const char* name() const override { return "adaptive"; }

    Money estimate() const { return p_current_; }

private:
    double gamma_;
    std::optional<Money> start_;
    Money p_current_;
};

/// Grid belief over the price domain, updated with a Gaussian likelihood
/// around each observed trade; quotes the posterior mean.
class BeliefStrategy final : public Strategy {
public:
    explicit BeliefStrategy(double likelihood_sd = 0.10, Money grid_step = Money(1));

    void begin_session(const SessionSeat& seat) override;
    AgentAction decide(const Observation& obs, Rng&) override;
    void observe_trade(const Trade& t, int, int) override;
    const char* name() const override { return "belief"; }

    const BeliefGrid& grid() const { return grid_; }

private:
    double sd_;
    Money step_;
    BeliefGrid grid_;
};

/// Quotes the admissible price maximizing prospect utility of its own
/// surplus, with distance-from-reference discounting. The reference is the
/// last observed trade price, or the configured/default reference before any
/// trade. Ties resolve toward the agent's favorable side.
class ProspectStrategy final : public Strategy {
public:
    explicit ProspectStrategy(double alpha_risk = 0.88, double lambda_loss = 0.25,
                              std::optional<Money> reference = std::nullopt);

    void begin_session(const SessionSeat& seat) override;
    AgentAction decide(const Observation& obs, Rng&) override;
    const char* name() const override { return "prospect"; }

private:
    ProspectParams params_;
    bool reference_fixed_;
};

/// Fixed-weight linear policy over [1, last_trade, own_side_standing, limit].
class StaticPolicyStrategy final : public Strategy {
public:
    explicit StaticPolicyStrategy(StaticPolicyParams params = {}) : params_(params) {}

    AgentAction decide(const Observation& obs, Rng&) override;
    const char* name() const override { return "static"; }

private:
    StaticPolicyParams params_;
};

/// Prices off supply/demand proxies, alpha*S_t + beta*D_t + noise, with the
/// weights taking one LMS step per observed trade.
class ResponsiveStrategy final : public Strategy {
public:
    explicit ResponsiveStrategy(ResponsiveParams params = {});

    AgentAction decide(const Observation& obs, Rng& rng) override;
    void observe_trade(const Trade& t, int active_buyers, int active_sellers) override;
    const char* name() const override { return "responsive"; }

    const ResponsiveParams& params() const { return params_; }

private:
    ResponsiveParams params_;
};

}  // namespace dax
