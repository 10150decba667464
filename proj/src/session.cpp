#include "dax/session.hpp"

#include <algorithm>
#include <cassert>

#include "dax/errors.hpp"
#include "dax/market.hpp"

namespace dax {

const char* to_cstring(PeriodEndReason r) {
    switch (r) {
        case PeriodEndReason::FinalCall: return "final_call";
        case PeriodEndReason::SideExhausted: return "side_exhausted";
        case PeriodEndReason::TickBudget: return "tick_budget";
    }
    return "?";
}

const char* to_cstring(RejectReason r) {
    switch (r) {
        case RejectReason::Constraint: return "constraint";
        case RejectReason::Inactive: return "inactive";
        case RejectReason::InvalidAccept: return "invalid_accept";
    }
    return "?";
}

RejectReason reject_reason(AdmitError e) {
    return e == AdmitError::InactiveAgent ? RejectReason::Inactive : RejectReason::Constraint;
}

void validate_config(const SessionConfig& config) {
    if (config.roster.empty()) throw ConfigError("empty roster");
    if (config.n_periods < 1) throw ConfigError("n_periods must be >= 1");
    if (config.max_ticks_per_period < 1) throw ConfigError("max_ticks_per_period must be >= 1");
    if (config.final_call_limit < 1) throw ConfigError("final_call_limit must be >= 1");
    if (config.silence_threshold < 0) throw ConfigError("silence_threshold must be >= 0");
    if (!(config.domain.floor.cents() > 0) || config.domain.floor > config.domain.ceiling) {
        throw ConfigError("price domain must satisfy 0 < floor <= ceiling");
    }
    std::set<AgentId> ids;
    for (const Seat& seat : config.roster) {
        if (!seat.strategy) throw ConfigError("seat without a strategy");
        if (seat.id < 0 || static_cast<std::size_t>(seat.id) >= config.roster.size()) {
            throw ConfigError("agent ids must be dense 0..n-1");
        }
        if (!ids.insert(seat.id).second) throw ConfigError("duplicate agent id");
        if (!config.domain.contains(seat.card.limit)) {
            throw ConfigError("card limit outside the price domain");
        }
    }
}

std::vector<PrivateCard> roster_cards(const SessionConfig& config) {
    std::vector<PrivateCard> cards(config.roster.size());
    for (const Seat& seat : config.roster) {
        cards[static_cast<std::size_t>(seat.id)] = seat.card;
    }
    return cards;
}

namespace {

class SessionRun {
public:
    explicit SessionRun(SessionConfig& config) : config_(config), rng_(config.seed) {}

    SessionReport run();

private:
    void run_period(int period);
    /// Polls one agent; returns true when the poll produced a successful
    /// post or accept.
    bool poll(AgentId id, bool final_call);
    bool apply_action(AgentId id, const AgentAction& action);
    void match_and_settle();
    void collect_notes();
    void emit(EventPayload payload);

    Seat& seat(AgentId id) { return *seat_by_id_[static_cast<std::size_t>(id)]; }
    int threshold() const {
        return config_.silence_threshold > 0 ? config_.silence_threshold
                                             : static_cast<int>(active_.size());
    }
    int count_active(Role role) const {
        int n = 0;
        for (AgentId id : active_) {
            if (cards_[static_cast<std::size_t>(id)].role == role) ++n;
        }
        return n;
    }
    bool side_missing() const {
        return count_active(Role::Buyer) == 0 || count_active(Role::Seller) == 0;
    }
    AgentId draw_active() {
        auto it = active_.begin();
        std::advance(it, rng_.orchestrator().uniform_int(
                             0, static_cast<std::int64_t>(active_.size()) - 1));
        return *it;
    }
    Observation observe(AgentId id, bool final_call) const {
        Observation obs;
        obs.period = period_;
        obs.tick = tick_;
        obs.card = cards_[static_cast<std::size_t>(id)];
        obs.domain = config_.domain;
        obs.book = book_;
        obs.history = &history_;
        obs.is_final_call = final_call;
        obs.active_buyers = count_active(Role::Buyer);
        obs.active_sellers = count_active(Role::Seller);
        return obs;
    }

    SessionConfig& config_;
    SessionRng rng_;
    std::vector<PrivateCard> cards_;
    std::vector<Seat*> seat_by_id_;

    int period_ = 0;
    int tick_ = 0;
    int seq_ = -1;
    int last_event_tick_ = -1;
    int last_event_period_ = -1;

    StandingBook book_;
    std::set<AgentId> active_;
    std::set<AgentId> disconnected_;
    std::vector<Trade> history_;
    std::vector<Trade> period_trades_;
    std::vector<SessionEvent> events_;
    SessionReport report_;
};

void SessionRun::emit(EventPayload payload) {
    if (period_ != last_event_period_ || tick_ != last_event_tick_) {
        seq_ = 0;
        last_event_period_ = period_;
        last_event_tick_ = tick_;
    } else {
        ++seq_;
    }
    events_.push_back(SessionEvent{period_, tick_, seq_, std::move(payload)});
}

SessionReport SessionRun::run() {
    validate_config(config_);
    cards_ = roster_cards(config_);
    seat_by_id_.resize(config_.roster.size());
    for (Seat& s : config_.roster) {
        seat_by_id_[static_cast<std::size_t>(s.id)] = &s;
    }

    report_.schedule = build_schedule(cards_);
    report_.equilibrium = clearing(report_.schedule, config_.domain);

    for (const Seat& s : config_.roster) {
        s.strategy->begin_session(SessionSeat{s.id, s.card, config_.domain,
                                              config_.n_periods, config_.rules_digest});
    }
    for (int p = 1; p <= config_.n_periods; ++p) {
        run_period(p);
    }
    emit(SessionEndedEvent{});
    for (const Seat& s : config_.roster) {
        s.strategy->end_session();
    }
    collect_notes();
    report_.events = std::move(events_);
    report_.history = std::move(history_);
    return report_;
}

void SessionRun::run_period(int period) {
    period_ = period;
    tick_ = 0;
    book_.clear();
    period_trades_.clear();
    active_.clear();
    for (const Seat& s : config_.roster) {
        if (!disconnected_.count(s.id)) active_.insert(s.id);
    }
    for (const Seat& s : config_.roster) {
        s.strategy->begin_period(period);
    }
    collect_notes();

    int silent = 0;
    int final_call_round = 0;
    PeriodEndReason reason = PeriodEndReason::FinalCall;
    const std::size_t first_event = events_.size();

    while (true) {
        if (side_missing()) {
            reason = PeriodEndReason::SideExhausted;
            break;
        }
        if (tick_ >= config_.max_ticks_per_period) {
            reason = PeriodEndReason::TickBudget;
            break;
        }
        if (silent >= threshold()) {
            ++final_call_round;
            emit(FinalCallIssuedEvent{final_call_round});
            bool activity = false;
            bool budget_hit = false;
            for (const Seat& s : config_.roster) {
                if (!active_.count(s.id)) continue;  // traded or dropped mid-sweep
                if (tick_ >= config_.max_ticks_per_period) {
                    budget_hit = true;
                    break;
                }
                ++tick_;
                activity |= poll(s.id, true);
            }
            if (budget_hit) {
                reason = PeriodEndReason::TickBudget;
                break;
            }
            if (activity) {
                silent = 0;
                final_call_round = 0;
            } else if (final_call_round >= config_.final_call_limit) {
                reason = PeriodEndReason::FinalCall;
                break;
            }
            continue;
        }
        ++tick_;
        if (poll(draw_active(), false)) {
            silent = 0;
            final_call_round = 0;
        } else {
            ++silent;
        }
    }

    book_.clear();
    emit(PeriodEndedEvent{reason, static_cast<int>(period_trades_.size())});
    for (const Seat& s : config_.roster) {
        s.strategy->end_period(period);
    }
    collect_notes();

    const auto vol = volatility_stats(
        std::span<const SessionEvent>(events_).subspan(first_event));
    PeriodOutcome outcome;
    outcome.period = period;
    outcome.trades = period_trades_;
    outcome.report = period_report(period, period_trades_, report_.equilibrium, cards_, &vol);
    report_.periods.push_back(std::move(outcome));
}

bool SessionRun::poll(AgentId id, bool final_call) {
    const AgentAction action = seat(id).strategy->decide(observe(id, final_call), rng_.agent(id));
    const bool updated = apply_action(id, action);
    collect_notes();
    return updated;
}

bool SessionRun::apply_action(AgentId id, const AgentAction& action) {
    const PrivateCard& card = cards_[static_cast<std::size_t>(id)];
    switch (action.kind) {
        case AgentAction::Kind::Pass:
            return false;
        case AgentAction::Kind::Post: {
            const Quote quote{id, card.role, action.price, tick_};
            if (auto err = admit_quote(book_, quote, card, active_)) {
                emit(QuoteRejectedEvent{id, card.role, action.price, reject_reason(*err)});
                return false;
            }
            emit(QuotePostedEvent{id, card.role, action.price});
            match_and_settle();
            return true;
        }
        case AgentAction::Kind::Accept: {
            const auto& counter = book_.quote(opposite(card.role));
            if (!counter || !card.admits(counter->price)) {
                emit(QuoteRejectedEvent{id, card.role,
                                        counter ? counter->price : Money(0),
                                        RejectReason::InvalidAccept});
                return false;
            }
            // An accept is a crossing quote at the counter-party's price; the
            // standing (earlier) quote sets the trade price.
            const Quote crossing{id, card.role, counter->price, tick_};
            auto err = admit_quote(book_, crossing, card, active_);
            assert(!err);
            (void)err;
            emit(QuotePostedEvent{id, card.role, crossing.price});
            match_and_settle();
            return true;
        }
    }
    return false;
}

void SessionRun::match_and_settle() {
    auto trade = try_match(book_, period_, tick_);
    if (!trade) return;
    auto err = settle(*trade, active_, book_);
    assert(!err);
    (void)err;
    history_.push_back(*trade);
    period_trades_.push_back(*trade);
    emit(TradeExecutedEvent{*trade});
    const int ab = count_active(Role::Buyer);
    const int as = count_active(Role::Seller);
    for (const Seat& s : config_.roster) {
        s.strategy->observe_trade(*trade, ab, as);
    }
}

void SessionRun::collect_notes() {
    for (const Seat& s : config_.roster) {
        for (const StrategyNote& note : s.strategy->drain_notes()) {
            const char* kind = note.kind == StrategyNote::Kind::Timeout ? "timeout"
                               : note.kind == StrategyNote::Kind::Malformed
                                   ? "malformed"
                                   : "connection_lost";
            emit(AgentNoteEvent{s.id, kind});
            if (note.kind == StrategyNote::Kind::ConnectionLost) {
                active_.erase(s.id);
                disconnected_.insert(s.id);
            }
        }
    }
}

}  // namespace

SessionReport run_session(SessionConfig& config) {
    SessionRun run(config);
    return run.run();
}

}  // namespace dax
