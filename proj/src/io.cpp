#include "dax/io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "dax/errors.hpp"

namespace dax {

using json = nlohmann::ordered_json;

EventLogHeader header_from_config(const SessionConfig& config) {
    EventLogHeader h;
    h.seed = config.seed;
    h.n_periods = config.n_periods;
    h.max_ticks_per_period = config.max_ticks_per_period;
    h.final_call_limit = config.final_call_limit;
    h.silence_threshold = config.silence_threshold;
    h.domain = config.domain;
    h.rules_digest = config.rules_digest;
    h.cards = roster_cards(config);
    return h;
}

namespace {

Role role_from(const std::string& s) {
    if (s == "buyer") return Role::Buyer;
    if (s == "seller") return Role::Seller;
    throw MalformedMessage("log: unknown role: " + s);
}

RejectReason reason_from(const std::string& s) {
    if (s == "constraint") return RejectReason::Constraint;
    if (s == "inactive") return RejectReason::Inactive;
    if (s == "invalid_accept") return RejectReason::InvalidAccept;
    throw MalformedMessage("log: unknown reject reason: " + s);
}

PeriodEndReason period_end_from(const std::string& s) {
    if (s == "final_call") return PeriodEndReason::FinalCall;
    if (s == "side_exhausted") return PeriodEndReason::SideExhausted;
    if (s == "tick_budget") return PeriodEndReason::TickBudget;
    throw MalformedMessage("log: unknown period end reason: " + s);
}

struct EventWriter {
    json& line;

    void operator()(const QuotePostedEvent& e) const {
        line["event"] = "quote_posted";
        line["agent"] = e.agent;
        line["side"] = to_cstring(e.side);
        line["price"] = e.price.cents();
    }
    void operator()(const QuoteRejectedEvent& e) const {
        line["event"] = "quote_rejected";
        line["agent"] = e.agent;
        line["side"] = to_cstring(e.side);
        line["price"] = e.price.cents();
        line["reason"] = to_cstring(e.reason);
    }
    void operator()(const TradeExecutedEvent& e) const {
        line["event"] = "trade";
        line["buyer"] = e.trade.buyer;
        line["seller"] = e.trade.seller;
        line["price"] = e.trade.price.cents();
        line["setter"] = to_cstring(e.trade.price_setter);
    }
    void operator()(const FinalCallIssuedEvent& e) const {
        line["event"] = "final_call";
        line["round"] = e.round;
    }
    void operator()(const PeriodEndedEvent& e) const {
        line["event"] = "period_end";
        line["reason"] = to_cstring(e.reason);
        line["trades"] = e.n_trades;
    }
    void operator()(const SessionEndedEvent&) const { line["event"] = "session_end"; }
    void operator()(const AgentNoteEvent& e) const {
        line["event"] = "agent_note";
        line["agent"] = e.agent;
        line["kind"] = e.kind;
    }
};

EventPayload payload_from(const json& j) {
    const std::string kind = j.at("event").get<std::string>();
    if (kind == "quote_posted") {
        return QuotePostedEvent{j.at("agent").get<AgentId>(),
                                role_from(j.at("side").get<std::string>()),
                                Money(j.at("price").get<std::int64_t>())};
    }
    if (kind == "quote_rejected") {
        return QuoteRejectedEvent{j.at("agent").get<AgentId>(),
                                  role_from(j.at("side").get<std::string>()),
                                  Money(j.at("price").get<std::int64_t>()),
                                  reason_from(j.at("reason").get<std::string>())};
    }
    if (kind == "trade") {
        Trade t;
        t.buyer = j.at("buyer").get<AgentId>();
        t.seller = j.at("seller").get<AgentId>();
        t.price = Money(j.at("price").get<std::int64_t>());
        t.price_setter = role_from(j.at("setter").get<std::string>());
        t.period = j.at("period").get<int>();
        t.tick = j.at("tick").get<int>();
        return TradeExecutedEvent{t};
    }
    if (kind == "final_call") {
        return FinalCallIssuedEvent{j.at("round").get<int>()};
    }
    if (kind == "period_end") {
        return PeriodEndedEvent{period_end_from(j.at("reason").get<std::string>()),
                                j.at("trades").get<int>()};
    }
    if (kind == "session_end") {
        return SessionEndedEvent{};
    }
    if (kind == "agent_note") {
        return AgentNoteEvent{j.at("agent").get<AgentId>(), j.at("kind").get<std::string>()};
    }
    throw MalformedMessage("log: unknown event: " + kind);
}

}  // namespace

void write_event_log(std::ostream& out, const EventLogHeader& header,
                     std::span<const SessionEvent> events) {
    json roster = json::array();
    for (std::size_t id = 0; id < header.cards.size(); ++id) {
        const PrivateCard& c = header.cards[id];
        roster.push_back({{"agent", id}, {"role", to_cstring(c.role)}, {"limit", c.limit.cents()}});
    }
    const json head{{"type", "header"},
                    {"v", header.schema},
                    {"seed", header.seed},
                    {"periods", header.n_periods},
                    {"max_ticks", header.max_ticks_per_period},
                    {"final_call_limit", header.final_call_limit},
                    {"silence_threshold", header.silence_threshold},
                    {"domain", {{"floor", header.domain.floor.cents()},
                                {"ceiling", header.domain.ceiling.cents()}}},
                    {"rules", header.rules_digest},
                    {"roster", std::move(roster)}};
    out << head.dump() << "\n";

    for (const SessionEvent& e : events) {
        json line{{"v", header.schema},
                  {"period", e.period},
                  {"tick", e.tick},
                  {"seq", e.seq}};
        std::visit(EventWriter{line}, e.payload);
        out << line.dump() << "\n";
    }
}

EventLog read_event_log(std::istream& in) {
    EventLog log;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw MalformedMessage(std::string("log: bad JSON: ") + e.what());
        }
        try {
            if (!saw_header) {
                if (j.value("type", "") != "header") {
                    throw MalformedMessage("log: first line is not a header");
                }
                log.header.schema = j.at("v").get<int>();
                log.header.seed = j.at("seed").get<std::uint64_t>();
                log.header.n_periods = j.at("periods").get<int>();
                log.header.max_ticks_per_period = j.at("max_ticks").get<int>();
                log.header.final_call_limit = j.at("final_call_limit").get<int>();
                log.header.silence_threshold = j.at("silence_threshold").get<int>();
                log.header.domain.floor = Money(j.at("domain").at("floor").get<std::int64_t>());
                log.header.domain.ceiling = Money(j.at("domain").at("ceiling").get<std::int64_t>());
                log.header.rules_digest = j.at("rules").get<std::string>();
                for (const json& r : j.at("roster")) {
                    const auto id = r.at("agent").get<std::size_t>();
                    if (log.header.cards.size() <= id) log.header.cards.resize(id + 1);
                    log.header.cards[id] = PrivateCard{role_from(r.at("role").get<std::string>()),
                                                       Money(r.at("limit").get<std::int64_t>())};
                }
                saw_header = true;
                continue;
            }
            SessionEvent e;
            e.period = j.at("period").get<int>();
            e.tick = j.at("tick").get<int>();
            e.seq = j.at("seq").get<int>();
            e.payload = payload_from(j);
            log.events.push_back(std::move(e));
        } catch (const json::exception& e) {
            throw MalformedMessage(std::string("log: bad record: ") + e.what());
        }
    }
    if (!saw_header) throw MalformedMessage("log: empty file");
    return log;
}

EventLog read_event_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open event log: " + path);
    return read_event_log(in);
}

LogSummary summarize_log(const EventLog& log) {
    LogSummary s;
    s.schedule = build_schedule(log.header.cards);
    s.equilibrium = clearing(s.schedule, log.header.domain);

    std::size_t period_start = 0;
    std::vector<Trade> trades;
    for (std::size_t i = 0; i < log.events.size(); ++i) {
        const SessionEvent& e = log.events[i];
        if (const auto* t = std::get_if<TradeExecutedEvent>(&e.payload)) {
            trades.push_back(t->trade);
        } else if (std::holds_alternative<PeriodEndedEvent>(e.payload)) {
            const auto slice =
                std::span<const SessionEvent>(log.events).subspan(period_start, i + 1 - period_start);
            const VolatilityStats vol = volatility_stats(slice);
            PeriodOutcome outcome;
            outcome.period = e.period;
            outcome.trades = trades;
            outcome.report =
                period_report(e.period, trades, s.equilibrium, log.header.cards, &vol);
            s.periods.push_back(std::move(outcome));
            trades.clear();
            period_start = i + 1;
        }
    }
    return s;
}

namespace {

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

void write_report_csv(std::ostream& out, std::span<const PeriodOutcome> periods) {
    out << "period,predicted_qty,actual_qty,predicted_price,avg_price,convergence_coeff,efficiency\n";
    for (const PeriodOutcome& p : periods) {
        const PeriodReport& r = p.report;
        out << r.period << ',' << r.predicted_qty << ',' << r.actual_qty << ','
            << r.predicted_price.str() << ',' << (r.avg_price ? r.avg_price->str() : "") << ','
            << (r.convergence_coeff ? fmt2(*r.convergence_coeff) : "") << ','
            << fmt4(r.efficiency) << "\n";
    }
}

void write_prices_csv(std::ostream& out, std::span<const SessionEvent> events) {
    out << "period,tick,price\n";
    for (const SessionEvent& e : events) {
        if (const auto* t = std::get_if<TradeExecutedEvent>(&e.payload)) {
            out << e.period << ',' << e.tick << ',' << t->trade.price.str() << "\n";
        }
    }
}

void write_report_json(std::ostream& out, const EquilibriumResult& eq,
                       std::span<const PeriodOutcome> periods) {
    json j;
    j["equilibrium"] = {{"price_low", eq.price_low.cents()},
                        {"price_high", eq.price_high.cents()},
                        {"price_mid", eq.price_mid.cents()},
                        {"quantity", eq.quantity},
                        {"max_welfare", eq.max_welfare.cents()}};
    json rows = json::array();
    for (const PeriodOutcome& p : periods) {
        const PeriodReport& r = p.report;
        json row{{"period", r.period},
                 {"predicted_qty", r.predicted_qty},
                 {"actual_qty", r.actual_qty},
                 {"predicted_price", r.predicted_price.cents()},
                 {"avg_price", r.avg_price ? json(r.avg_price->cents()) : json(nullptr)},
                 {"convergence_coeff",
                  r.convergence_coeff ? json(*r.convergence_coeff) : json(nullptr)},
                 {"efficiency", r.efficiency},
                 {"price_stddev", r.price_stddev},
                 {"mean_spread", r.mean_spread ? json(*r.mean_spread) : json(nullptr)},
                 {"max_spread", r.max_spread ? json(*r.max_spread) : json(nullptr)}};
        rows.push_back(std::move(row));
    }
    j["periods"] = std::move(rows);
    out << j.dump(2) << "\n";
}

}  // namespace dax
