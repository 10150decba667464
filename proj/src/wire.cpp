#include "dax/wire.hpp"

#include <json.hpp>

#include "dax/errors.hpp"

namespace dax {

using json = nlohmann::ordered_json;

namespace {

json money_or_null(const std::optional<Money>& m) {
    return m ? json(m->cents()) : json(nullptr);
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw MalformedMessage(std::string("missing field: ") + key);
    return *it;
}

std::int64_t as_int(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw MalformedMessage(std::string("not an integer: ") + key);
    return v.get<std::int64_t>();
}

std::string as_str(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) throw MalformedMessage(std::string("not a string: ") + key);
    return v.get<std::string>();
}

bool as_bool(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) throw MalformedMessage(std::string("not a boolean: ") + key);
    return v.get<bool>();
}

Money as_price(const json& j, const char* key, const PriceDomain& domain) {
    const Money m(as_int(j, key));
    if (!domain.contains(m)) throw MalformedMessage(std::string("price out of domain: ") + key);
    return m;
}

std::optional<Money> as_price_or_null(const json& j, const char* key, const PriceDomain& domain) {
    const json& v = field(j, key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number_integer()) throw MalformedMessage(std::string("not a price: ") + key);
    const Money m(v.get<std::int64_t>());
    if (!domain.contains(m)) throw MalformedMessage(std::string("price out of domain: ") + key);
    return m;
}

Role as_role(const json& j, const char* key) {
    const std::string s = as_str(j, key);
    if (s == "buyer") return Role::Buyer;
    if (s == "seller") return Role::Seller;
    throw MalformedMessage("unknown role: " + s);
}

struct Encoder {
    json operator()(const InitMsg& m) const {
        return {{"type", "init"},       {"agent", m.agent},     {"role", to_cstring(m.role)},
                {"limit", m.limit.cents()}, {"periods", m.periods}, {"rules", m.rules}};
    }
    json operator()(const PollMsg& m) const {
        json tail = json::array();
        for (const WireTrade& t : m.history_tail) {
            tail.push_back({{"period", t.period}, {"tick", t.tick}, {"price", t.price.cents()}});
        }
        return {{"type", "poll"},
                {"period", m.period},
                {"tick", m.tick},
                {"best_bid", money_or_null(m.best_bid)},
                {"best_ask", money_or_null(m.best_ask)},
                {"history", std::move(tail)},
                {"final_call", m.final_call}};
    }
    json operator()(const ActionMsg& m) const {
        switch (m.action.kind) {
            case AgentAction::Kind::Post:
                return {{"type", "action"}, {"act", "post"}, {"price", m.action.price.cents()}};
            case AgentAction::Kind::Accept:
                return {{"type", "action"}, {"act", "accept"}};
            case AgentAction::Kind::Pass:
                break;
        }
        return {{"type", "action"}, {"act", "pass"}};
    }
    json operator()(const TradeMsg& m) const {
        return {{"type", "trade"},         {"period", m.period}, {"tick", m.tick},
                {"price", m.price.cents()}, {"buyer", m.buyer},   {"seller", m.seller}};
    }
    json operator()(const PeriodEndMsg& m) const {
        return {{"type", "period_end"}, {"period", m.period}, {"trades", m.n_trades}};
    }
    json operator()(const SessionEndMsg&) const { return {{"type", "session_end"}}; }
};

}  // namespace

std::string encode_message(const WireMessage& msg) {
    return std::visit(Encoder{}, msg).dump() + "\n";
}

WireMessage decode_message(std::string_view line, const PriceDomain& domain) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw MalformedMessage(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedMessage("message is not an object");
    const std::string type = as_str(j, "type");

    if (type == "init") {
        InitMsg m;
        m.agent = static_cast<AgentId>(as_int(j, "agent"));
        m.role = as_role(j, "role");
        m.limit = as_price(j, "limit", domain);
        m.periods = static_cast<int>(as_int(j, "periods"));
        m.rules = as_str(j, "rules");
        return m;
    }
    if (type == "poll") {
        PollMsg m;
        m.period = static_cast<int>(as_int(j, "period"));
        m.tick = static_cast<int>(as_int(j, "tick"));
        m.best_bid = as_price_or_null(j, "best_bid", domain);
        m.best_ask = as_price_or_null(j, "best_ask", domain);
        const json& tail = field(j, "history");
        if (!tail.is_array()) throw MalformedMessage("history is not an array");
        for (const json& e : tail) {
            WireTrade t;
            t.period = static_cast<int>(as_int(e, "period"));
            t.tick = static_cast<int>(as_int(e, "tick"));
            t.price = as_price(e, "price", domain);
            m.history_tail.push_back(t);
        }
        m.final_call = as_bool(j, "final_call");
        return m;
    }
    if (type == "action") {
        const std::string act = as_str(j, "act");
        if (act == "post") return ActionMsg{AgentAction::post(as_price(j, "price", domain))};
        if (act == "accept") return ActionMsg{AgentAction::accept()};
        if (act == "pass") return ActionMsg{AgentAction::pass()};
        throw MalformedMessage("unknown act: " + act);
    }
    if (type == "trade") {
        TradeMsg m;
        m.period = static_cast<int>(as_int(j, "period"));
        m.tick = static_cast<int>(as_int(j, "tick"));
        m.price = as_price(j, "price", domain);
        m.buyer = static_cast<AgentId>(as_int(j, "buyer"));
        m.seller = static_cast<AgentId>(as_int(j, "seller"));
        return m;
    }
    if (type == "period_end") {
        PeriodEndMsg m;
        m.period = static_cast<int>(as_int(j, "period"));
        m.n_trades = static_cast<int>(as_int(j, "trades"));
        return m;
    }
    if (type == "session_end") {
        return SessionEndMsg{};
    }
    throw MalformedMessage("unknown type: " + type);
}

}  // namespace dax
