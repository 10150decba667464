#include "dax/transcript.hpp"

#include <fstream>
#include <json.hpp>

#include "dax/errors.hpp"

namespace dax {

using json = nlohmann::ordered_json;

namespace {

json opt_money(const std::optional<Money>& m) {
    return m ? json(m->cents()) : json(nullptr);
}

std::optional<Money> money_opt(const json& v) {
    if (v.is_null()) return std::nullopt;
    if (!v.is_number_integer()) throw MalformedMessage("transcript: not a price");
    return Money(v.get<std::int64_t>());
}

}  // namespace

void write_transcript(std::ostream& out, const Transcript& t) {
    out << json{{"type", "transcript"}, {"agent", t.agent}}.dump() << "\n";
    for (const TranscriptStep& s : t.steps) {
        json line{{"period", s.period},
                  {"tick", s.tick},
                  {"best_bid", opt_money(s.best_bid)},
                  {"best_ask", opt_money(s.best_ask)},
                  {"final_call", s.final_call}};
        switch (s.action.kind) {
            case AgentAction::Kind::Post:
                line["act"] = "post";
                line["price"] = s.action.price.cents();
                break;
            case AgentAction::Kind::Accept:
                line["act"] = "accept";
                break;
            case AgentAction::Kind::Pass:
                line["act"] = "pass";
                break;
        }
        out << line.dump() << "\n";
    }
}

Transcript read_transcript(std::istream& in) {
    Transcript t;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw MalformedMessage(std::string("transcript: bad JSON: ") + e.what());
        }
        if (!saw_header) {
            if (j.value("type", "") != "transcript" || !j.contains("agent")) {
                throw MalformedMessage("transcript: missing header line");
            }
            t.agent = j["agent"].get<AgentId>();
            saw_header = true;
            continue;
        }
        TranscriptStep s;
        try {
            s.period = j.at("period").get<int>();
            s.tick = j.at("tick").get<int>();
            s.best_bid = money_opt(j.at("best_bid"));
            s.best_ask = money_opt(j.at("best_ask"));
            s.final_call = j.at("final_call").get<bool>();
            const std::string act = j.at("act").get<std::string>();
            if (act == "post") {
                s.action = AgentAction::post(Money(j.at("price").get<std::int64_t>()));
            } else if (act == "accept") {
                s.action = AgentAction::accept();
            } else if (act == "pass") {
                s.action = AgentAction::pass();
            } else {
                throw MalformedMessage("transcript: unknown act: " + act);
            }
        } catch (const json::exception& e) {
            throw MalformedMessage(std::string("transcript: bad step: ") + e.what());
        }
        t.steps.push_back(std::move(s));
    }
    if (!saw_header) throw MalformedMessage("transcript: empty file");
    return t;
}

Transcript read_transcript_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open transcript: " + path);
    return read_transcript(in);
}

void write_transcript_file(const std::string& path, const Transcript& t) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write transcript: " + path);
    write_transcript(out, t);
}

}  // namespace dax
