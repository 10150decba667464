#include "dax/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dax/errors.hpp"
#include "dax/external.hpp"
#include "dax/strategies.hpp"
#include "dax/transcript.hpp"

namespace dax {

using json = nlohmann::json;

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

Role role_from(const std::string& s) {
    if (s == "buyer") return Role::Buyer;
    if (s == "seller") return Role::Seller;
    throw ConfigError("unknown role: " + s);
}

std::optional<Money> opt_cents(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return Money(j.at(key).get<std::int64_t>());
}

std::unique_ptr<Strategy> make_strategy(const json& spec, int timeout_ms) {
    json obj;
    if (spec.is_string()) {
        obj = json{{"name", spec.get<std::string>()}};
    } else if (spec.is_object()) {
        obj = spec;
    } else {
        throw ConfigError("strategy must be a name or an object");
    }
    const std::string name = obj.value("name", "");

    if (name == "pass") return std::make_unique<PassStrategy>();
    if (name == "zi") return std::make_unique<ZiStrategy>();
    if (name == "adaptive") {
        return std::make_unique<AdaptiveStrategy>(obj.value("gamma", 0.5),
                                                  opt_cents(obj, "start"));
    }
    if (name == "belief") {
        return std::make_unique<BeliefStrategy>(obj.value("likelihood_sd", 0.10),
                                                Money(obj.value("grid_step", std::int64_t{1})));
    }
    if (name == "prospect") {
        return std::make_unique<ProspectStrategy>(obj.value("alpha_risk", 0.88),
                                                  obj.value("lambda_loss", 0.25),
                                                  opt_cents(obj, "reference"));
    }
    if (name == "static") {
        StaticPolicyParams p;
        if (obj.contains("theta")) {
            const auto& t = obj.at("theta");
            if (!t.is_array() || t.size() != 4) throw ConfigError("theta must have 4 entries");
            for (std::size_t i = 0; i < 4; ++i) p.theta[i] = t[i].get<double>();
        }
        return std::make_unique<StaticPolicyStrategy>(p);
    }
    if (name == "responsive") {
        ResponsiveParams p;
        p.alpha_s = obj.value("alpha_s", p.alpha_s);
        p.beta_d = obj.value("beta_d", p.beta_d);
        p.noise_sd = obj.value("noise_sd", p.noise_sd);
        p.learn_rate = obj.value("learn_rate", p.learn_rate);
        return std::make_unique<ResponsiveStrategy>(p);
    }
    if (name == "external") {
        std::unique_ptr<Connection> conn;
        if (obj.contains("command")) {
            std::vector<std::string> argv;
            for (const json& a : obj.at("command")) argv.push_back(a.get<std::string>());
            conn = spawn_process(argv);
        } else if (obj.contains("host")) {
            conn = connect_tcp(obj.at("host").get<std::string>(), obj.at("port").get<int>());
        } else {
            throw ConfigError("external strategy needs a command or host/port");
        }
        return std::make_unique<ExternalStrategy>(std::move(conn), timeout_ms);
    }
    if (name == "replay") {
        if (!obj.contains("transcript")) throw ConfigError("replay strategy needs a transcript");
        return std::make_unique<ReplayStrategy>(
            read_transcript_file(obj.at("transcript").get<std::string>()));
    }
    throw ConfigError("unknown strategy: " + name);
}

LoadedRun load_run(const json& j, const LoadOptions& opts) {
    if (!j.is_object()) throw ConfigError("run config must be a JSON object");
    LoadedRun run;

    try {
        run.session.seed = opts.seed ? *opts.seed : j.value("seed", std::uint64_t{0});
        run.session.n_periods = opts.periods ? *opts.periods : j.value("periods", 5);
        run.session.max_ticks_per_period = j.value("max_ticks_per_period", 500);
        run.session.final_call_limit = j.value("final_call_limit", 3);
        run.session.silence_threshold = j.value("silence_threshold", 0);
        if (j.contains("price_domain")) {
            const json& d = j.at("price_domain");
            run.session.domain.floor = Money(d.at("floor").get<std::int64_t>());
            run.session.domain.ceiling = Money(d.at("ceiling").get<std::int64_t>());
        }
        run.session.rules_digest = j.value(
            "rules", "one unit per card per period; prices in integer cents; "
                     "a bid at or above the standing ask trades at the earlier quote's price");

        run.timeout_ms = opts.timeout_ms ? *opts.timeout_ms : j.value("timeout_ms", 30000);
        if (run.timeout_ms < 1) throw ConfigError("timeout_ms must be >= 1");

        if (opts.out_dir) {
            run.out_dir = *opts.out_dir;
        } else if (j.contains("out_dir")) {
            run.out_dir = j.at("out_dir").get<std::string>();
        } else if (const char* env = std::getenv("DAX_OUT_DIR")) {
            run.out_dir = env;
        } else {
            run.out_dir = "out";
        }

        if (!j.contains("agents") || !j.at("agents").is_array()) {
            throw ConfigError("run config needs an agents array");
        }
        for (const json& a : j.at("agents")) {
            Seat seat;
            seat.id = a.at("id").get<AgentId>();
            seat.card.role = role_from(a.at("role").get<std::string>());
            seat.card.limit = Money(a.at("limit").get<std::int64_t>());

            const auto replay = opts.replay_transcripts.find(seat.id);
            if (replay != opts.replay_transcripts.end()) {
                seat.strategy = std::make_unique<ReplayStrategy>(
                    read_transcript_file(replay->second));
            } else {
                const json& spec = a.contains("strategy") ? a.at("strategy") : json("zi");
                seat.strategy = make_strategy(spec, run.timeout_ms);
                if (dynamic_cast<ExternalStrategy*>(seat.strategy.get())) {
                    run.external_ids.push_back(seat.id);
                }
            }
            run.session.roster.push_back(std::move(seat));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("run config: ") + e.what());
    }

    validate_config(run.session);
    return run;
}

ScheduleFile load_schedule(const json& j) {
    ScheduleFile f;
    try {
        if (!j.is_object() || !j.contains("buyers") || !j.contains("sellers")) {
            throw ConfigError("schedule needs buyers and sellers arrays");
        }
        std::vector<PrivateCard> cards;
        for (const json& v : j.at("buyers")) {
            cards.push_back({Role::Buyer, Money(v.get<std::int64_t>())});
        }
        for (const json& c : j.at("sellers")) {
            cards.push_back({Role::Seller, Money(c.get<std::int64_t>())});
        }
        if (j.contains("price_domain")) {
            const json& d = j.at("price_domain");
            f.domain.floor = Money(d.at("floor").get<std::int64_t>());
            f.domain.ceiling = Money(d.at("ceiling").get<std::int64_t>());
        }
        f.schedule = build_schedule(cards);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("schedule: ") + e.what());
    }
    return f;
}

}  // namespace

LoadedRun load_run_config(const std::string& path, const LoadOptions& opts) {
    return load_run(parse_file(path), opts);
}

LoadedRun load_run_config_text(const std::string& text, const LoadOptions& opts) {
    return load_run(parse_text(text), opts);
}

ScheduleFile load_schedule_file(const std::string& path) {
    return load_schedule(parse_file(path));
}

ScheduleFile load_schedule_text(const std::string& text) {
    return load_schedule(parse_text(text));
}

}  // namespace dax
