#include <string>
#include <variant>
#include <vector>

#include "dax/errors.hpp"
#include "dax/rng.hpp"
#include "dax/wire.hpp"
#include "doctest.h"

using namespace dax;

TEST_CASE("canonical encodings are stable byte-for-byte") {
    CHECK(encode_message(ActionMsg{AgentAction::pass()}) ==
          "{\"type\":\"action\",\"act\":\"pass\"}\n");
    CHECK(encode_message(ActionMsg{AgentAction::post(Money(204))}) ==
          "{\"type\":\"action\",\"act\":\"post\",\"price\":204}\n");
    CHECK(encode_message(ActionMsg{AgentAction::accept()}) ==
          "{\"type\":\"action\",\"act\":\"accept\"}\n");
    CHECK(encode_message(SessionEndMsg{}) == "{\"type\":\"session_end\"}\n");
    CHECK(encode_message(PeriodEndMsg{3, 6}) ==
          "{\"type\":\"period_end\",\"period\":3,\"trades\":6}\n");

    InitMsg init;
    init.agent = 4;
    init.role = Role::Seller;
    init.limit = Money(150);
    init.periods = 5;
    init.rules = "r1";
    CHECK(encode_message(init) ==
          "{\"type\":\"init\",\"agent\":4,\"role\":\"seller\",\"limit\":150,"
          "\"periods\":5,\"rules\":\"r1\"}\n");

    PollMsg poll;
    poll.period = 1;
    poll.tick = 7;
    poll.best_bid = Money(195);
    poll.history_tail.push_back({1, 4, Money(200)});
    CHECK(encode_message(poll) ==
          "{\"type\":\"poll\",\"period\":1,\"tick\":7,\"best_bid\":195,"
          "\"best_ask\":null,\"history\":[{\"period\":1,\"tick\":4,\"price\":200}],"
          "\"final_call\":false}\n");
}

TEST_CASE("decoding accepts canonical lines with or without the newline") {
    const auto msg = decode_message("{\"type\":\"action\",\"act\":\"post\",\"price\":204}");
    const auto* act = std::get_if<ActionMsg>(&msg);
    REQUIRE(act != nullptr);
    CHECK(act->action == AgentAction::post(Money(204)));

    const auto msg2 = decode_message("{\"type\":\"action\",\"act\":\"pass\"}\n");
    CHECK(std::get<ActionMsg>(msg2).action == AgentAction::pass());
}

TEST_CASE("unknown fields are ignored, missing fields are fatal") {
    const auto padded = decode_message(
        "{\"type\":\"action\",\"act\":\"post\",\"price\":204,\"mood\":\"bullish\"}");
    CHECK(std::get<ActionMsg>(padded).action == AgentAction::post(Money(204)));

    CHECK_THROWS_AS(decode_message("{\"type\":\"action\",\"act\":\"post\"}"),
                    MalformedMessage);
    CHECK_THROWS_AS(decode_message("{\"type\":\"action\"}"), MalformedMessage);
    CHECK_THROWS_AS(decode_message("{\"act\":\"pass\"}"), MalformedMessage);
}

TEST_CASE("type, act, and value errors are all malformed-message errors") {
    CHECK_THROWS_AS(decode_message(""), MalformedMessage);
    CHECK_THROWS_AS(decode_message("not json"), MalformedMessage);
    CHECK_THROWS_AS(decode_message("[1,2,3]"), MalformedMessage);
    CHECK_THROWS_AS(decode_message("42"), MalformedMessage);
    CHECK_THROWS_AS(decode_message("{\"type\":\"surrender\"}"), MalformedMessage);
    CHECK_THROWS_AS(decode_message("{\"type\":\"action\",\"act\":\"withdraw\"}"),
                    MalformedMessage);
    CHECK_THROWS_AS(
        decode_message("{\"type\":\"action\",\"act\":\"post\",\"price\":\"2.04\"}"),
        MalformedMessage);
    CHECK_THROWS_AS(
        decode_message("{\"type\":\"action\",\"act\":\"post\",\"price\":20.4}"),
        MalformedMessage);
    // Prices must land inside the configured domain.
    CHECK_THROWS_AS(decode_message("{\"type\":\"action\",\"act\":\"post\",\"price\":0}"),
                    MalformedMessage);
    CHECK_THROWS_AS(decode_message("{\"type\":\"action\",\"act\":\"post\",\"price\":401}"),
                    MalformedMessage);
    CHECK_NOTHROW(decode_message("{\"type\":\"action\",\"act\":\"post\",\"price\":401}",
                                 PriceDomain{Money(1), Money(500)}));
    CHECK_THROWS_AS(
        decode_message("{\"type\":\"poll\",\"period\":1,\"tick\":1,\"best_bid\":405,"
                       "\"best_ask\":null,\"history\":[],\"final_call\":false}"),
        MalformedMessage);
    CHECK_THROWS_AS(
        decode_message("{\"type\":\"poll\",\"period\":1,\"tick\":1,\"best_bid\":null,"
                       "\"best_ask\":null,\"history\":7,\"final_call\":false}"),
        MalformedMessage);
    CHECK_THROWS_AS(
        decode_message("{\"type\":\"init\",\"agent\":0,\"role\":\"broker\",\"limit\":200,"
                       "\"periods\":5,\"rules\":\"\"}"),
        MalformedMessage);
}

TEST_CASE("encode-decode round trip preserves every message") {
    Rng rng(606);
    const PriceDomain domain;
    const auto random_price = [&] { return Money(rng.uniform_int(1, 400)); };

    for (int i = 0; i < 10000; ++i) {
        WireMessage msg;
        switch (rng.uniform_int(0, 5)) {
            case 0: {
                InitMsg m;
                m.agent = static_cast<AgentId>(rng.uniform_int(0, 21));
                m.role = rng.uniform_int(0, 1) ? Role::Buyer : Role::Seller;
                m.limit = random_price();
                m.periods = static_cast<int>(rng.uniform_int(1, 9));
                m.rules = "digest";
                msg = m;
                break;
            }
            case 1: {
                PollMsg m;
                m.period = static_cast<int>(rng.uniform_int(1, 9));
                m.tick = static_cast<int>(rng.uniform_int(1, 500));
                if (rng.uniform_int(0, 1)) m.best_bid = random_price();
                if (rng.uniform_int(0, 1)) m.best_ask = random_price();
                const int tail = static_cast<int>(rng.uniform_int(0, 10));
                for (int t = 0; t < tail; ++t) {
                    m.history_tail.push_back({1, t + 1, random_price()});
                }
                m.final_call = rng.uniform_int(0, 1) != 0;
                msg = m;
                break;
            }
            case 2: {
                switch (rng.uniform_int(0, 2)) {
                    case 0: msg = ActionMsg{AgentAction::post(random_price())}; break;
                    case 1: msg = ActionMsg{AgentAction::accept()}; break;
                    default: msg = ActionMsg{AgentAction::pass()}; break;
                }
                break;
            }
            case 3: {
                TradeMsg m;
                m.period = static_cast<int>(rng.uniform_int(1, 9));
                m.tick = static_cast<int>(rng.uniform_int(1, 500));
                m.price = random_price();
                m.buyer = static_cast<AgentId>(rng.uniform_int(0, 21));
                m.seller = static_cast<AgentId>(rng.uniform_int(0, 21));
                msg = m;
                break;
            }
            case 4: {
                msg = PeriodEndMsg{static_cast<int>(rng.uniform_int(1, 9)),
                                   static_cast<int>(rng.uniform_int(0, 11))};
                break;
            }
            default: msg = SessionEndMsg{}; break;
        }

        const std::string line = encode_message(msg);
        REQUIRE(!line.empty());
        CHECK(line.back() == '\n');
        CHECK(line.find('\n') == line.size() - 1);  // exactly one line
        CHECK(decode_message(line, domain) == msg);
        // Encoding the decoded value reproduces the original bytes.
        CHECK(encode_message(decode_message(line, domain)) == line);
    }
}

TEST_CASE("hostile input never crashes the decoder") {
    Rng rng(1337);
    const std::string seedline =
        "{\"type\":\"poll\",\"period\":1,\"tick\":7,\"best_bid\":195,\"best_ask\":null,"
        "\"history\":[],\"final_call\":false}";
    int parsed = 0, rejected = 0;
    for (int i = 0; i < 5000; ++i) {
        std::string line;
        if (rng.uniform_int(0, 1)) {
            // Mutate a valid line.
            line = seedline;
            const int flips = static_cast<int>(rng.uniform_int(1, 6));
            for (int f = 0; f < flips; ++f) {
                line[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<std::int64_t>(line.size()) - 1))] =
                    static_cast<char>(rng.uniform_int(32, 126));
            }
        } else {
            // Random printable garbage.
            const int len = static_cast<int>(rng.uniform_int(0, 80));
            for (int c = 0; c < len; ++c) {
                line.push_back(static_cast<char>(rng.uniform_int(32, 126)));
            }
        }
        try {
            decode_message(line);
            ++parsed;
        } catch (const MalformedMessage&) {
            ++rejected;
        }
        // Anything else escaping is a bug and fails the test by exception.
    }
    CHECK(parsed + rejected == 5000);
    CHECK(rejected > 0);
}
