// Scriptable wire-protocol agent for integration tests and as a reference
// client. Speaks newline-delimited JSON on stdio, or on TCP with --listen
// (binds an ephemeral port, prints "PORT <n>", serves one connection).
#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <json.hpp>
#include <string>
#include <thread>

using json = nlohmann::json;

namespace {

struct StubState {
    std::string mode = "limit";
    std::int64_t constant_price = 200;
    int delay_ms = 0;
    int quit_after = 0;  // 0 = never
    std::string role;
    std::int64_t limit = 0;
    int replies = 0;
};

json decide(StubState& st, const json& poll) {
    if (st.mode == "pass") {
        return {{"type", "action"}, {"act", "pass"}};
    }
    if (st.mode == "shade") {
        // Concede one cent toward the limit per poll, starting one tick
        // inside the most aggressive admissible price.
        const std::int64_t step = st.replies + 1;
        const std::int64_t price = st.role == "buyer"
                                       ? std::min(st.limit, std::int64_t{100} + step)
                                       : std::max(st.limit, std::int64_t{300} - step);
        return {{"type", "action"}, {"act", "post"}, {"price", price}};
    }
    if (st.mode == "constant") {
        return {{"type", "action"}, {"act", "post"}, {"price", st.constant_price}};
    }
    if (st.mode == "accept") {
        const char* counter_key = st.role == "buyer" ? "best_ask" : "best_bid";
        const json& counter = poll.at(counter_key);
        if (!counter.is_null()) {
            const std::int64_t price = counter.get<std::int64_t>();
            const bool ok = st.role == "buyer" ? price <= st.limit : price >= st.limit;
            if (ok) return {{"type", "action"}, {"act", "accept"}};
        }
        return {{"type", "action"}, {"act", "post"}, {"price", st.limit}};
    }
    // "limit": truthful one-price trader
    return {{"type", "action"}, {"act", "post"}, {"price", st.limit}};
}

int serve(StubState& st, FILE* fin, FILE* fout) {
    char* line = nullptr;
    std::size_t cap = 0;
    ssize_t n;
    while ((n = ::getline(&line, &cap, fin)) > 0) {
        json msg = json::parse(std::string(line, static_cast<std::size_t>(n)), nullptr, false);
        if (msg.is_discarded() || !msg.is_object()) continue;
        const std::string type = msg.value("type", "");
        if (type == "init") {
            st.role = msg.value("role", "");
            st.limit = msg.value("limit", std::int64_t{0});
        } else if (type == "poll") {
            if (st.delay_ms > 0) {
                std::this_thread::sleep_for(std::chrono::milliseconds(st.delay_ms));
            }
            if (st.mode == "garbage") {
                std::fprintf(fout, "}{ not a message\n");
            } else {
                const json reply = decide(st, msg);
                std::fprintf(fout, "%s\n", reply.dump().c_str());
            }
            std::fflush(fout);
            ++st.replies;
            if (st.quit_after > 0 && st.replies >= st.quit_after) break;
        } else if (type == "session_end") {
            break;
        }
        // trade / period_end notifications need no reply
    }
    free(line);
    return 0;
}

int serve_tcp(StubState& st) {
    const int lfd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (lfd < 0) return 1;
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    if (::bind(lfd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) return 1;
    if (::listen(lfd, 1) != 0) return 1;
    socklen_t len = sizeof(addr);
    if (::getsockname(lfd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) return 1;
    std::printf("PORT %d\n", ntohs(addr.sin_port));
    std::fflush(stdout);

    const int cfd = ::accept(lfd, nullptr, nullptr);
    ::close(lfd);
    if (cfd < 0) return 1;
    FILE* fin = ::fdopen(cfd, "r");
    FILE* fout = ::fdopen(::dup(cfd), "w");
    if (!fin || !fout) return 1;
    const int rc = serve(st, fin, fout);
    std::fclose(fin);
    std::fclose(fout);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stub wire-protocol trading agent"};
    StubState st;
    bool listen = false;
    app.add_option("--mode", st.mode, "pass | limit | constant | accept | shade | garbage")
        ->check(CLI::IsMember({"pass", "limit", "constant", "accept", "shade", "garbage"}));
    app.add_option("--price", st.constant_price, "price in cents for --mode constant");
    app.add_option("--delay-ms", st.delay_ms, "sleep before each reply");
    app.add_option("--quit-after", st.quit_after, "close the stream after N replies");
    app.add_flag("--listen", listen, "serve one TCP connection instead of stdio");
    CLI11_PARSE(app, argc, argv);

    if (listen) return serve_tcp(st);
    return serve(st, stdin, stdout);
}
