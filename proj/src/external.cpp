#include "dax/external.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <utility>

#include "dax/errors.hpp"

namespace dax {

namespace {

/// Dead peers must surface as write errors, not process death.
void ignore_sigpipe() {
    static const bool done = [] {
        ::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)done;
}

/// Shared line-reading machinery over a pair of file descriptors (equal for
/// sockets). Keeps a buffer across timeouts so partial lines are not lost.
class FdConnection : public Connection {
public:
    FdConnection(int read_fd, int write_fd) : read_fd_(read_fd), write_fd_(write_fd) {}

    ~FdConnection() override { FdConnection::close(); }

    void send_line(const std::string& line) override {
        if (!alive_) return;
        std::size_t off = 0;
        while (off < line.size()) {
            const ssize_t n = ::write(write_fd_, line.data() + off, line.size() - off);
            if (n < 0) {
                if (errno == EINTR) continue;
                alive_ = false;
                return;
            }
            off += static_cast<std::size_t>(n);
        }
    }

    RecvStatus recv_line(std::string& out, int timeout_ms) override {
        while (true) {
            const auto nl = buffer_.find('\n');
            if (nl != std::string::npos) {
                out = buffer_.substr(0, nl);
                buffer_.erase(0, nl + 1);
                return RecvStatus::Ok;
            }
            if (!alive_) return RecvStatus::Eof;

            struct pollfd pfd{read_fd_, POLLIN, 0};
            const int pr = ::poll(&pfd, 1, timeout_ms);
            if (pr < 0) {
                if (errno == EINTR) continue;
                alive_ = false;
                return RecvStatus::Eof;
            }
            if (pr == 0) return RecvStatus::Timeout;

            char chunk[4096];
            const ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
            if (n < 0) {
                if (errno == EINTR) continue;
                alive_ = false;
                return RecvStatus::Eof;
            }
            if (n == 0) {
                alive_ = false;
                // A final unterminated line still counts once.
                if (!buffer_.empty()) {
                    out = std::exchange(buffer_, std::string());
                    return RecvStatus::Ok;
                }
                return RecvStatus::Eof;
            }
            buffer_.append(chunk, static_cast<std::size_t>(n));
        }
    }

    bool alive() const override { return alive_; }

    void close() override {
        if (read_fd_ >= 0) ::close(read_fd_);
        if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
        read_fd_ = write_fd_ = -1;
        alive_ = false;
    }

protected:
    int read_fd_;
    int write_fd_;
    bool alive_ = true;
    std::string buffer_;
};

class ProcessConnection final : public FdConnection {
public:
    ProcessConnection(int read_fd, int write_fd, pid_t pid)
        : FdConnection(read_fd, write_fd), pid_(pid) {}

    ~ProcessConnection() override {
        ProcessConnection::close();
        if (pid_ > 0) {
            ::kill(pid_, SIGTERM);
            int status = 0;
            ::waitpid(pid_, &status, 0);
            pid_ = -1;
        }
    }

private:
    pid_t pid_;
};

}  // namespace

std::unique_ptr<Connection> spawn_process(const std::vector<std::string>& argv) {
    ignore_sigpipe();
    if (argv.empty()) throw ConfigError("external agent: empty command");
    int to_child[2], from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) {
        throw std::runtime_error("pipe failed");
    }
    const pid_t pid = ::fork();
    if (pid < 0) throw std::runtime_error("fork failed");
    if (pid == 0) {
        ::dup2(to_child[0], STDIN_FILENO);
        ::dup2(from_child[1], STDOUT_FILENO);
        ::close(to_child[0]);
        ::close(to_child[1]);
        ::close(from_child[0]);
        ::close(from_child[1]);
        std::vector<char*> cargv;
        for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        ::execvp(cargv[0], cargv.data());
        ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    return std::make_unique<ProcessConnection>(from_child[0], to_child[1], pid);
}

std::unique_ptr<Connection> connect_tcp(const std::string& host, int port) {
    ignore_sigpipe();
    struct addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    struct addrinfo* res = nullptr;
    const std::string service = std::to_string(port);
    if (::getaddrinfo(host.c_str(), service.c_str(), &hints, &res) != 0) {
        throw std::runtime_error("cannot resolve " + host);
    }
    int fd = -1;
    for (struct addrinfo* ai = res; ai; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0) throw std::runtime_error("cannot connect to " + host + ":" + service);
    return std::make_unique<FdConnection>(fd, fd);
}

ExternalStrategy::ExternalStrategy(std::unique_ptr<Connection> conn, int timeout_ms)
    : conn_(std::move(conn)), timeout_ms_(timeout_ms) {
    if (!conn_) throw ConfigError("external agent: no connection");
}

void ExternalStrategy::note(StrategyNote::Kind kind, std::string detail) {
    notes_.push_back(StrategyNote{kind, std::move(detail)});
}

void ExternalStrategy::send(const WireMessage& msg) {
    if (lost_ || !conn_->alive()) return;
    conn_->send_line(encode_message(msg));
    if (!conn_->alive()) {
        lost_ = true;
        note(StrategyNote::Kind::ConnectionLost, "send failed");
    }
}

void ExternalStrategy::begin_session(const SessionSeat& seat) {
    seat_ = seat;
    domain_ = seat.domain;
    transcript_.agent = seat.id;
    send(InitMsg{seat.id, seat.card.role, seat.card.limit, seat.n_periods, seat.rules_digest});
}

AgentAction ExternalStrategy::decide(const Observation& obs, Rng&) {
    AgentAction action = AgentAction::pass();
    if (!lost_ && conn_->alive()) {
        PollMsg poll;
        poll.period = obs.period;
        poll.tick = obs.tick;
        if (obs.book.best_bid) poll.best_bid = obs.book.best_bid->price;
        if (obs.book.best_ask) poll.best_ask = obs.book.best_ask->price;
        if (obs.history) {
            const std::size_t n = obs.history->size();
            const std::size_t from = n > PollMsg::kHistoryTail ? n - PollMsg::kHistoryTail : 0;
            for (std::size_t i = from; i < n; ++i) {
                const Trade& t = (*obs.history)[i];
                poll.history_tail.push_back(WireTrade{t.period, t.tick, t.price});
            }
        }
        poll.final_call = obs.is_final_call;
        send(poll);

        std::string line;
        if (!lost_) {
            switch (conn_->recv_line(line, timeout_ms_)) {
                case Connection::RecvStatus::Ok:
                    try {
                        const WireMessage reply = decode_message(line, domain_);
                        if (const auto* a = std::get_if<ActionMsg>(&reply)) {
                            action = a->action;
                        } else {
                            note(StrategyNote::Kind::Malformed, "reply is not an action");
                        }
                    } catch (const MalformedMessage& e) {
                        note(StrategyNote::Kind::Malformed, e.what());
                    }
                    break;
                case Connection::RecvStatus::Timeout:
                    note(StrategyNote::Kind::Timeout, "no reply within budget");
                    break;
                case Connection::RecvStatus::Eof:
                    lost_ = true;
                    note(StrategyNote::Kind::ConnectionLost, "stream closed");
                    break;
            }
        }
    }
    transcript_.steps.push_back(TranscriptStep{
        obs.period, obs.tick,
        obs.book.best_bid ? std::optional<Money>(obs.book.best_bid->price) : std::nullopt,
        obs.book.best_ask ? std::optional<Money>(obs.book.best_ask->price) : std::nullopt,
        obs.is_final_call, action});
    return action;
}

void ExternalStrategy::observe_trade(const Trade& t, int, int) {
    ++trades_this_period_;
    send(TradeMsg{t.period, t.tick, t.price, t.buyer, t.seller});
}

void ExternalStrategy::end_period(int period) {
    send(PeriodEndMsg{period, trades_this_period_});
    trades_this_period_ = 0;
}

void ExternalStrategy::end_session() {
    send(SessionEndMsg{});
    conn_->close();
}

std::vector<StrategyNote> ExternalStrategy::drain_notes() {
    return std::exchange(notes_, {});
}

}  // namespace dax
