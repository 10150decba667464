#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dax/agents.hpp"
#include "dax/transcript.hpp"
#include "dax/wire.hpp"

namespace dax {

/// A line-oriented byte channel to an external agent process. Implementations
/// are blocking with explicit receive timeouts; the orchestrator holds at
/// most one outstanding poll, so no further synchronization is needed.
class Connection {
public:
    enum class RecvStatus { Ok, Timeout, Eof };

    virtual ~Connection() = default;

    /// Sends one already-terminated line. Failures mark the connection dead.
    virtual void send_line(const std::string& line) = 0;

    /// Reads one line (without the terminator) into `out`. Timeout leaves the
    /// stream position intact: bytes read so far are kept for the next call.
    virtual RecvStatus recv_line(std::string& out, int timeout_ms) = 0;

    virtual bool alive() const = 0;
    virtual void close() = 0;
};

/// Starts `argv` as a child process speaking the wire protocol on its
/// stdin/stdout. The child's stderr passes through.
std::unique_ptr<Connection> spawn_process(const std::vector<std::string>& argv);

/// Connects to an agent already listening on host:port.
std::unique_ptr<Connection> connect_tcp(const std::string& host, int port);

/// Bridges a connection into the strategy interface: init at session start,
/// one poll message per decide, trade/period/session notifications forwarded.
/// A timed-out or malformed reply degrades to Pass and raises a note; a
/// closed connection raises ConnectionLost, after which the agent passes
/// forever and the orchestrator retires it. Every poll is recorded into a
/// transcript for offline replay.
class ExternalStrategy final : public Strategy {
public:
    ExternalStrategy(std::unique_ptr<Connection> conn, int timeout_ms);

    void begin_session(const SessionSeat& seat) override;
    AgentAction decide(const Observation& obs, Rng&) override;
    void observe_trade(const Trade& t, int, int) override;
    void end_period(int period) override;
    void end_session() override;
    std::vector<StrategyNote> drain_notes() override;
    const char* name() const override { return "external"; }

    const Transcript& transcript() const { return transcript_; }

private:
    void send(const WireMessage& msg);
    void note(StrategyNote::Kind kind, std::string detail);

    std::unique_ptr<Connection> conn_;
    int timeout_ms_;
    SessionSeat seat_;
    PriceDomain domain_;
    bool lost_ = false;
    int trades_this_period_ = 0;
    std::vector<StrategyNote> notes_;
    Transcript transcript_;
};

}  // namespace dax
