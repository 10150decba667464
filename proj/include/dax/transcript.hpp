#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dax/agents.hpp"

namespace dax {

/// One recorded poll: the context the agent saw (a digest of the observation)
/// and the action it took after protocol degradation, i.e. what the market
/// actually received.
struct TranscriptStep {
    int period = 0;
    int tick = 0;
    std::optional<Money> best_bid;
    std::optional<Money> best_ask;
    bool final_call = false;
    AgentAction action;

    bool operator==(const TranscriptStep&) const = default;
};

struct Transcript {
    AgentId agent = -1;
    std::vector<TranscriptStep> steps;

    bool operator==(const Transcript&) const = default;
};

/// Newline-delimited JSON: a header line identifying the agent, then one
/// line per step.
void write_transcript(std::ostream& out, const Transcript& t);
Transcript read_transcript(std::istream& in);
Transcript read_transcript_file(const std::string& path);
void write_transcript_file(const std::string& path, const Transcript& t);

/// Replays recorded actions strictly in order, one per poll, ignoring the
/// live observation; an exhausted transcript passes forever. The recorded
/// context is carried for diagnostics only.
class ReplayStrategy final : public Strategy {
public:
    explicit ReplayStrategy(Transcript transcript)
        : transcript_(std::move(transcript)) {}

    AgentAction decide(const Observation&, Rng&) override {
        if (next_ >= transcript_.steps.size()) return AgentAction::pass();
        return transcript_.steps[next_++].action;
    }
    const char* name() const override { return "replay"; }

    std::size_t consumed() const { return next_; }

private:
    Transcript transcript_;
    std::size_t next_ = 0;
};

}  // namespace dax
