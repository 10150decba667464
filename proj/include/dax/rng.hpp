#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "dax/money.hpp"

namespace dax {

/// Deterministic random stream. The engine is mt19937_64 (its output sequence
/// is pinned by the standard) and the distributions are implemented here
/// rather than taken from <random>, whose distribution algorithms are
/// implementation-defined. Two builds with the same seed therefore produce
/// the same draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform integer in [lo, hi], inclusive. Unbiased via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Normal draw via the Marsaglia polar method; the paired second value is
    /// discarded so each call consumes a self-contained run of engine output.
    double gaussian(double mean, double sd);

    Money uniform_money(Money lo, Money hi) {
        return Money(uniform_int(lo.cents(), hi.cents()));
    }

private:
    std::mt19937_64 eng_;
};

/// One named generator per session, split into sub-streams: stream 0 drives
/// orchestrator agent selection, stream 1+i belongs to agent i. A strategy
/// consuming extra randomness never perturbs the selection order.
class SessionRng {
public:
    explicit SessionRng(std::uint64_t seed) : seed_(seed) {}

    Rng& orchestrator() { return stream(0); }
    Rng& agent(AgentId id) { return stream(static_cast<std::uint64_t>(id) + 1); }

private:
    Rng& stream(std::uint64_t index);

    std::uint64_t seed_;
    std::map<std::uint64_t, Rng> streams_;
};

/// SplitMix64; used to derive independent sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dax
