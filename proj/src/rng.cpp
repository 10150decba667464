#include "dax/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dax {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (range == 0) {  // full 64-bit span
        return static_cast<std::int64_t>(eng_());
    }
    // Reject draws from the tail that would bias the modulus.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t draw;
    do {
        draw = eng_();
    } while (draw >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % range);
}

double Rng::gaussian(double mean, double sd) {
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    return mean + sd * u * m;
}

Rng& SessionRng::stream(std::uint64_t index) {
    auto it = streams_.find(index);
    if (it == streams_.end()) {
        const std::uint64_t sub = splitmix64(seed_ ^ (index + 1) * 0x9E3779B97F4A7C15ULL);
        it = streams_.emplace(index, Rng(sub)).first;
    }
    return it->second;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace dax
