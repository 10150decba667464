#pragma once

#include <stdexcept>

namespace dax {

struct ConfigError : std::runtime_error { using std::runtime_error::runtime_error; };
struct MalformedMessage : std::runtime_error { using std::runtime_error::runtime_error; };
struct DegenerateSlopes : std::runtime_error { using std::runtime_error::runtime_error; };
struct NegativePrice : std::runtime_error { using std::runtime_error::runtime_error; };
struct ZeroEvidence : std::runtime_error { using std::runtime_error::runtime_error; };
struct EmptyPrices : std::runtime_error { using std::runtime_error::runtime_error; };
struct UnknownAgent : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace dax
