#pragma once

#include <map>
#include <optional>
#include <string>

#include "dax/equilibrium.hpp"
#include "dax/session.hpp"

namespace dax {

/// Command-line overrides applied on top of a run configuration file.
struct LoadOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> periods;
    std::optional<int> timeout_ms;
    std::optional<std::string> out_dir;
    /// Agent id -> transcript path; each replaces that seat's strategy with
    /// a replay of the recorded actions.
    std::map<AgentId, std::string> replay_transcripts;
};

struct LoadedRun {
    SessionConfig session;
    std::string out_dir;
    int timeout_ms = 30000;
    /// Seats backed by external connections, in roster order; their
    /// transcripts are persisted after the run.
    std::vector<AgentId> external_ids;
};

/// Parses and validates a JSON run configuration. Precedence for settings
/// that can arrive several ways: command-line flag, then config file, then
/// the DAX_OUT_DIR environment variable (output directory only), then the
/// built-in default. Throws ConfigError on any schema or value problem.
LoadedRun load_run_config(const std::string& path, const LoadOptions& opts = {});
LoadedRun load_run_config_text(const std::string& text, const LoadOptions& opts = {});

/// Schedule files list buyer values and seller costs in integer cents, with
/// an optional price domain.
struct ScheduleFile {
    Schedule schedule;
    PriceDomain domain;
};

ScheduleFile load_schedule_file(const std::string& path);
ScheduleFile load_schedule_text(const std::string& text);

}  // namespace dax
