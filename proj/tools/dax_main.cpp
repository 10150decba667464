#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dax/config.hpp"
#include "dax/errors.hpp"
#include "dax/external.hpp"
#include "dax/io.hpp"
#include "dax/session.hpp"
#include "dax/transcript.hpp"

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_outputs(const fs::path& dir, const dax::SessionConfig& config,
                   const dax::SessionReport& report) {
    fs::create_directories(dir);
    {
        auto out = open_out(dir / "events.jsonl");
        dax::write_event_log(out, dax::header_from_config(config), report.events);
    }
    {
        auto out = open_out(dir / "report.csv");
        dax::write_report_csv(out, report.periods);
    }
    {
        auto out = open_out(dir / "prices.csv");
        dax::write_prices_csv(out, report.events);
    }
    {
        auto out = open_out(dir / "report.json");
        dax::write_report_json(out, report.equilibrium, report.periods);
    }
}

void dump_transcripts(const fs::path& dir, const dax::LoadedRun& run) {
    for (dax::AgentId id : run.external_ids) {
        for (const dax::Seat& seat : run.session.roster) {
            if (seat.id != id) continue;
            if (const auto* ext = dynamic_cast<const dax::ExternalStrategy*>(seat.strategy.get())) {
                dax::write_transcript_file(
                    (dir / ("transcript_" + std::to_string(id) + ".jsonl")).string(),
                    ext->transcript());
            }
        }
    }
}

int do_session(dax::LoadedRun& run) {
    dax::SessionReport report = dax::run_session(run.session);
    const fs::path dir(run.out_dir);
    write_outputs(dir, run.session, report);
    dump_transcripts(dir, run);
    dax::write_report_csv(std::cout, report.periods);
    std::cerr << "wrote " << (dir / "events.jsonl").string() << ", report.csv, prices.csv, report.json\n";
    return 0;
}

int do_equilibrium(const std::string& schedule_path) {
    const dax::ScheduleFile f = dax::load_schedule_file(schedule_path);
    const dax::EquilibriumResult eq = dax::clearing(f.schedule, f.domain);
    if (eq.price_low == eq.price_high) {
        std::cout << "price " << eq.price_mid.str() << "\n";
    } else {
        std::cout << "price " << eq.price_low.str() << ".." << eq.price_high.str() << " mid "
                  << eq.price_mid.str() << "\n";
    }
    std::cout << "quantity " << eq.quantity << "\n";
    std::cout << "max_welfare " << eq.max_welfare.str() << "\n";
    return 0;
}

int do_report(const std::string& log_path, const std::string& out_dir) {
    const dax::EventLog log = dax::read_event_log_file(log_path);
    const dax::LogSummary summary = dax::summarize_log(log);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    {
        auto out = open_out(dir / "report.csv");
        dax::write_report_csv(out, summary.periods);
    }
    {
        auto out = open_out(dir / "prices.csv");
        dax::write_prices_csv(out, log.events);
    }
    {
        auto out = open_out(dir / "report.json");
        dax::write_report_json(out, summary.equilibrium, summary.periods);
    }
    dax::write_report_csv(std::cout, summary.periods);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-auction market simulator"};
    app.require_subcommand(1);

    std::string config_path, schedule_path, log_path;
    std::vector<std::string> transcript_paths;
    dax::LoadOptions opts;
    std::uint64_t seed = 0;
    int periods = 0, timeout_ms = 0;
    std::string out_dir;
    std::string report_out = ".";

    auto* run_cmd = app.add_subcommand("run", "simulate a session from a config file");
    run_cmd->add_option("config", config_path, "run configuration (JSON)")->required();
    auto* run_seed = run_cmd->add_option("--seed", seed, "override the session seed");
    auto* run_periods = run_cmd->add_option("--periods", periods, "override the period count");
    auto* run_out = run_cmd->add_option("--out-dir", out_dir, "output directory");
    auto* run_timeout =
        run_cmd->add_option("--timeout-ms", timeout_ms, "external agent reply budget");

    auto* eq_cmd = app.add_subcommand("equilibrium", "clear a supply/demand schedule");
    eq_cmd->add_option("schedule", schedule_path, "schedule file (JSON)")->required();

    auto* replay_cmd =
        app.add_subcommand("replay", "re-run a config with recorded external-agent transcripts");
    replay_cmd->add_option("config", config_path, "run configuration (JSON)")->required();
    replay_cmd->add_option("transcripts", transcript_paths, "transcript files")->required();
    auto* replay_seed = replay_cmd->add_option("--seed", seed, "override the session seed");
    auto* replay_periods =
        replay_cmd->add_option("--periods", periods, "override the period count");
    auto* replay_out = replay_cmd->add_option("--out-dir", out_dir, "output directory");

    auto* report_cmd = app.add_subcommand("report", "recompute metrics from an event log");
    report_cmd->add_option("eventlog", log_path, "events.jsonl from a previous run")->required();
    report_cmd->add_option("--out-dir", report_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_seed->count() || replay_seed->count()) opts.seed = seed;
        if (run_periods->count() || replay_periods->count()) opts.periods = periods;
        if (run_timeout->count()) opts.timeout_ms = timeout_ms;
        if (run_out->count() || replay_out->count()) opts.out_dir = out_dir;

        if (run_cmd->parsed()) {
            dax::LoadedRun run = dax::load_run_config(config_path, opts);
            return do_session(run);
        }
        if (eq_cmd->parsed()) {
            return do_equilibrium(schedule_path);
        }
        if (replay_cmd->parsed()) {
            for (const std::string& path : transcript_paths) {
                opts.replay_transcripts[dax::read_transcript_file(path).agent] = path;
            }
            dax::LoadedRun run = dax::load_run_config(config_path, opts);
            return do_session(run);
        }
        if (report_cmd->parsed()) {
            return do_report(log_path, report_out);
        }
    } catch (const dax::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dax::MalformedMessage& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
