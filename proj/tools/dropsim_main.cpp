// dropsim command line: run a scenario, validate one, or recompute a
// report from an existing trace file.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dropsim/scenario.hpp"
#include "dropsim/simulation.hpp"
#include "dropsim/telemetry.hpp"

namespace {

int cmd_run(const std::string& file, const std::string& out_dir,
            const std::optional<uint64_t>& seed, bool quiet) {
    dropsim::Scenario scn = dropsim::load_scenario(file);
    dropsim::RunOptions opts;
    opts.out_dir = out_dir;
    opts.seed = seed;
    dropsim::RunOutputs out = dropsim::run_scenario(scn, opts);

    if (!quiet) {
        const dropsim::RunReport& rep = out.report;
        std::printf("wrote %s (%llu lines), %s\n", out.trace_path.c_str(),
                    static_cast<unsigned long long>(rep.trace_lines),
                    out.report_path.c_str());
        for (const auto& [flow, c] : rep.flows) {
            if (c.data.created + c.acks.created == 0)
                continue;
            std::printf("flow %d: %llu sent, %llu delivered, %llu dropped, %lld bytes\n",
                        flow, static_cast<unsigned long long>(c.data.created),
                        static_cast<unsigned long long>(c.data.received),
                        static_cast<unsigned long long>(c.data.dropped),
                        static_cast<long long>(c.bytes_received));
        }
        for (const auto& [node, drops] : rep.node_drops)
            if (drops > 0)
                std::printf("node n%d drops: %llu\n", node,
                            static_cast<unsigned long long>(drops));
        std::printf("total drops: %llu\n",
                    static_cast<unsigned long long>(rep.total_drops));
        std::printf("elapsed: %.3f s wall, %llu events\n", rep.wall_seconds,
                    static_cast<unsigned long long>(rep.events_executed));
        if (!out.plot_paths.empty()) {
            std::string cmd = "xgraph -geometry 600x400";
            for (const auto& [flow, path] : out.plot_paths)
                cmd += " " + path;
            std::printf("plot: %s\n", cmd.c_str());
        }
    }
    return 0;
}

int cmd_validate(const std::string& file) {
    dropsim::Scenario s = dropsim::load_scenario(file);
    std::printf("ok: %zu nodes, %zu links, %zu agents, %zu apps, duration %g s\n",
                s.nodes.size(), s.links.size(), s.agents.size(), s.apps.size(),
                s.duration);
    return 0;
}

int cmd_report(const std::string& trace_path) {
    std::ifstream f(trace_path);
    if (!f) {
        std::fprintf(stderr, "error: cannot open trace file %s\n", trace_path.c_str());
        return 1;
    }
    dropsim::RunReport rep = dropsim::report_from_trace(f);
    std::fputs(dropsim::render_report(rep).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dropsim: packet-level TCP drop-rate simulator"};
    app.require_subcommand(1);

    std::string file;
    std::string out_dir = ".";
    if (const char* env = std::getenv("DROPSIM_OUT"); env && *env)
        out_dir = env;
    std::optional<uint64_t> seed;
    bool quiet = false;

    CLI::App* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("file", file, "scenario file")->required();
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--out-dir", out_dir, "output directory (default $DROPSIM_OUT or .)");
    run->add_flag("--quiet", quiet, "suppress the run summary");

    std::string validate_file;
    CLI::App* validate = app.add_subcommand("validate", "parse and check a scenario file");
    validate->add_option("file", validate_file, "scenario file")->required();

    std::string trace_path;
    CLI::App* report = app.add_subcommand("report", "recompute a report from a trace file");
    report->add_option("trace", trace_path, "trace file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(file, out_dir, seed, quiet);
        if (validate->parsed())
            return cmd_validate(validate_file);
        if (report->parsed())
            return cmd_report(trace_path);
    } catch (const dropsim::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
