// Command-line front end for the co-transportation simulator.

#include "cotransport/errors.hpp"
#include "cotransport/objects.hpp"
#include "cotransport/sim/simulator.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace cotransport;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
    std::string scenario;
    std::string controller;
    std::string out_trace;
    std::string out_metrics;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
};

sim::ScenarioConfig load(const Options& o) {
    sim::ScenarioConfig c = sim::load_scenario(o.scenario);
    if (!o.controller.empty()) {
        auto mode = aci::parse_controller_mode(o.controller);
        if (!mode) throw ConfigError("--controller must be one of aci, admittance, teleop (got '" + o.controller + "')");
        c.mode = *mode;
    }
    if (o.seed) c.seed = *o.seed;
    if (o.dt) c.dt = *o.dt;
    if (!o.out_trace.empty()) c.out_trace = o.out_trace;
    if (!o.out_metrics.empty()) c.out_metrics = o.out_metrics;
    const auto problems = sim::validate(c);
    if (!problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) msg += "\n" + problems[i];
        throw ConfigError(msg);
    }
    return c;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string summary(const sim::ScenarioConfig& c, const sim::Metrics& m) {
    return "scenario=" + c.name + " controller=" + aci::to_string(c.mode) +
           " completed=" + (m.completed ? "true" : "false") + " t_c=" + (m.t_c ? fmt(*m.t_c) : "nan") +
           " D_AM=" + fmt(m.d_am) + " mean_alpha=" + fmt(m.motion_mean_alpha) +
           " progress=" + fmt(m.progress);
}

int guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_run(const Options& o) {
    return guarded([&] {
        const sim::ScenarioConfig c = load(o);
        const sim::RunResult r = sim::run(c);
        std::cout << summary(c, r.metrics) << '\n';
        return kExitOk;
    });
}

int cmd_compare(const Options& o) {
    return guarded([&] {
        Options shared = o;
        shared.controller.clear();
        const sim::ScenarioConfig base = load(shared);
        const aci::ControllerMode modes[] = {aci::ControllerMode::Aci, aci::ControllerMode::AdmittanceOnly,
                                             aci::ControllerMode::Teleop};
        std::vector<std::future<sim::RunResult>> jobs;
        for (auto mode : modes) {
            sim::ScenarioConfig c = base;
            c.mode = mode;
            c.out_trace.reset();
            c.out_metrics.reset();
            jobs.push_back(std::async(std::launch::async, [c] { return sim::run(c); }));
        }
        std::vector<sim::Metrics> results;
        for (auto& j : jobs) results.push_back(j.get().metrics);

        std::printf("%-12s %-9s %9s %9s %10s %10s\n", "controller", "completed", "t_c", "D_AM", "mean_alpha",
                    "mean_force");
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& m = results[i];
            std::printf("%-12s %-9s %9s %9.4f %10.4f %10.4f\n", aci::to_string(modes[i]).c_str(),
                        m.completed ? "true" : "false", m.t_c ? fmt(*m.t_c).c_str() : "nan", m.d_am,
                        m.motion_mean_alpha, m.mean_force);
        }
        if (!results.front().intervals.empty()) {
            std::printf("\nper-interval mean alpha / mean force [N]\n%-12s", "controller");
            for (const auto& s : results.front().intervals)
                std::printf(" [%5.2f,%5.2f)      ", s.begin, s.end);
            std::printf("\n");
            for (std::size_t i = 0; i < results.size(); ++i) {
                std::printf("%-12s", aci::to_string(modes[i]).c_str());
                for (const auto& s : results[i].intervals) std::printf(" %6.3f / %8.3f", s.mean_alpha, s.mean_force);
                std::printf("\n");
            }
        }
        for (std::size_t i = 0; i < results.size(); ++i) {
            sim::ScenarioConfig c = base;
            c.mode = modes[i];
            std::cout << summary(c, results[i]) << '\n';
        }
        return kExitOk;
    });
}

int cmd_validate(const Options& o) {
    return guarded([&] {
        load(o);
        std::cout << "OK\n";
        return kExitOk;
    });
}

int cmd_presets() {
    for (const auto& m : objects::presets()) {
        std::printf("%-11s tension=%g compression=%g lateral=%g damping=%g slack=%g\n", m.label.c_str(),
                    m.axial_stiffness_tension, m.axial_stiffness_compression, m.lateral_stiffness, m.damping,
                    m.slack_length);
    }
    return kExitOk;
}

void add_common(CLI::App* cmd, Options& o, bool outputs) {
    cmd->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
    cmd->add_option("--seed", o.seed, "Override the scenario seed");
    cmd->add_option("--dt", o.dt, "Override the time step [s]");
    if (outputs) {
        cmd->add_option("--controller", o.controller, "aci, admittance or teleop");
        cmd->add_option("--out-trace", o.out_trace, "Trace CSV output path");
        cmd->add_option("--out-metrics", o.out_metrics, "Metrics JSON output path");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Human-robot co-transportation simulator"};
    app.require_subcommand(1);
    Options o;

    auto* run = app.add_subcommand("run", "Run one scenario and print a summary line");
    add_common(run, o, true);
    auto* compare = app.add_subcommand("compare", "Run a scenario under aci, admittance and teleop");
    add_common(compare, o, false);
    auto* validate = app.add_subcommand("validate", "Check a scenario without running it");
    add_common(validate, o, false);
    app.add_subcommand("presets", "List object presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*run) return cmd_run(o);
    if (*compare) return cmd_compare(o);
    if (*validate) return cmd_validate(o);
    return cmd_presets();
}
