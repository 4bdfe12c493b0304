#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using multiport::RunConfig;
namespace cli = multiport::cli;

namespace {

void shared_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "Output file (stdout when omitted)");
    sub->add_flag("--no-timing", c.no_timing, "Write runtime as null so reruns are byte-identical");
}

void device_option(CLI::App* sub, RunConfig& c) {
    sub->add_option("--device", c.device, "tritter or quarter")->check(CLI::IsMember({"tritter", "quarter"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiport interferometry: fringes, visibility bounds, Fisher information and phase estimation"};
    app.set_version_flag("--version", MULTIPORT_VERSION);
    app.require_subcommand(1);

    RunConfig config;
    bool inject_fault = false;
    bool full = false;
    std::function<int(cli::Report&)> action;

    auto* devices = app.add_subcommand("devices-check", "Print splitter matrices and unitarity residuals");
    shared_options(devices, config);
    devices->add_flag("--inject-fault", inject_fault)->group("");
    devices->callback([&] {
        config.command = "devices-check";
        action = [&](cli::Report& r) { return cli::devices_check(config, r, inject_fault); };
    });

    auto* fringes = app.add_subcommand("fringes", "Output probabilities over a phase grid");
    device_option(fringes, config);
    fringes->add_option("--input", config.input, "Input occupations, e.g. 1,1,1 (default: all ones)");
    fringes->add_option("--outcome", config.outcome, "'all' or occupations, e.g. 2,1,0");
    fringes->add_option("--grid", config.grid, "start:stop:count, angles may use pi");
    fringes->add_flag("--check-closed-form", config.check_closed_form, "Compare with tabulated closed forms");
    shared_options(fringes, config);
    fringes->callback([&] {
        config.command = "fringes";
        action = [&](cli::Report& r) { return cli::fringes(config, r); };
    });

    auto* vis = app.add_subcommand("visibility", "N-fold visibilities against the coherent-light bound");
    device_option(vis, config);
    vis->add_option("--input", config.input, "Input occupations (default: all ones)");
    vis->add_option("--goldens", config.goldens, "Gamma cache file (read if present, written otherwise)");
    shared_options(vis, config);
    vis->callback([&] {
        config.command = "visibility";
        action = [&](cli::Report& r) { return cli::visibility(config, r); };
    });

    auto* fisher = app.add_subcommand("fisher", "Classical and quantum Fisher information");
    device_option(fisher, config);
    fisher->add_option("--input", config.input, "Fock input occupations (default: all ones)");
    fisher->add_option("--probe", config.probe, "fock, coherent_ref or coherent_avg")
        ->check(CLI::IsMember({"fock", "coherent_ref", "coherent_avg"}));
    fisher->add_option("--alpha", config.alpha, "Coherent amplitudes, e.g. 1,1,0.5-0.5i");
    fisher->add_option("--grid", config.grid, "start:stop:count");
    shared_options(fisher, config);
    fisher->callback([&] {
        config.command = "fisher";
        action = [&](cli::Report& r) { return cli::fisher(config, r); };
    });

    auto* proto = app.add_subcommand("protocol", "Monte Carlo of the three-step adaptive tritter protocol");
    proto->add_option("--M", config.measurements, "Photon triples per estimate");
    proto->add_option("--trials", config.trials, "Trials per phase");
    proto->add_option("--phases", config.phases, "Number of true phases spread over the identifiable interval");
    proto->add_option("--grid-size", config.grid_size, "Posterior grid points (power of two, >= 1024)");
    proto->add_option("--seed", config.seed, "Random seed");
    proto->add_option("--mode", config.mode, "adaptive, nonadaptive or both")
        ->check(CLI::IsMember({"adaptive", "nonadaptive", "both"}));
    proto->add_flag("--self-check", config.self_check, "Exit 1 if the adaptive run misses basic sanity checks");
    proto->add_flag("--full", full, "Use M = 100000");
    shared_options(proto, config);
    proto->callback([&] {
        config.command = "protocol";
        if (full) config.measurements = 100000;
        action = [&](cli::Report& r) { return cli::protocol(config, r); };
    });

    auto* multi = app.add_subcommand("multiparam", "Quantum Fisher information matrix for several phases");
    device_option(multi, config);
    multi->add_option("--modes", config.modes, "1-based phase modes (default: the last two)");
    multi->add_option("--input", config.input, "Fock input occupations (default: all ones)");
    multi->add_option("--probe", config.probe, "fock, coherent_ref or coherent_avg")
        ->check(CLI::IsMember({"fock", "coherent_ref", "coherent_avg"}));
    multi->add_option("--alpha", config.alpha, "Coherent amplitudes (default: same mean photon number as the Fock input)");
    multi->add_option("--M", config.measurements, "Number of measurements for the bounds");
    shared_options(multi, config);
    multi->callback([&] {
        config.command = "multiparam";
        action = [&](cli::Report& r) { return cli::multiparam(config, r); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitUsage;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        cli::Report report(config);
        const int code = action(report);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        cli::emit(report.render(seconds), config.out);
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
    }
}
