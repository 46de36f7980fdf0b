#include "augury/diagnostics.hpp"
#include "augury/run_config.hpp"
#include "augury/scenarios.hpp"
#include "augury/spline_grid.hpp"
#include "augury/toy1d.hpp"
#include "augury/verification.hpp"
#include "augury/vtk_writer.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace augury;

int run_command(const std::string& config_path, const std::optional<std::string>& out,
                const std::optional<std::string>& mode, const std::optional<std::string>& law,
                const std::optional<double>& mu, const std::optional<int>& iters) {
    RunConfig config = load_config_file(config_path);
    if (out) config.out_dir = *out;
    if (mode) config.mode = transfer_mode_from(*mode);
    if (law) {
        config.law = contact_law_from(*law);
        if (config.law == ContactLaw::Sticky && !iters) config.iterations = 0;
    }
    if (mu) config.mu = *mu;
    if (iters) config.iterations = *iters;
    config.validate();

    ScenarioSetup scenario = config.scenario == "two-block"
                                 ? two_block_impact(config.k)
                                 : ramp_scenario(config.h, config.mu);
    const double dt = config.dt_override.value_or(scenario.dt);
    const double tau = dt;  // augury horizon tracks the step
    const double end_time = config.end_time.value_or(scenario.default_end_time);

    std::filesystem::create_directories(config.out_dir);
    {
        std::ofstream manifest(config.out_dir + "/manifest.cfg", std::ios::binary);
        manifest << render_manifest(config, dt, tau, scenario.grid_spacing, end_time);
    }

    StepConfig step_config{dt, GridSpec(scenario.grid_spacing),
                           ContactConfig{tau, config.mode, config.law, config.mu,
                                         config.iterations}};
    SimState state = initialize(scenario.sim, step_config);

    DiagnosticsCsv csv(config.out_dir + "/diagnostics.csv");
    RunHooks hooks;
    hooks.sample_every = config.diag_every;
    hooks.snapshot_every = config.snapshot_every;
    hooks.sample = [&](const SimState& s) { csv.write(measure(s)); };
    hooks.snapshot = [&](const SimState& s) {
        char name[64];
        std::snprintf(name, sizeof name, "/snapshot_%08lld.vtk",
                      static_cast<long long>(s.step_count));
        write_snapshot(s, config.out_dir + name);
    };

    run(state, step_config, end_time, hooks);
    std::printf("run complete: t = %g, %lld steps, outputs in %s\n", state.time,
                static_cast<long long>(state.step_count), config.out_dir.c_str());
    return 0;
}

int toy1d_command(const std::string& mode_word, const std::vector<double>& taus,
                  double t_end, const std::string& out_dir) {
    const TransferMode mode = transfer_mode_from(mode_word);
    std::filesystem::create_directories(out_dir);

    bool any_unstable = false;
    for (double tau : taus) {
        ToyState initial;
        initial.tau = tau;
        const double dt = tau / 100.0;
        const ToyTrajectory traj =
            integrate_toy(initial, mode, t_end, dt, std::max(1, static_cast<int>(0.01 / dt)));

        char name[96];
        std::snprintf(name, sizeof name, "/toy1d_%s_tau%g.csv", mode_word.c_str(), tau);
        std::FILE* f = std::fopen((out_dir + name).c_str(), "wb");
        if (f == nullptr) {
            throw InvalidInput("cannot open " + out_dir + name);
        }
        std::fputs("t,x,v,a,B\n", f);
        for (const ToySample& s : traj.samples) {
            std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.x, s.v, s.a, s.B);
        }
        std::fclose(f);

        if (traj.unstable) {
            any_unstable = true;
            std::fprintf(stderr, "instability: tau = %g diverged (|x| > 10) at t = %g\n",
                         tau, traj.samples.back().t);
        } else {
            std::printf("tau = %g: terminal x = %.6g\n", tau, traj.samples.back().x);
        }
    }
    if (any_unstable) {
        throw NumericalFailure("one or more toy trajectories went unstable");
    }
    return 0;
}

int verify_command() {
    int failures = 0;
    const auto report = [&](const char* name, bool ok, double value, double bound) {
        std::printf("[%s] %-34s max %.3e (bound %.1e)\n", ok ? "PASS" : "FAIL", name, value,
                    bound);
        if (!ok) ++failures;
    };

    const BasisCheck basis = check_spline_basis(10000, 2024);
    report("spline partition of unity", basis.pou_error < 1e-14, basis.pou_error, 1e-14);
    report("spline linear completeness", basis.completeness_error < 1e-13,
           basis.completeness_error, 1e-13);
    report("spline second moment", basis.second_moment_error < 1e-13,
           basis.second_moment_error, 1e-13);

    const double affine = check_affine_preservation(100, 7);
    report("affine fields fixed under H", affine < 1e-12, affine, 1e-12);

    const MomentumCheck momentum = check_momentum_free_g(100, 11);
    report("G momentum-free (linear, pic)", momentum.linear_pic < 1e-12,
           momentum.linear_pic, 1e-12);
    report("G momentum-free (linear, apic)", momentum.linear_apic < 1e-12,
           momentum.linear_apic, 1e-12);
    report("G momentum-free (angular, apic)", momentum.angular_apic < 1e-12,
           momentum.angular_apic, 1e-12);

    const std::string law_failure = check_contact_laws();
    std::printf("[%s] %-34s\n", law_failure.empty() ? "PASS" : "FAIL", "contact law cases");
    if (!law_failure.empty()) {
        std::printf("       %s\n", law_failure.c_str());
        ++failures;
    }

    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frictional contact dynamics via affine particle-in-cell grid transfers"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run a scenario from a config file");
    std::string config_path;
    std::optional<std::string> out, mode, law;
    std::optional<double> mu;
    std::optional<int> iters;
    run_cmd->add_option("--config", config_path, "key = value run configuration")
        ->required();
    run_cmd->add_option("--out", out, "output directory override");
    run_cmd->add_option("--mode", mode, "transfer mode override (pic|apic)");
    run_cmd->add_option("--law", law, "contact law override (sticky|separation|friction)");
    run_cmd->add_option("--mu", mu, "friction coefficient override");
    run_cmd->add_option("--iters", iters, "augury iteration count override");

    auto* toy_cmd = app.add_subcommand("toy1d", "integrate the 1D two-particle model");
    std::string toy_mode;
    std::vector<double> taus;
    double toy_t_end = 40.0;
    std::string toy_out = "out";
    toy_cmd->add_option("mode", toy_mode, "pic or apic")->required();
    toy_cmd->add_option("tau", taus, "augury times to sweep")
        ->delimiter(',')
        ->expected(-1);
    toy_cmd->add_option("--t-end", toy_t_end, "integration end time");
    toy_cmd->add_option("--out", toy_out, "output directory");

    auto* verify_cmd = app.add_subcommand("verify", "run the built-in property suites");

    CLI11_PARSE(app, argc, argv);

    try {
        augury::spline_self_check();
        if (run_cmd->parsed()) {
            return run_command(config_path, out, mode, law, mu, iters);
        }
        if (toy_cmd->parsed()) {
            if (taus.empty()) {
                taus = {0.02, 0.05, 0.1, 0.2, 0.5};
            }
            return toy1d_command(toy_mode, taus, toy_t_end, toy_out);
        }
        if (verify_cmd->parsed()) {
            return verify_command();
        }
    } catch (const augury::NumericalFailure& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const augury::InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
