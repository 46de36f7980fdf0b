#pragma once

#include "augury/contact.hpp"
#include "augury/fem.hpp"
#include "augury/spline_grid.hpp"
#include "augury/transfers.hpp"
#include "augury/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace augury {

// Per-step integration parameters. contact == nullopt runs the bare explicit
// Newmark scheme with no grid coupling (reference integrator for tests).
struct StepConfig {
    double dt;
    GridSpec grid;
    std::optional<ContactConfig> contact;
};

// Everything a scenario provides to start a run.
struct SimSetup {
    TetMesh mesh;                     // merged bodies, body ids assigned
    std::vector<Material> materials;  // per body
    std::vector<Vec3> initial_velocity;            // per node
    std::vector<Mat3> initial_velocity_gradient;   // per body, seeds B
    std::vector<std::uint8_t> fixed;               // per node Dirichlet flags
    Vec3 gravity = Vec3::Zero();
};

struct SimState {
    TetMesh mesh;
    ElementCache elements;
    std::vector<Material> materials;
    std::vector<std::uint8_t> fixed;
    Vec3 gravity = Vec3::Zero();

    // Whole-step kinematics plus the staggered Newmark companions.
    std::vector<Vec3> x;
    std::vector<Vec3> v;
    std::vector<Mat3> B;       // nonzero only on boundary nodes
    std::vector<Vec3> v_half;
    std::vector<Mat3> B_half;
    std::vector<Vec3> accel;
    std::vector<Mat3> B_rate;
    std::vector<double> mass;

    double time = 0.0;
    std::int64_t step_count = 0;
};

SimState initialize(const SimSetup& setup, const StepConfig& config);

// One explicit Newmark cycle: drift, new accelerations (mechanical plus
// augury correction at the new coordinates), then the two half kicks.
void step(SimState& state, const StepConfig& config);

struct RunHooks {
    std::function<void(const SimState&)> sample;    // diagnostics cadence
    std::function<void(const SimState&)> snapshot;  // mesh output cadence
    std::int64_t sample_every = 1;
    std::int64_t snapshot_every = 0;  // 0 disables
};

// Steps until end_time; samples fire at step 0, on cadence, and at the final
// step. Throws NumericalFailure (with the step number) on non-finite state.
void run(SimState& state, const StepConfig& config, double end_time, const RunHooks& hooks);

}  // namespace augury
