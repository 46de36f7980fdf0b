#include "augury/integrator.hpp"

#include <cmath>
#include <string>

namespace augury {

namespace {

ParticleSet boundary_particles(const SimState& state) {
    ParticleSet ps;
    const auto& nodes = state.mesh.boundary_nodes;
    ps.x.reserve(nodes.size());
    ps.mass.reserve(nodes.size());
    ps.gv.reserve(nodes.size());
    for (int n : nodes) {
        ps.x.push_back(state.x[n]);
        ps.mass.push_back(state.mass[n]);
        ps.gv.push_back({state.v[n], state.B[n]});
    }
    return ps;
}

// A^{n+1} = {a_mech(x), 0} + augury correction, evaluated at the current
// coordinates with V = the whole-step generalized velocities.
void compute_accelerations(SimState& state, const StepConfig& config) {
    state.accel = mechanical_acceleration(state.mesh, state.elements, state.materials,
                                          state.x, state.mass, state.gravity, state.fixed);
    for (Mat3& r : state.B_rate) {
        r.setZero();
    }
    if (!config.contact.has_value()) {
        return;
    }

    const ParticleSet particles = boundary_particles(state);
    std::vector<GeneralizedAcceleration> mech(particles.size());
    for (std::size_t i = 0; i < particles.size(); ++i) {
        mech[i].v = state.accel[state.mesh.boundary_nodes[i]];
        mech[i].B.setZero();
    }
    const SurfaceNormals normals = compute_normals(state.mesh, state.x);
    const std::vector<GeneralizedAcceleration> correction =
        full_correction(particles, mech, normals, *config.contact, config.grid);

    for (std::size_t i = 0; i < particles.size(); ++i) {
        const int n = state.mesh.boundary_nodes[i];
        if (state.fixed[n]) continue;
        state.accel[n] += correction[i].v;
        state.B_rate[n] = correction[i].B;
    }
}

void pin_dirichlet(SimState& state) {
    for (std::size_t n = 0; n < state.x.size(); ++n) {
        if (state.fixed[n]) {
            state.v[n].setZero();
            state.v_half[n].setZero();
            state.accel[n].setZero();
        }
    }
}

void check_finite(const SimState& state) {
    for (std::size_t n = 0; n < state.x.size(); ++n) {
        if (!state.x[n].allFinite() || !state.v[n].allFinite() || !state.B[n].allFinite()) {
            throw NumericalFailure("non-finite state at node " + std::to_string(n) +
                                   " after step " + std::to_string(state.step_count));
        }
    }
}

}  // namespace

SimState initialize(const SimSetup& setup, const StepConfig& config) {
    setup.mesh.validate();
    if (setup.materials.size() != static_cast<std::size_t>(setup.mesh.num_bodies())) {
        throw InvalidInput("initialize: one material per body required");
    }
    if (setup.initial_velocity.size() != setup.mesh.ref_coords.size() ||
        setup.fixed.size() != setup.mesh.ref_coords.size()) {
        throw InvalidInput("initialize: per-node arrays must match the mesh");
    }
    if (!setup.initial_velocity_gradient.empty() &&
        setup.initial_velocity_gradient.size() !=
            static_cast<std::size_t>(setup.mesh.num_bodies())) {
        throw InvalidInput("initialize: one initial velocity gradient per body");
    }
    if (config.contact.has_value()) {
        config.contact->validate();
    }

    SimState state;
    state.mesh = setup.mesh;
    state.elements = build_element_cache(state.mesh);
    state.materials = setup.materials;
    state.fixed = setup.fixed;
    state.gravity = setup.gravity;
    state.x = setup.mesh.ref_coords;
    state.v = setup.initial_velocity;
    state.mass = lumped_mass(state.mesh, state.materials);

    const std::size_t count = state.x.size();
    state.B.assign(count, Mat3::Zero());
    state.B_half.assign(count, Mat3::Zero());
    state.B_rate.assign(count, Mat3::Zero());

    // B(0) = L0 D on boundary nodes; interior nodes keep B = 0 for good.
    if (!setup.initial_velocity_gradient.empty()) {
        const Mat3 d = d_tensor(config.grid);
        for (int n : state.mesh.boundary_nodes) {
            state.B[n] = setup.initial_velocity_gradient[state.mesh.body_id[n]] * d;
        }
    }

    compute_accelerations(state, config);

    // Seed the half-step velocities with the opening half kick.
    state.v_half.resize(count);
    for (std::size_t n = 0; n < count; ++n) {
        state.v_half[n] = state.v[n] + 0.5 * config.dt * state.accel[n];
        state.B_half[n] = state.B[n] + 0.5 * config.dt * state.B_rate[n];
    }
    pin_dirichlet(state);
    return state;
}

void step(SimState& state, const StepConfig& config) {
    const double dt = config.dt;
    if (!(dt > 0.0)) {
        throw InvalidInput("step: dt must be positive");
    }
    const std::size_t count = state.x.size();

    // Drift with the half-step velocities.
    for (std::size_t n = 0; n < count; ++n) {
        if (state.fixed[n]) continue;
        state.x[n] += dt * state.v_half[n];
    }

    compute_accelerations(state, config);

    // Half kick to the whole step, half kick to the next midpoint.
    for (std::size_t n = 0; n < count; ++n) {
        state.v[n] = state.v_half[n] + 0.5 * dt * state.accel[n];
        state.B[n] = state.B_half[n] + 0.5 * dt * state.B_rate[n];
        state.v_half[n] = state.v[n] + 0.5 * dt * state.accel[n];
        state.B_half[n] = state.B[n] + 0.5 * dt * state.B_rate[n];
    }
    pin_dirichlet(state);

    state.time += dt;
    state.step_count += 1;
}

void run(SimState& state, const StepConfig& config, double end_time, const RunHooks& hooks) {
    if (!(end_time >= 0.0)) {
        throw InvalidInput("run: end time must be non-negative");
    }
    const std::int64_t n_steps = std::llround(end_time / config.dt);

    if (hooks.sample) hooks.sample(state);
    if (hooks.snapshot && hooks.snapshot_every > 0) hooks.snapshot(state);

    for (std::int64_t s = 1; s <= n_steps; ++s) {
        step(state, config);
        check_finite(state);
        const bool last = s == n_steps;
        if (hooks.sample && (s % hooks.sample_every == 0 || last)) {
            hooks.sample(state);
        }
        if (hooks.snapshot && hooks.snapshot_every > 0 &&
            (s % hooks.snapshot_every == 0 || last)) {
            hooks.snapshot(state);
        }
    }
}

}  // namespace augury
