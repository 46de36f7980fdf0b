#pragma once

#include "augury/integrator.hpp"

#include <string>

namespace augury {

// A fully-built experiment: merged bodies plus the paper-prescribed step,
// augury horizon, and background grid sizes. Transfer mode, contact law, mu,
// and iteration count are supplied by the caller at run time.
struct ScenarioSetup {
    std::string name;
    SimSetup sim;
    double mesh_h;
    double grid_spacing;
    double dt;
    double tau;
    double default_end_time;
};

// Structured block on [0, extent], each cell split into six tetrahedra with a
// fixed diagonal template; cell counts round up (with a warning) when an
// extent is not a multiple of h.
TetMesh build_block_mesh(const Vec3& extent, double h);

// Two 3x3x3 blocks impacting at an angle; foreground mesh size 2^k.
ScenarioSetup two_block_impact(int k);

// Unit block on a 30-degree ramp with gravity; ramp bottom face fixed.
ScenarioSetup ramp_scenario(double h, double mu);

// Rigid-body slide-from-rest horizontal displacement. Returns zero when
// friction holds the block static (mu >= tan(theta)).
double ramp_analytic(double t, double theta, double mu, double g);

constexpr double kRampAngleRadians = 0.5235987755982988;  // 30 degrees

}  // namespace augury
