#pragma once

#include "augury/types.hpp"

#include <array>
#include <vector>

namespace augury {

// Non-dimensional reduced state of the symmetric two-particle system: the
// mirrored partner sits at -x with velocity -v and the same B.
struct ToyState {
    double x = 1.0;
    double v = -1.0;
    double B = 0.0;
    double tau = 0.1;
};

// x' = v, v' = ((x^2-1) v - x B)/tau, B' = ((x^3-x) v - x^2 B)/tau.
std::array<double, 3> toy_apic_rhs(const ToyState& s);

// x' = v, v' = v (x^2-1)/tau.
std::array<double, 2> toy_pic_rhs(const ToyState& s);

struct ToySample {
    double t, x, v, a, B;
};

struct ToyTrajectory {
    std::vector<ToySample> samples;
    bool unstable = false;
    double tau = 0.0;
};

// Classical fourth-order integration; requires dt <= tau/50. Integration
// stops early (flagged unstable) once |x| exceeds 10.
ToyTrajectory integrate_toy(const ToyState& initial, TransferMode mode, double t_end,
                            double dt, int sample_stride = 1);

}  // namespace augury
