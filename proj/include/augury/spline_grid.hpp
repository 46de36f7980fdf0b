#pragma once

#include "augury/types.hpp"

#include <array>
#include <utility>
#include <vector>

namespace augury {

// Uniform Cartesian lattice with nodes at origin + h * (integer triple).
// The origin is fixed when a scenario starts, so weights are a pure
// function of position.
struct GridSpec {
    double h;
    Vec3 origin = Vec3::Zero();

    explicit GridSpec(double spacing, const Vec3& orig = Vec3::Zero());

    Vec3 node_position(const std::array<int, 3>& idx) const {
        return origin + h * Vec3(idx[0], idx[1], idx[2]);
    }
};

// Four quadratic B-spline weights covering one coordinate.
// Covered nodes are base-1, base, base+1, base+2 where base = cell_of(x).
struct WeightStencil1D {
    int base;
    std::array<double, 4> w;
};

int cell_of(double x, const GridSpec& spec, int axis = 0);

WeightStencil1D weights_1d(double x, const GridSpec& spec, int axis = 0);

// Full 4^3 tensor-product stencil; always 64 entries, zero weights included.
std::vector<std::pair<std::array<int, 3>, double>> weights_3d(const Vec3& x,
                                                              const GridSpec& spec);

// Second moment of the weights about the evaluation point; constant (h^2/2) I.
Mat3 d_tensor(const GridSpec& spec);

// Asserts partition of unity and linear completeness at pseudorandom points.
// Throws NumericalFailure if the basis is broken; called at CLI startup.
void spline_self_check();

}  // namespace augury
