#include "augury/spline_grid.hpp"

#include <cmath>
#include <random>

namespace augury {

GridSpec::GridSpec(double spacing, const Vec3& orig) : h(spacing), origin(orig) {
    if (!std::isfinite(h) || h <= 0.0) {
        throw InvalidInput("GridSpec: spacing must be finite and positive");
    }
    if (!origin.allFinite()) {
        throw InvalidInput("GridSpec: origin must be finite");
    }
}

int cell_of(double x, const GridSpec& spec, int axis) {
    if (!std::isfinite(x)) {
        throw InvalidInput("cell_of: non-finite coordinate");
    }
    return static_cast<int>(std::floor((x - spec.origin[axis]) / spec.h));
}

WeightStencil1D weights_1d(double x, const GridSpec& spec, int axis) {
    const int i = cell_of(x, spec, axis);
    const double s = (x - spec.origin[axis]) / spec.h - i;  // in [0,1)

    // Quadratic pieces over the covered nodes; a+b+c = 2, so the common 1/4
    // factor gives partition of unity, linear completeness, and the constant
    // second moment h^2/2.
    const double a = (1.0 - s) * (1.0 - s);
    const double b = 1.0 + 2.0 * s - 2.0 * s * s;
    const double c = s * s;

    return WeightStencil1D{i, {0.25 * a, 0.25 * (a + b), 0.25 * (b + c), 0.25 * c}};
}

std::vector<std::pair<std::array<int, 3>, double>> weights_3d(const Vec3& x,
                                                              const GridSpec& spec) {
    const WeightStencil1D sx = weights_1d(x[0], spec, 0);
    const WeightStencil1D sy = weights_1d(x[1], spec, 1);
    const WeightStencil1D sz = weights_1d(x[2], spec, 2);

    std::vector<std::pair<std::array<int, 3>, double>> out;
    out.reserve(64);
    for (int di = 0; di < 4; ++di) {
        for (int dj = 0; dj < 4; ++dj) {
            for (int dk = 0; dk < 4; ++dk) {
                out.emplace_back(
                    std::array<int, 3>{sx.base - 1 + di, sy.base - 1 + dj, sz.base - 1 + dk},
                    sx.w[di] * sy.w[dj] * sz.w[dk]);
            }
        }
    }
    return out;
}

Mat3 d_tensor(const GridSpec& spec) {
    return 0.5 * spec.h * spec.h * Mat3::Identity();
}

void spline_self_check() {
    std::mt19937_64 rng(0x5eedu);
    std::uniform_real_distribution<double> pos(-10.0, 10.0);
    const GridSpec spec(1.0);

    for (int trial = 0; trial < 100; ++trial) {
        const Vec3 x(pos(rng), pos(rng), pos(rng));
        double sum = 0.0;
        Vec3 first = Vec3::Zero();
        for (const auto& [idx, w] : weights_3d(x, spec)) {
            sum += w;
            first += w * spec.node_position(idx);
        }
        if (std::abs(sum - 1.0) > 1e-14 || (first - x).norm() > 1e-13) {
            throw NumericalFailure("spline self-check failed: basis violates "
                                   "partition of unity or linear completeness");
        }
    }
}

}  // namespace augury
