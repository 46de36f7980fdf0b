#include "augury/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace augury {

namespace {

int cell_count(double extent, double h, const char* label) {
    const double cells = extent / h;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) <= 1e-9 * std::max(1.0, cells) && rounded >= 1.0) {
        return static_cast<int>(rounded);
    }
    const int up = std::max(1, static_cast<int>(std::ceil(cells - 1e-9)));
    std::fprintf(stderr,
                 "warning: %s extent %g is not a multiple of h=%g; using %d cells "
                 "(spacing %g)\n",
                 label, extent, h, up, extent / up);
    return up;
}

Mat3 rotation_about_x(double angle) {
    Mat3 r;
    const double c = std::cos(angle), s = std::sin(angle);
    r << 1, 0, 0, 0, c, -s, 0, s, c;
    return r;
}

Mat3 rotation_about_y(double angle) {
    Mat3 r;
    const double c = std::cos(angle), s = std::sin(angle);
    r << c, 0, s, 0, 1, 0, -s, 0, c;
    return r;
}

}  // namespace

TetMesh build_block_mesh(const Vec3& extent, double h) {
    if (!(h > 0.0)) {
        throw InvalidInput("build_block_mesh: h must be positive");
    }
    const int nx = cell_count(extent[0], h, "x");
    const int ny = cell_count(extent[1], h, "y");
    const int nz = cell_count(extent[2], h, "z");
    const double dx = extent[0] / nx, dy = extent[1] / ny, dz = extent[2] / nz;

    TetMesh mesh;
    mesh.ref_coords.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1) * (nz + 1));
    const auto node = [&](int i, int j, int k) {
        return (i * (ny + 1) + j) * (nz + 1) + k;
    };
    for (int i = 0; i <= nx; ++i) {
        for (int j = 0; j <= ny; ++j) {
            for (int k = 0; k <= nz; ++k) {
                mesh.ref_coords.emplace_back(i * dx, j * dy, k * dz);
            }
        }
    }

    // Six positively-oriented tets per cell, all sharing the low-high cell
    // diagonal so faces between neighboring cells match.
    static constexpr int kTemplate[6][4] = {{0, 1, 3, 7}, {0, 5, 1, 7}, {0, 3, 2, 7},
                                            {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 6, 4, 7}};
    mesh.tets.reserve(static_cast<std::size_t>(nx) * ny * nz * 6);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            for (int k = 0; k < nz; ++k) {
                int corner[8];
                for (int b = 0; b < 8; ++b) {
                    corner[b] = node(i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1));
                }
                for (const auto& t : kTemplate) {
                    mesh.tets.push_back(
                        {corner[t[0]], corner[t[1]], corner[t[2]], corner[t[3]]});
                }
            }
        }
    }

    mesh.body_id.assign(mesh.ref_coords.size(), 0);
    mesh.extract_boundary();
    mesh.validate();
    return mesh;
}

ScenarioSetup two_block_impact(int k) {
    if (k > 0 || k < -4) {
        throw InvalidInput("two_block_impact: k must be in {0,-1,-2,-3,-4}");
    }
    const double h = std::pow(2.0, k);
    const Vec3 extent(3.0, 3.0, 3.0);

    TetMesh block1 = build_block_mesh(extent, h);
    block1.apply_transform(Mat3::Identity(), Vec3::Zero(), Vec3(-1.5, -1.5, -1.5));

    TetMesh block2 = build_block_mesh(extent, h);
    const Vec3 center2(0.0, 3.8, 0.0);
    block2.apply_transform(Mat3::Identity(), Vec3::Zero(), Vec3(-1.5, 2.3, -1.5));
    block2.apply_transform(rotation_about_x(22.0 * M_PI / 180.0), center2, Vec3::Zero());

    const TetMesh parts[] = {block1, block2};
    ScenarioSetup setup;
    setup.name = "two-block";
    setup.sim.mesh = TetMesh::merge(parts);
    setup.sim.materials = {Material(2700.0, 1e8, 0.3), Material(2700.0, 1e8, 0.3)};
    setup.sim.initial_velocity.assign(setup.sim.mesh.ref_coords.size(), Vec3::Zero());
    for (int n = 0; n < setup.sim.mesh.num_nodes(); ++n) {
        setup.sim.initial_velocity[n] =
            setup.sim.mesh.body_id[n] == 0 ? Vec3(0.0, 35.0, 0.0) : Vec3(-15.0, -35.0, -15.0);
    }
    setup.sim.initial_velocity_gradient = {Mat3::Zero(), Mat3::Zero()};
    setup.sim.fixed.assign(setup.sim.mesh.ref_coords.size(), 0);
    setup.sim.gravity = Vec3::Zero();

    setup.mesh_h = h;
    setup.grid_spacing = 2.0 * h;
    setup.dt = 1e-4 * h;
    setup.tau = setup.dt;
    setup.default_end_time = 0.05;
    return setup;
}

ScenarioSetup ramp_scenario(double h, double mu) {
    if (std::abs(h - 0.33) < 1e-12) {
        h = 1.0 / 3.0;  // meshes the unit block exactly
    }
    const bool listed = std::abs(h - 0.25) < 1e-12 || std::abs(h - 1.0 / 3.0) < 1e-12 ||
                        std::abs(h - 0.5) < 1e-12 || std::abs(h - 1.0) < 1e-12;
    if (!listed) {
        std::fprintf(stderr, "warning: ramp mesh size %g is outside {0.25, 0.33, 0.5, 1.0}\n",
                     h);
    }
    if (mu < 0.0) {
        throw InvalidInput("ramp_scenario: mu must be non-negative");
    }

    const double theta = kRampAngleRadians;

    // Ramp top surface at z = 0, block resting on it near the upper end.
    TetMesh ramp = build_block_mesh(Vec3(4.0, 1.5, 0.25), h);
    ramp.apply_transform(Mat3::Identity(), Vec3::Zero(), Vec3(0.0, 0.0, -0.25));
    TetMesh block = build_block_mesh(Vec3(1.0, 1.0, 1.0), h);
    block.apply_transform(Mat3::Identity(), Vec3::Zero(), Vec3(0.25, 0.25, 0.0));

    // Fix the ramp bottom before tilting so the flags follow the nodes.
    std::vector<std::uint8_t> ramp_fixed(ramp.ref_coords.size(), 0);
    for (std::size_t n = 0; n < ramp.ref_coords.size(); ++n) {
        if (std::abs(ramp.ref_coords[n][2] + 0.25) < 1e-12) {
            ramp_fixed[n] = 1;
        }
    }

    // Tilt the whole assembly; +x becomes the downhill direction under
    // global-vertical gravity.
    const Mat3 tilt = rotation_about_y(theta);
    ramp.apply_transform(tilt, Vec3::Zero(), Vec3::Zero());
    block.apply_transform(tilt, Vec3::Zero(), Vec3::Zero());

    const TetMesh parts[] = {ramp, block};
    ScenarioSetup setup;
    setup.name = "ramp";
    setup.sim.mesh = TetMesh::merge(parts);
    setup.sim.materials = {Material(1e6, 1e10, 0.3), Material(1e6, 1e10, 0.3)};
    setup.sim.initial_velocity.assign(setup.sim.mesh.ref_coords.size(), Vec3::Zero());
    setup.sim.initial_velocity_gradient = {Mat3::Zero(), Mat3::Zero()};
    setup.sim.fixed.assign(setup.sim.mesh.ref_coords.size(), 0);
    for (std::size_t n = 0; n < ramp_fixed.size(); ++n) {
        setup.sim.fixed[n] = ramp_fixed[n];
    }
    setup.sim.gravity = Vec3(0.0, 0.0, -100.0);

    setup.mesh_h = h;
    setup.grid_spacing = 0.5 * h;
    setup.dt = 2.5e-5 * h;
    setup.tau = setup.dt;

    // Long enough for one unit of analytic horizontal travel when sliding.
    const double g = 100.0;
    const double coef = 0.5 * g * (std::sin(theta) - mu * std::cos(theta)) * std::cos(theta);
    setup.default_end_time = coef > 0.0 ? std::sqrt(1.0 / coef) : 0.3;
    return setup;
}

double ramp_analytic(double t, double theta, double mu, double g) {
    if (t < 0.0) {
        throw InvalidInput("ramp_analytic: t must be non-negative");
    }
    if (mu >= std::tan(theta)) {
        return 0.0;  // static friction holds the block
    }
    const double along = 0.5 * g * (std::sin(theta) - mu * std::cos(theta)) * t * t;
    return along * std::cos(theta);
}

}  // namespace augury
