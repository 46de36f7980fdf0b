#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "augury/diagnostics.hpp"
#include "augury/scenarios.hpp"
#include "augury/verification.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace augury;

namespace {

SimState two_cube_state(double separation) {
    const TetMesh a = build_block_mesh(Vec3(1, 1, 1), 0.5);
    TetMesh b = build_block_mesh(Vec3(1, 1, 1), 0.5);
    b.apply_transform(Mat3::Identity(), Vec3::Zero(), Vec3(1.0 + separation, 0, 0));
    const TetMesh parts[] = {a, b};

    SimSetup setup;
    setup.mesh = TetMesh::merge(parts);
    setup.materials = {Material(1000.0, 1e7, 0.3), Material(1000.0, 1e7, 0.3)};
    setup.initial_velocity.assign(setup.mesh.ref_coords.size(), Vec3::Zero());
    setup.initial_velocity_gradient = {Mat3::Zero(), Mat3::Zero()};
    setup.fixed.assign(setup.mesh.ref_coords.size(), 0);
    return initialize(setup, StepConfig{1e-3, GridSpec(1.0), std::nullopt});
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("axl extracts the dual vector") {
    Mat3 B = Mat3::Zero();
    const double s = 0.7;
    B(1, 0) = s;
    B(0, 1) = -s;
    CHECK((axl(B) - Vec3(0, 0, 2 * s)).norm() == 0.0);
}

TEST_CASE("momenta of hand-built states") {
    SimState state = two_cube_state(1.0);

    SUBCASE("linear momentum sums m v") {
        for (auto& v : state.v) v.setZero();
        state.v[0] = Vec3(1, 0, 0);
        const Vec3 p = linear_momentum(state);
        CHECK((p - state.mass[0] * Vec3(1, 0, 0)).norm() == 0.0);
    }

    SUBCASE("equal and opposite velocities cancel") {
        for (std::size_t n = 0; n < state.v.size(); ++n) {
            state.v[n] = state.mesh.body_id[n] == 0 ? Vec3(2, 1, -1) : Vec3(-2, -1, 1);
        }
        CHECK(linear_momentum(state).norm() <= 1e-12 * state.mass[0] * 4);
    }

    SUBCASE("circular motion carries unit angular momentum") {
        for (auto& v : state.v) v.setZero();
        const int n0 = state.mesh.boundary_nodes[0];
        state.x[n0] = Vec3(1, 0, 0);
        state.v[n0] = Vec3(0, 1, 0) / state.mass[n0];
        const Vec3 L = angular_momentum(state);
        CHECK((L - Vec3(0, 0, 1)).norm() <= 1e-12);
    }

    SUBCASE("skew B contributes through axl") {
        for (auto& v : state.v) v.setZero();
        const int n0 = state.mesh.boundary_nodes[0];
        Mat3 B = Mat3::Zero();
        B(1, 0) = 0.5;
        B(0, 1) = -0.5;
        state.B[n0] = B;
        const Vec3 L = angular_momentum(state);
        CHECK((L - state.mass[n0] * Vec3(0, 0, 1.0)).norm() <= 1e-12 * state.mass[n0]);
    }
}

TEST_CASE("generalized angular momentum is invariant under H (apic)") {
    const GridSpec spec(1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const ParticleSet ps = random_cloud(7100 + trial, 22);
        const auto mapped = apply_H(ps, spec, TransferMode::APIC);

        Vec3 before = Vec3::Zero(), after = Vec3::Zero();
        double scale = 0.0;
        for (std::size_t p = 0; p < ps.size(); ++p) {
            before += ps.mass[p] * (ps.x[p].cross(ps.gv[p].v) + axl(ps.gv[p].B));
            after += ps.mass[p] * (ps.x[p].cross(mapped[p].v) + axl(mapped[p].B));
            scale += ps.mass[p] * (ps.x[p].norm() * ps.gv[p].v.norm() + 1.0);
        }
        CHECK((after - before).norm() <= 1e-12 * scale);

        const auto pic = apply_H(ps, spec, TransferMode::PIC);
        Vec3 lin_before = Vec3::Zero(), lin_after = Vec3::Zero();
        for (std::size_t p = 0; p < ps.size(); ++p) {
            lin_before += ps.mass[p] * ps.gv[p].v;
            lin_after += ps.mass[p] * pic[p].v;
        }
        CHECK((lin_after - lin_before).norm() <= 1e-12 * scale);
    }
}

TEST_CASE("energy triple of a stationary unstrained body") {
    SimState state = two_cube_state(1.0);
    state.gravity = Vec3(0, 0, -10.0);
    const auto [ke, se, pe] = total_energy(state);
    CHECK(ke == 0.0);
    CHECK(se == 0.0);
    // Two unit cubes of mass 1000 with centers at z = 1/2.
    CHECK(pe == doctest::Approx(2 * 1000.0 * 10.0 * 0.5).epsilon(1e-12));
}

TEST_CASE("min gap: separated, touching, overlapping") {
    SUBCASE("half-unit separation") {
        const SimState state = two_cube_state(0.5);
        CHECK(min_gap(state, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(min_gap(state, 1, 0) == doctest::Approx(min_gap(state, 0, 1)).epsilon(1e-12));
    }
    SUBCASE("touching faces") {
        const SimState state = two_cube_state(0.0);
        CHECK(std::abs(min_gap(state, 0, 1)) <= 1e-14);
    }
    SUBCASE("tenth-unit overlap") {
        const SimState state = two_cube_state(-0.1);
        CHECK(min_gap(state, 0, 1) == doctest::Approx(-0.1).epsilon(1e-10));
    }
    SUBCASE("same body rejected") {
        const SimState state = two_cube_state(0.5);
        CHECK_THROWS_AS(min_gap(state, 0, 0), InvalidInput);
    }
}

TEST_CASE("measure populates a consistent row") {
    SimState state = two_cube_state(0.5);
    state.gravity = Vec3(0, 0, -10.0);
    const DiagnosticsRow row = measure(state);
    CHECK(row.total == row.kinetic + row.strain + row.potential);
    CHECK(row.min_gap == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(row.time == 0.0);
}

TEST_CASE("csv output is byte-stable with 17 significant digits") {
    DiagnosticsRow row;
    row.time = 1.0 / 3.0;
    row.linear = Vec3(1e-17, -72900.0 * 15.0, 0.125);
    row.angular = Vec3(4.0 * std::atan(1.0), 2.0, -3.0);
    row.kinetic = 1.0575e8;
    row.strain = 0.0;
    row.potential = -12.5;
    row.total = row.kinetic + row.strain + row.potential;
    row.min_gap = -0.0625;

    const char* path_a = "diag_test_a.csv";
    const char* path_b = "diag_test_b.csv";
    {
        DiagnosticsCsv csv(path_a);
        csv.write(row);
        DiagnosticsCsv other(path_b);
        other.write(row);
    }
    const std::string a = slurp(path_a);
    CHECK(a == slurp(path_b));
    CHECK(a.find("time,px,py,pz,Lx,Ly,Lz,KE,SE,PE,E_total,min_gap\n") == 0);
    CHECK(a.find("0.33333333333333331") != std::string::npos);  // 17 digits of 1/3
    std::remove(path_a);
    std::remove(path_b);
}
