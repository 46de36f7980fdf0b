#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "augury/fem.hpp"
#include "augury/scenarios.hpp"

#include <random>

using namespace augury;

namespace {

TetMesh single_tet(double z_scale = 1.0) {
    TetMesh mesh;
    mesh.ref_coords = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, z_scale)};
    mesh.tets = {{0, 1, 2, 3}};
    mesh.body_id = {0, 0, 0, 0};
    mesh.extract_boundary();
    return mesh;
}

Mat3 random_deformation(std::uint64_t seed, double spread) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-spread, spread);
    Mat3 F = Mat3::Identity();
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            F(r, c) += val(rng);
        }
    }
    if (F.determinant() <= 0.1) {
        F = Mat3::Identity() + 0.1 * F;  // keep well away from inversion
    }
    return F;
}

Mat3 rotation(double angle, const Vec3& axis) {
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

}  // namespace

TEST_CASE("material validation and derived moduli") {
    CHECK_THROWS_AS(Material(-1.0, 1e8, 0.3), InvalidInput);
    CHECK_THROWS_AS(Material(1.0, 0.0, 0.3), InvalidInput);
    CHECK_THROWS_AS(Material(1.0, 1e8, 0.5), InvalidInput);

    const Material m(2700.0, 1e8, 0.3);
    CHECK(m.lambda() == doctest::Approx(1e8 * 0.3 / (1.3 * 0.4)).epsilon(1e-14));
    CHECK(m.shear() == doctest::Approx(1e8 / 2.6).epsilon(1e-14));
}

TEST_CASE("lumped mass splits element mass equally") {
    // Tet with reference volume 1 (z edge scaled by 6) and rho = 4.
    const TetMesh mesh = single_tet(6.0);
    const Material mat(4.0, 1e6, 0.3);
    const auto m = lumped_mass(mesh, std::vector<Material>{mat});
    for (double v : m) {
        CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("block mass equals density times volume, refinement independent") {
    const Material mat(2700.0, 1e8, 0.3);
    double totals[2];
    int idx = 0;
    for (double h : {1.0, 0.5}) {
        const TetMesh block = build_block_mesh(Vec3(3, 3, 3), h);
        const auto m = lumped_mass(block, std::vector<Material>{mat});
        double total = 0.0;
        for (double v : m) total += v;
        totals[idx++] = total;
        CHECK(total == doctest::Approx(72900.0).epsilon(1e-9));
    }
    CHECK(totals[0] == doctest::Approx(totals[1]).epsilon(1e-12));
}

TEST_CASE("neo-hookean stress against the energy gradient") {
    const double lambda = 2.3e5, mu = 1.1e5;

    SUBCASE("stress-free reference") {
        CHECK(neo_hookean_stress(Mat3::Identity(), lambda, mu).cwiseAbs().maxCoeff() == 0.0);
        CHECK(neo_hookean_energy(Mat3::Identity(), lambda, mu) == 0.0);
    }

    SUBCASE("pure rotation carries no energy or stress") {
        const Mat3 R = rotation(0.83, Vec3(1, 2, -1));
        CHECK(std::abs(neo_hookean_energy(R, lambda, mu)) <= 1e-12 * mu);
        CHECK(neo_hookean_stress(R, lambda, mu).cwiseAbs().maxCoeff() <= 1e-12 * mu);
    }

    SUBCASE("P equals the centered finite difference of W") {
        for (int trial = 0; trial < 10; ++trial) {
            const Mat3 F = random_deformation(100 + trial, 0.3);
            const Mat3 P = neo_hookean_stress(F, lambda, mu);
            const double step = 1e-6 * F.norm();
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) {
                    Mat3 Fp = F, Fm = F;
                    Fp(r, c) += step;
                    Fm(r, c) -= step;
                    const double fd = (neo_hookean_energy(Fp, lambda, mu) -
                                       neo_hookean_energy(Fm, lambda, mu)) /
                                      (2.0 * step);
                    CHECK(P(r, c) == doctest::Approx(fd).epsilon(1e-6));
                }
            }
        }
    }

    SUBCASE("inverted element rejected") {
        Mat3 F = Mat3::Identity();
        F(0, 0) = -1.0;
        CHECK_THROWS_AS(neo_hookean_stress(F, lambda, mu), NumericalFailure);
    }
}

TEST_CASE("internal forces") {
    const Material mat(1000.0, 1e7, 0.3);
    const std::vector<Material> mats{mat};

    SUBCASE("undeformed mesh carries none") {
        const TetMesh block = build_block_mesh(Vec3(2, 1, 1), 0.5);
        const auto f = internal_force(block, mats, block.ref_coords);
        for (const Vec3& v : f) {
            CHECK(v.norm() == 0.0);
        }
    }

    SUBCASE("rigid rotation carries none") {
        const TetMesh block = build_block_mesh(Vec3(1, 1, 1), 0.5);
        std::vector<Vec3> x = block.ref_coords;
        const Mat3 R = rotation(0.37, Vec3(0.2, 1.0, -0.4));
        for (Vec3& p : x) {
            p = R * p;
        }
        const auto f = internal_force(block, mats, x);
        const double scale = mat.youngs * 0.25;  // modulus x element face scale
        for (const Vec3& v : f) {
            CHECK(v.norm() <= 1e-10 * scale);
        }
    }

    SUBCASE("single element uniaxial strain matches traction times area") {
        const TetMesh mesh = single_tet();
        const double eps = 1e-4;
        std::vector<Vec3> x = mesh.ref_coords;
        for (Vec3& p : x) {
            p.x() *= 1.0 + eps;
        }
        const auto f = internal_force(mesh, mats, x);
        // Node 1 holds the x-face; its constrained-modulus traction acts on
        // the opposite face's area / 3.
        const double traction = (mat.lambda() + 2.0 * mat.shear()) * eps;
        const double expected = traction * 0.5 / 3.0;
        CHECK(f[1].x() == doctest::Approx(expected).epsilon(0.05));
    }

    SUBCASE("self-equilibrium and zero torque on a deformed block") {
        const TetMesh block = build_block_mesh(Vec3(1, 1, 1), 0.5);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> wiggle(-0.05, 0.05);
        std::vector<Vec3> x = block.ref_coords;
        for (Vec3& p : x) {
            p += Vec3(wiggle(rng), wiggle(rng), wiggle(rng));
        }
        const auto f = internal_force(block, mats, x);
        Vec3 net = Vec3::Zero(), torque = Vec3::Zero();
        double scale = 0.0;
        for (std::size_t n = 0; n < f.size(); ++n) {
            net += f[n];
            torque += x[n].cross(f[n]);
            scale += f[n].norm();
        }
        CHECK(net.norm() <= 1e-10 * scale);
        CHECK(torque.norm() <= 1e-10 * scale);
    }

    SUBCASE("force is the exact gradient of the strain energy") {
        const TetMesh mesh = single_tet();
        std::vector<Vec3> x = mesh.ref_coords;
        x[1] += Vec3(0.02, -0.01, 0.03);
        x[3] += Vec3(-0.01, 0.02, 0.01);
        const auto f = internal_force(mesh, mats, x);

        const double step = 1e-7;
        for (int n = 0; n < 4; ++n) {
            for (int c = 0; c < 3; ++c) {
                std::vector<Vec3> xp = x, xm = x;
                xp[n][c] += step;
                xm[n][c] -= step;
                const double fd =
                    (strain_energy(mesh, mats, xp) - strain_energy(mesh, mats, xm)) /
                    (2.0 * step);
                CHECK(f[n][c] == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }

    SUBCASE("inversion error names the element") {
        const TetMesh mesh = single_tet();
        std::vector<Vec3> x = mesh.ref_coords;
        x[3].z() = -2.0;
        CHECK_THROWS_WITH_AS(internal_force(mesh, mats, x).size(),
                             "element inversion in element 0", NumericalFailure);
    }
}

TEST_CASE("strain energy values") {
    const Material mat(1000.0, 1e7, 0.3);
    const std::vector<Material> mats{mat};
    const TetMesh block = build_block_mesh(Vec3(1, 1, 1), 0.5);

    SUBCASE("reference and rotation are zero") {
        CHECK(strain_energy(block, mats, block.ref_coords) == 0.0);
        std::vector<Vec3> x = block.ref_coords;
        const Mat3 R = rotation(1.1, Vec3(1, 0, 1));
        for (Vec3& p : x) {
            p = R * p;
        }
        CHECK(std::abs(strain_energy(block, mats, x)) <= 1e-10 * mat.youngs);
    }

    SUBCASE("small uniaxial stress state stores E eps^2 / 2 per volume") {
        const double eps = 1e-4;
        std::vector<Vec3> x = block.ref_coords;
        for (Vec3& p : x) {
            p.x() *= 1.0 + eps;
            p.y() *= 1.0 - mat.poisson * eps;
            p.z() *= 1.0 - mat.poisson * eps;
        }
        const double expected = 0.5 * mat.youngs * eps * eps;  // volume is 1
        CHECK(strain_energy(block, mats, x) == doctest::Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("mechanical acceleration") {
    const Material mat(1000.0, 1e7, 0.3);
    const std::vector<Material> mats{mat};
    const TetMesh block = build_block_mesh(Vec3(1, 1, 1), 0.5);
    const ElementCache cache = build_element_cache(block);
    const auto mass = lumped_mass(block, mats);
    const Vec3 g(0, 0, -9.81);

    SUBCASE("free fall at zero strain") {
        std::vector<std::uint8_t> fixed(block.ref_coords.size(), 0);
        const auto a =
            mechanical_acceleration(block, cache, mats, block.ref_coords, mass, g, fixed);
        for (const Vec3& v : a) {
            CHECK((v - g).norm() == 0.0);
        }
    }

    SUBCASE("fixed nodes get zero; the rest balance external forces") {
        std::vector<std::uint8_t> fixed(block.ref_coords.size(), 0);
        fixed[0] = 1;
        std::vector<Vec3> x = block.ref_coords;
        x[5] += Vec3(0.01, 0.0, -0.01);
        const auto a = mechanical_acceleration(block, cache, mats, x, mass, g, fixed);
        CHECK(a[0].norm() == 0.0);

        // Newton's third law: sum m a = sum f_ext over free nodes when none
        // are fixed.
        std::vector<std::uint8_t> none(block.ref_coords.size(), 0);
        const auto a_free = mechanical_acceleration(block, cache, mats, x, mass, g, none);
        Vec3 momentum_rate = Vec3::Zero(), weight = Vec3::Zero();
        for (std::size_t n = 0; n < a_free.size(); ++n) {
            momentum_rate += mass[n] * a_free[n];
            weight += mass[n] * g;
        }
        CHECK((momentum_rate - weight).norm() <= 1e-10 * weight.norm());
    }
}
