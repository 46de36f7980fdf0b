#include "augury/verification.hpp"

#include "augury/contact.hpp"
#include "augury/spline_grid.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace augury {

namespace {

double linear_scale(const ParticleSet& ps) {
    double scale = 0.0;
    for (std::size_t p = 0; p < ps.size(); ++p) {
        scale += ps.mass[p] * ps.gv[p].v.norm();
    }
    return std::max(scale, 1e-30);
}

double angular_scale(const ParticleSet& ps) {
    double scale = 0.0;
    for (std::size_t p = 0; p < ps.size(); ++p) {
        scale += ps.mass[p] * (ps.x[p].cross(ps.gv[p].v).norm() + axl(ps.gv[p].B).norm());
    }
    return std::max(scale, 1e-30);
}

}  // namespace

ParticleSet random_cloud(std::uint64_t seed, int count, double box) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.0, box);
    std::uniform_real_distribution<double> mass(0.5, 2.0);
    std::uniform_real_distribution<double> val(-1.0, 1.0);

    ParticleSet ps;
    for (int p = 0; p < count; ++p) {
        ps.x.emplace_back(pos(rng), pos(rng), pos(rng));
        ps.mass.push_back(mass(rng));
        GeneralizedVelocity gv;
        gv.v = Vec3(val(rng), val(rng), val(rng));
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                gv.B(r, c) = val(rng);
            }
        }
        ps.gv.push_back(gv);
    }
    return ps;
}

BasisCheck check_spline_basis(int n_points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(-10.0, 10.0);
    const GridSpec spec(1.0);
    const Mat3 expected = d_tensor(spec);

    BasisCheck out{0.0, 0.0, 0.0};
    for (int trial = 0; trial < n_points; ++trial) {
        const Vec3 x(pos(rng), pos(rng), pos(rng));
        double sum = 0.0;
        Vec3 first = Vec3::Zero();
        Mat3 second = Mat3::Zero();
        for (const auto& [idx, w] : weights_3d(x, spec)) {
            const Vec3 node = spec.node_position(idx);
            sum += w;
            first += w * node;
            const Vec3 r = node - x;
            second += w * r * r.transpose();
        }
        out.pou_error = std::max(out.pou_error, std::abs(sum - 1.0));
        out.completeness_error = std::max(out.completeness_error, (first - x).norm());
        out.second_moment_error =
            std::max(out.second_moment_error, (second - expected).cwiseAbs().maxCoeff());
    }
    return out;
}

double check_affine_preservation(int n_fields, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    const GridSpec spec(1.0);
    const Mat3 d = d_tensor(spec);

    double worst = 0.0;
    for (int trial = 0; trial < n_fields; ++trial) {
        ParticleSet ps = random_cloud(seed * 1000 + trial, 24);
        const Vec3 v0(val(rng), val(rng), val(rng));
        Mat3 L;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                L(r, c) = val(rng);
            }
        }
        double scale = 0.0;
        for (std::size_t p = 0; p < ps.size(); ++p) {
            ps.gv[p].v = v0 + L * ps.x[p];
            ps.gv[p].B = L * d;
            scale = std::max(scale, ps.gv[p].v.norm() + ps.gv[p].B.norm());
        }

        const auto mapped = apply_H(ps, spec, TransferMode::APIC);
        for (std::size_t p = 0; p < ps.size(); ++p) {
            const double err =
                (mapped[p].v - ps.gv[p].v).norm() + (mapped[p].B - ps.gv[p].B).norm();
            worst = std::max(worst, err / scale);
        }
    }
    return worst;
}

MomentumCheck check_momentum_free_g(int n_fields, std::uint64_t seed) {
    const GridSpec spec(1.0);
    MomentumCheck out{0.0, 0.0, 0.0};

    for (int trial = 0; trial < n_fields; ++trial) {
        const ParticleSet ps = random_cloud(seed + trial, 32);

        for (TransferMode mode : {TransferMode::PIC, TransferMode::APIC}) {
            const auto delta = apply_G(ps, spec, mode);
            Vec3 net = Vec3::Zero();
            for (std::size_t p = 0; p < ps.size(); ++p) {
                net += ps.mass[p] * delta[p].v;
            }
            const double rel = net.norm() / linear_scale(ps);
            if (mode == TransferMode::PIC) {
                out.linear_pic = std::max(out.linear_pic, rel);
            } else {
                out.linear_apic = std::max(out.linear_apic, rel);

                Vec3 net_angular = Vec3::Zero();
                for (std::size_t p = 0; p < ps.size(); ++p) {
                    net_angular +=
                        ps.mass[p] * (ps.x[p].cross(delta[p].v) + axl(delta[p].B));
                }
                out.angular_apic =
                    std::max(out.angular_apic, net_angular.norm() / angular_scale(ps));
            }
        }
    }
    return out;
}

std::string check_contact_laws() {
    const Vec3 n(0.0, 0.0, 1.0);

    {
        const auto [dv, dB] =
            undesirable_delta(Vec3(0, 0, 0.4), Mat3::Zero(), n, ContactLaw::Separation, 0.0);
        if ((dv - Vec3(0, 0, 0.4)).norm() > 1e-15) {
            return "separating pull not flagged undesirable";
        }
    }
    {
        const auto [dv, dB] =
            undesirable_delta(Vec3(0, 0, -1), Mat3::Zero(), n, ContactLaw::Friction, 0.5);
        if (dv.norm() > 1e-15) {
            return "pure approach flagged undesirable";
        }
    }
    {
        const auto [dv, dB] =
            undesirable_delta(Vec3(0.3, 0, -1), Mat3::Zero(), n, ContactLaw::Friction, 0.2);
        if ((dv - Vec3(0.1, 0, 0)).norm() > 1e-15) {
            return "Coulomb cone clip incorrect";
        }
    }
    {
        const auto [dv, dB] =
            undesirable_delta(Vec3(0.3, 0, -1), Mat3::Zero(), n, ContactLaw::Friction, 10.0);
        if (dv.norm() > 1e-15) {
            return "full stick inside the cone incorrect";
        }
    }
    return "";
}

}  // namespace augury
