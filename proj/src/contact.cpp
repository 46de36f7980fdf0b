#include "augury/contact.hpp"

#include <cmath>
#include <string>

namespace augury {

void ContactConfig::validate() const {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw InvalidInput("ContactConfig: tau must be positive");
    }
    if (mu < 0.0 || !std::isfinite(mu)) {
        throw InvalidInput("ContactConfig: mu must be non-negative");
    }
    if (iterations < 0) {
        throw InvalidInput("ContactConfig: iterations must be non-negative");
    }
    if ((law == ContactLaw::Sticky) != (iterations == 0)) {
        throw InvalidInput("ContactConfig: sticky law requires exactly zero iterations "
                           "and separating/frictional laws at least one");
    }
}

SurfaceNormals compute_normals(const TetMesh& mesh, std::span<const Vec3> coords) {
    std::vector<Vec3> sums(mesh.num_nodes(), Vec3::Zero());
    for (std::size_t f = 0; f < mesh.boundary_faces.size(); ++f) {
        const auto& face = mesh.boundary_faces[f];
        const Vec3 area_normal = 0.5 * (coords[face[1]] - coords[face[0]])
                                           .cross(coords[face[2]] - coords[face[0]]);
        if (area_normal.norm() == 0.0) {
            throw NumericalFailure("compute_normals: degenerate boundary face " +
                                   std::to_string(f));
        }
        for (int n : face) {
            sums[n] += area_normal;
        }
    }

    SurfaceNormals out;
    out.n.reserve(mesh.boundary_nodes.size());
    for (int n : mesh.boundary_nodes) {
        const double len = sums[n].norm();
        if (len == 0.0) {
            throw NumericalFailure("compute_normals: zero resultant normal at node " +
                                   std::to_string(n));
        }
        out.n.push_back(sums[n] / len);
    }
    return out;
}

std::vector<GeneralizedVelocity> predict_velocity(
    std::span<const GeneralizedVelocity> velocity,
    std::span<const GeneralizedAcceleration> accel, double tau) {
    if (velocity.size() != accel.size()) {
        throw InvalidInput("predict_velocity: mismatched lengths");
    }
    std::vector<GeneralizedVelocity> out(velocity.begin(), velocity.end());
    for (std::size_t p = 0; p < out.size(); ++p) {
        out[p].v += tau * accel[p].v;
        out[p].B += tau * accel[p].B;
    }
    return out;
}

std::vector<GeneralizedAcceleration> base_correction(const ParticleSet& particles, double tau,
                                                     const GridSpec& spec,
                                                     TransferMode mode) {
    if (!(tau > 0.0)) {
        throw InvalidInput("base_correction: tau must be positive");
    }
    std::vector<GeneralizedAcceleration> out = apply_G(particles, spec, mode);
    for (auto& a : out) {
        a.v /= tau;
        a.B /= tau;
    }
    return out;
}

std::pair<Vec3, Mat3> undesirable_delta(const Vec3& dv, const Mat3& dB, const Vec3& normal,
                                        ContactLaw law, double mu) {
    if (std::abs(normal.norm() - 1.0) > 1e-12) {
        throw InvalidInput("undesirable_delta: normal must be unit length");
    }
    const double vn = dv.dot(normal);

    switch (law) {
        case ContactLaw::Sticky:
            return {Vec3::Zero(), Mat3::Zero()};

        case ContactLaw::Separation:
            if (vn > 0.0) {
                return {dv, dB};
            }
            return {Vec3::Zero(), Mat3::Zero()};

        case ContactLaw::Friction: {
            if (vn > 0.0) {
                return {dv, dB};
            }
            // Approaching: keep the normal change plus the Coulomb-cone share
            // of the tangential change; the rest is undesirable. The entire
            // scaled-velocity-gradient change is treated as undesirable.
            const Vec3 dv_t = dv - vn * normal;
            const double t_norm = dv_t.norm();
            Vec3 undesirable = dv_t;
            if (t_norm >= 1e-14 * dv.norm() && t_norm > 0.0) {
                const double s = std::min(t_norm, -mu * vn);
                undesirable -= s * (dv_t / t_norm);
            }
            return {undesirable, dB};
        }
    }
    throw SimError("undesirable_delta: unknown contact law");
}

std::vector<GeneralizedVelocity> augury_series(const ParticleSet& particles,
                                               const SurfaceNormals& normals,
                                               const ContactConfig& config,
                                               const GridSpec& spec) {
    config.validate();
    if (normals.n.size() != particles.size()) {
        throw InvalidInput("augury_series: normals do not match particle set");
    }

    // V-hat_0 = V + G V = H V.
    std::vector<GeneralizedVelocity> v_hat = apply_H(particles, spec, config.mode);

    std::vector<GeneralizedVelocity> undesired(particles.size());
    for (int m = 0; m < config.iterations; ++m) {
        for (std::size_t p = 0; p < particles.size(); ++p) {
            const Vec3 dv = v_hat[p].v - particles.gv[p].v;
            const Mat3 dB = v_hat[p].B - particles.gv[p].B;
            auto [uv, uB] = undesirable_delta(dv, dB, normals.n[p], config.law, config.mu);
            undesired[p] = {uv, uB};
        }
        const std::vector<GeneralizedVelocity> correction =
            apply_G(particles, undesired, spec, config.mode);
        for (std::size_t p = 0; p < particles.size(); ++p) {
            v_hat[p].v += correction[p].v;
            v_hat[p].B += correction[p].B;
        }
    }
    return v_hat;
}

std::vector<GeneralizedAcceleration> full_correction(
    const ParticleSet& particles, std::span<const GeneralizedAcceleration> mech_accel,
    const SurfaceNormals& normals, const ContactConfig& config, const GridSpec& spec) {
    config.validate();

    ParticleSet predicted = particles;
    predicted.gv = predict_velocity(particles.gv, mech_accel, config.tau);

    const std::vector<GeneralizedVelocity> v_hat =
        augury_series(predicted, normals, config, spec);

    std::vector<GeneralizedAcceleration> out(particles.size());
    for (std::size_t p = 0; p < particles.size(); ++p) {
        out[p].v = (v_hat[p].v - predicted.gv[p].v) / config.tau;
        out[p].B = (v_hat[p].B - predicted.gv[p].B) / config.tau;
    }
    return out;
}

}  // namespace augury
