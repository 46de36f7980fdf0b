#pragma once

#include "augury/fem.hpp"
#include "augury/spline_grid.hpp"
#include "augury/transfers.hpp"
#include "augury/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace augury {

enum class ContactLaw { Sticky, Separation, Friction };

struct ContactConfig {
    double tau;
    TransferMode mode = TransferMode::APIC;
    ContactLaw law = ContactLaw::Friction;
    double mu = 0.0;
    int iterations = 1;

    void validate() const;
};

// Unit outward normals for the boundary particles, parallel to
// mesh.boundary_nodes.
struct SurfaceNormals {
    std::vector<Vec3> n;
};

// Area-weighted average of adjacent outward face normals, in the current
// configuration.
SurfaceNormals compute_normals(const TetMesh& mesh, std::span<const Vec3> coords);

// V + tau A componentwise on v; B passes through (its mechanical rate is zero).
std::vector<GeneralizedVelocity> predict_velocity(
    std::span<const GeneralizedVelocity> velocity,
    std::span<const GeneralizedAcceleration> accel, double tau);

// (1/tau)(H - I) applied to the particles' generalized velocities.
std::vector<GeneralizedAcceleration> base_correction(const ParticleSet& particles, double tau,
                                                     const GridSpec& spec, TransferMode mode);

// Splits a proposed velocity change into its undesirable part per the
// separation or Coulomb friction rule.
std::pair<Vec3, Mat3> undesirable_delta(const Vec3& dv, const Mat3& dB, const Vec3& normal,
                                        ContactLaw law, double mu);

// V-hat_N = V + G V + sum_m G W_m with W_m the undesirable deltas; the input
// particle set carries the predicted velocities. Net momentum matches the
// input exactly.
std::vector<GeneralizedVelocity> augury_series(const ParticleSet& particles,
                                               const SurfaceNormals& normals,
                                               const ContactConfig& config,
                                               const GridSpec& spec);

// Full augury acceleration: (1/tau)(V-hat_N - V-bar) with
// V-bar = predict_velocity(V, A_mech, tau). The particle set carries V.
std::vector<GeneralizedAcceleration> full_correction(
    const ParticleSet& particles, std::span<const GeneralizedAcceleration> mech_accel,
    const SurfaceNormals& normals, const ContactConfig& config, const GridSpec& spec);

}  // namespace augury
