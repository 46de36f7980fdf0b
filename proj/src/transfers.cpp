#include "augury/transfers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace augury {

namespace {

struct Stencil3 {
    WeightStencil1D sx, sy, sz;
};

Stencil3 stencil_of(const Vec3& x, const GridSpec& spec) {
    return {weights_1d(x[0], spec, 0), weights_1d(x[1], spec, 1), weights_1d(x[2], spec, 2)};
}

double inv_d_scalar(const GridSpec& spec) {
    const double dinv = 2.0 / (spec.h * spec.h);
    if (!std::isfinite(dinv) || dinv <= 0.0) {
        throw SimError("transfers: degenerate D tensor for grid spacing " +
                       std::to_string(spec.h));
    }
    return dinv;
}

// The map-backed and dense paths below must stay bitwise identical, so both
// funnel through these two accumulation kernels.
inline void scatter_node(double& mass, Vec3& momentum, double w, double m,
                         const GeneralizedVelocity& gv, const Vec3& r, double dinv,
                         bool apic) {
    const double wm = w * m;
    mass += wm;
    if (apic) {
        momentum += wm * (gv.v + dinv * (gv.B * r));
    } else {
        momentum += wm * gv.v;
    }
}

inline void gather_node(GeneralizedVelocity& acc, double w, const Vec3& v_node,
                        const Vec3& r, bool apic) {
    acc.v += w * v_node;
    if (apic) {
        acc.B += w * v_node * r.transpose();
    }
}

constexpr double kMassEpsFactor = 1e-300;

// Dense scratch covering the particles' stencil bounding box. Used by apply_H
// to avoid hashing in the inner loops; falls back to the map path when the
// box would be too large.
class DenseScratch {
  public:
    bool prepare(const std::vector<Stencil3>& stencils) {
        int lo[3] = {std::numeric_limits<int>::max(), std::numeric_limits<int>::max(),
                     std::numeric_limits<int>::max()};
        int hi[3] = {std::numeric_limits<int>::min(), std::numeric_limits<int>::min(),
                     std::numeric_limits<int>::min()};
        for (const Stencil3& s : stencils) {
            const int base[3] = {s.sx.base, s.sy.base, s.sz.base};
            for (int a = 0; a < 3; ++a) {
                lo[a] = std::min(lo[a], base[a] - 1);
                hi[a] = std::max(hi[a], base[a] + 2);
            }
        }
        std::int64_t volume = 1;
        for (int a = 0; a < 3; ++a) {
            lo_[a] = lo[a];
            dim_[a] = hi[a] - lo[a] + 1;
            volume *= dim_[a];
        }
        if (volume > (1 << 24)) {
            return false;
        }
        mass_.assign(static_cast<std::size_t>(volume), 0.0);
        momentum_.assign(static_cast<std::size_t>(volume), Vec3::Zero());
        velocity_.assign(static_cast<std::size_t>(volume), Vec3::Zero());
        return true;
    }

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i - lo_[0]) * dim_[1] +
                static_cast<std::size_t>(j - lo_[1])) *
                   dim_[2] +
               static_cast<std::size_t>(k - lo_[2]);
    }

    double& mass(std::size_t n) { return mass_[n]; }
    Vec3& momentum(std::size_t n) { return momentum_[n]; }
    const Vec3& velocity(std::size_t n) const { return velocity_[n]; }
    double mass(std::size_t n) const { return mass_[n]; }

    void form_velocities(double total_mass) {
        const double eps = kMassEpsFactor * total_mass;
        for (std::size_t n = 0; n < mass_.size(); ++n) {
            if (mass_[n] > eps) {
                velocity_[n] = momentum_[n] / mass_[n];
            } else {
                mass_[n] = 0.0;  // dropped, matching the sparse-field threshold
            }
        }
    }

  private:
    int lo_[3] = {0, 0, 0};
    int dim_[3] = {0, 0, 0};
    std::vector<double> mass_;
    std::vector<Vec3> momentum_;
    std::vector<Vec3> velocity_;
};

std::vector<GeneralizedVelocity> apply_H_dense(const ParticleSet& particles,
                                               std::span<const GeneralizedVelocity> field,
                                               const GridSpec& spec, TransferMode mode,
                                               const std::vector<Stencil3>& stencils,
                                               DenseScratch& scratch) {
    const bool apic = mode == TransferMode::APIC;
    const double dinv = inv_d_scalar(spec);
    const std::size_t count = particles.size();

    double total_mass = 0.0;
    for (std::size_t p = 0; p < count; ++p) {
        const Stencil3& s = stencils[p];
        const Vec3& xp = particles.x[p];
        const double m = particles.mass[p];
        const GeneralizedVelocity& gv = field[p];
        total_mass += m;
        for (int di = 0; di < 4; ++di) {
            for (int dj = 0; dj < 4; ++dj) {
                for (int dk = 0; dk < 4; ++dk) {
                    const double w = s.sx.w[di] * s.sy.w[dj] * s.sz.w[dk];
                    if (w == 0.0) continue;
                    const std::array<int, 3> idx = {s.sx.base - 1 + di, s.sy.base - 1 + dj,
                                                    s.sz.base - 1 + dk};
                    const std::size_t n = scratch.index(idx[0], idx[1], idx[2]);
                    const Vec3 r = spec.node_position(idx) - xp;
                    scatter_node(scratch.mass(n), scratch.momentum(n), w, m, gv, r, dinv, apic);
                }
            }
        }
    }
    scratch.form_velocities(total_mass);

    std::vector<GeneralizedVelocity> out(count);
    for (std::size_t p = 0; p < count; ++p) {
        const Stencil3& s = stencils[p];
        const Vec3& xp = particles.x[p];
        GeneralizedVelocity acc;
        for (int di = 0; di < 4; ++di) {
            for (int dj = 0; dj < 4; ++dj) {
                for (int dk = 0; dk < 4; ++dk) {
                    const double w = s.sx.w[di] * s.sy.w[dj] * s.sz.w[dk];
                    if (w == 0.0) continue;
                    const std::array<int, 3> idx = {s.sx.base - 1 + di, s.sy.base - 1 + dj,
                                                    s.sz.base - 1 + dk};
                    const std::size_t n = scratch.index(idx[0], idx[1], idx[2]);
                    if (scratch.mass(n) == 0.0) {
                        throw SimError("apply_H: stencil touches a dropped grid node");
                    }
                    const Vec3 r = spec.node_position(idx) - xp;
                    gather_node(acc, w, scratch.velocity(n), r, apic);
                }
            }
        }
        out[p] = acc;
    }
    return out;
}

}  // namespace

void ParticleSet::validate() const {
    if (mass.size() != x.size() || gv.size() != x.size()) {
        throw InvalidInput("ParticleSet: mismatched array lengths");
    }
    for (std::size_t p = 0; p < x.size(); ++p) {
        if (!x[p].allFinite()) {
            throw InvalidInput("ParticleSet: non-finite position at particle " +
                               std::to_string(p));
        }
        if (!std::isfinite(mass[p]) || mass[p] <= 0.0) {
            throw InvalidInput("ParticleSet: non-positive mass at particle " +
                               std::to_string(p));
        }
    }
}

std::vector<SparseGridField::Key> SparseGridField::sorted_keys() const {
    std::vector<Key> keys;
    keys.reserve(nodes_.size());
    for (const auto& [k, _] : nodes_) {
        keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

SparseGridField particle_to_grid(const ParticleSet& particles, const GridSpec& spec,
                                 TransferMode mode) {
    particles.validate();
    const bool apic = mode == TransferMode::APIC;
    const double dinv = inv_d_scalar(spec);

    SparseGridField field;
    double total_mass = 0.0;
    for (std::size_t p = 0; p < particles.size(); ++p) {
        const Stencil3 s = stencil_of(particles.x[p], spec);
        const Vec3& xp = particles.x[p];
        const double m = particles.mass[p];
        const GeneralizedVelocity& gv = particles.gv[p];
        total_mass += m;
        for (int di = 0; di < 4; ++di) {
            for (int dj = 0; dj < 4; ++dj) {
                for (int dk = 0; dk < 4; ++dk) {
                    const double w = s.sx.w[di] * s.sy.w[dj] * s.sz.w[dk];
                    if (w == 0.0) continue;
                    const std::array<int, 3> idx = {s.sx.base - 1 + di, s.sy.base - 1 + dj,
                                                    s.sz.base - 1 + dk};
                    GridNode& node = field.accumulate(idx);
                    const Vec3 r = spec.node_position(idx) - xp;
                    scatter_node(node.mass, node.momentum, w, m, gv, r, dinv, apic);
                }
            }
        }
    }

    // 0/0 guard; unreachable for positive masses but specified anyway.
    const double eps = kMassEpsFactor * total_mass;
    for (const SparseGridField::Key& key : field.sorted_keys()) {
        if (field.find(key)->mass <= eps) {
            field.erase(key);
        }
    }
    return field;
}

std::vector<GeneralizedVelocity> grid_to_particle(const SparseGridField& grid,
                                                  const ParticleSet& particles,
                                                  const GridSpec& spec, TransferMode mode) {
    particles.validate();
    const bool apic = mode == TransferMode::APIC;

    std::vector<GeneralizedVelocity> out(particles.size());
    for (std::size_t p = 0; p < particles.size(); ++p) {
        const Stencil3 s = stencil_of(particles.x[p], spec);
        const Vec3& xp = particles.x[p];
        GeneralizedVelocity acc;
        for (int di = 0; di < 4; ++di) {
            for (int dj = 0; dj < 4; ++dj) {
                for (int dk = 0; dk < 4; ++dk) {
                    const double w = s.sx.w[di] * s.sy.w[dj] * s.sz.w[dk];
                    if (w == 0.0) continue;
                    const std::array<int, 3> idx = {s.sx.base - 1 + di, s.sy.base - 1 + dj,
                                                    s.sz.base - 1 + dk};
                    const GridNode* node = grid.find(idx);
                    if (node == nullptr) {
                        throw SimError(
                            "grid_to_particle: stencil touches a node absent from the "
                            "grid; transfer pair must share the particle set");
                    }
                    const Vec3 v_node = node->momentum / node->mass;
                    const Vec3 r = spec.node_position(idx) - xp;
                    gather_node(acc, w, v_node, r, apic);
                }
            }
        }
        out[p] = acc;
    }
    return out;
}

std::vector<GeneralizedVelocity> apply_H(const ParticleSet& particles, const GridSpec& spec,
                                         TransferMode mode) {
    return apply_H(particles, std::span<const GeneralizedVelocity>(particles.gv), spec, mode);
}

std::vector<GeneralizedVelocity> apply_H(const ParticleSet& particles,
                                         std::span<const GeneralizedVelocity> field,
                                         const GridSpec& spec, TransferMode mode) {
    particles.validate();
    if (field.size() != particles.size()) {
        throw InvalidInput("apply_H: field length does not match particle set");
    }

    std::vector<Stencil3> stencils;
    stencils.reserve(particles.size());
    for (std::size_t p = 0; p < particles.size(); ++p) {
        stencils.push_back(stencil_of(particles.x[p], spec));
    }

    thread_local DenseScratch scratch;
    if (!stencils.empty() && scratch.prepare(stencils)) {
        return apply_H_dense(particles, field, spec, mode, stencils, scratch);
    }

    // Spread-out particle sets: compose the sparse-field transfers directly.
    ParticleSet view = particles;
    view.gv.assign(field.begin(), field.end());
    return grid_to_particle(particle_to_grid(view, spec, mode), particles, spec, mode);
}

std::vector<GeneralizedVelocity> apply_G(const ParticleSet& particles, const GridSpec& spec,
                                         TransferMode mode) {
    return apply_G(particles, std::span<const GeneralizedVelocity>(particles.gv), spec, mode);
}

std::vector<GeneralizedVelocity> apply_G(const ParticleSet& particles,
                                         std::span<const GeneralizedVelocity> field,
                                         const GridSpec& spec, TransferMode mode) {
    std::vector<GeneralizedVelocity> out = apply_H(particles, field, spec, mode);
    for (std::size_t p = 0; p < out.size(); ++p) {
        out[p].v -= field[p].v;
        out[p].B -= field[p].B;
    }
    return out;
}

}  // namespace augury
