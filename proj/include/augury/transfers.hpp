#pragma once

#include "augury/spline_grid.hpp"
#include "augury/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace augury {

// Boundary nodes of the foreground meshes, viewed as transfer particles.
struct ParticleSet {
    std::vector<Vec3> x;
    std::vector<double> mass;
    std::vector<GeneralizedVelocity> gv;

    std::size_t size() const { return x.size(); }
    void validate() const;
};

struct GridNode {
    double mass = 0.0;
    Vec3 momentum = Vec3::Zero();
};

// Transient mass/momentum accumulators on occupied lattice nodes only.
class SparseGridField {
  public:
    using Key = std::array<int, 3>;

    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = 1469598103934665603ull;
            for (int c : k) {
                h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c));
                h *= 1099511628211ull;
            }
            return static_cast<std::size_t>(h);
        }
    };

    GridNode& accumulate(const Key& k) { return nodes_[k]; }
    const GridNode* find(const Key& k) const {
        auto it = nodes_.find(k);
        return it == nodes_.end() ? nullptr : &it->second;
    }
    void erase(const Key& k) { nodes_.erase(k); }
    std::size_t size() const { return nodes_.size(); }

    // Occupied keys in lexicographic order, for deterministic reductions.
    std::vector<Key> sorted_keys() const;

  private:
    std::unordered_map<Key, GridNode, KeyHash> nodes_;
};

SparseGridField particle_to_grid(const ParticleSet& particles, const GridSpec& spec,
                                 TransferMode mode);

// Requires a grid built from a superset of these particles; throws if a
// stencil node with nonzero weight is missing.
std::vector<GeneralizedVelocity> grid_to_particle(const SparseGridField& grid,
                                                  const ParticleSet& particles,
                                                  const GridSpec& spec, TransferMode mode);

// H = grid_to_particle . particle_to_grid at fixed positions and masses.
// The overload with an explicit field applies H to that field instead of the
// particles' own; positions and masses still come from the particle set.
std::vector<GeneralizedVelocity> apply_H(const ParticleSet& particles, const GridSpec& spec,
                                         TransferMode mode);
std::vector<GeneralizedVelocity> apply_H(const ParticleSet& particles,
                                         std::span<const GeneralizedVelocity> field,
                                         const GridSpec& spec, TransferMode mode);

// G = H - I; its range carries zero net linear momentum (and zero net
// angular momentum in APIC mode).
std::vector<GeneralizedVelocity> apply_G(const ParticleSet& particles, const GridSpec& spec,
                                         TransferMode mode);
std::vector<GeneralizedVelocity> apply_G(const ParticleSet& particles,
                                         std::span<const GeneralizedVelocity> field,
                                         const GridSpec& spec, TransferMode mode);

}  // namespace augury
