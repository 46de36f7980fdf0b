#pragma once

#include "augury/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace augury {

struct Material {
    double density;
    double youngs;
    double poisson;

    Material(double rho, double E, double nu);

    double lambda() const { return youngs * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson)); }
    double shear() const { return youngs / (2.0 * (1.0 + poisson)); }
};

// Linear-tetrahedral foreground mesh in its reference configuration.
// Boundary faces are outward-oriented triangles; boundary_nodes is the sorted
// union of their vertices (the contact particles).
struct TetMesh {
    std::vector<Vec3> ref_coords;
    std::vector<std::array<int, 4>> tets;
    std::vector<std::array<int, 3>> boundary_faces;
    std::vector<int> boundary_nodes;
    std::vector<int> body_id;

    int num_nodes() const { return static_cast<int>(ref_coords.size()); }
    int num_bodies() const;

    // x -> R (x - pivot) + pivot + translation, applied to reference coords.
    void apply_transform(const Mat3& rotation, const Vec3& pivot, const Vec3& translation);

    // Derives boundary_faces (outward) and boundary_nodes from the tets.
    void extract_boundary();

    void validate() const;

    static TetMesh merge(std::span<const TetMesh> parts);
};

// Per-element reference quantities; the mesh connectivity and reference
// coordinates are fixed for the life of a run.
struct ElementCache {
    std::vector<Mat3> inv_dm;       // inverse reference edge matrix
    std::vector<double> ref_volume;
    std::vector<int> material_id;   // body id of the element
};

ElementCache build_element_cache(const TetMesh& mesh);

std::vector<double> lumped_mass(const TetMesh& mesh, std::span<const Material> materials);

// Compressible Neo-Hookean:
//   W = (mu/2)(tr(F^T F) - 3) - mu ln J + (lambda/2)(ln J)^2
//   P = mu (F - F^-T) + lambda ln J F^-T
double neo_hookean_energy(const Mat3& F, double lambda, double mu);
Mat3 neo_hookean_stress(const Mat3& F, double lambda, double mu);

// f_int,n = sum_e V_e P_e grad(N_n); acceleration is (f_ext - f_int)/m.
std::vector<Vec3> internal_force(const TetMesh& mesh, const ElementCache& cache,
                                 std::span<const Material> materials,
                                 std::span<const Vec3> x);
std::vector<Vec3> internal_force(const TetMesh& mesh, std::span<const Material> materials,
                                 std::span<const Vec3> x);

double strain_energy(const TetMesh& mesh, const ElementCache& cache,
                     std::span<const Material> materials, std::span<const Vec3> x);
double strain_energy(const TetMesh& mesh, std::span<const Material> materials,
                     std::span<const Vec3> x);

// (m g - f_int)/m per node; Dirichlet nodes get exactly zero.
std::vector<Vec3> mechanical_acceleration(const TetMesh& mesh, const ElementCache& cache,
                                          std::span<const Material> materials,
                                          std::span<const Vec3> x,
                                          std::span<const double> mass, const Vec3& gravity,
                                          std::span<const std::uint8_t> fixed);

}  // namespace augury
