#include "augury/fem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace augury {

namespace {

Mat3 edge_matrix(const std::array<int, 4>& tet, std::span<const Vec3> coords) {
    Mat3 d;
    d.col(0) = coords[tet[1]] - coords[tet[0]];
    d.col(1) = coords[tet[2]] - coords[tet[0]];
    d.col(2) = coords[tet[3]] - coords[tet[0]];
    return d;
}

}  // namespace

Material::Material(double rho, double E, double nu) : density(rho), youngs(E), poisson(nu) {
    if (!(rho > 0.0) || !(E > 0.0) || !(nu > -1.0 && nu < 0.5)) {
        throw InvalidInput("Material: need rho > 0, E > 0, -1 < nu < 0.5");
    }
}

int TetMesh::num_bodies() const {
    int n = 0;
    for (int id : body_id) {
        n = std::max(n, id + 1);
    }
    return n;
}

void TetMesh::apply_transform(const Mat3& rotation, const Vec3& pivot,
                              const Vec3& translation) {
    for (Vec3& p : ref_coords) {
        p = rotation * (p - pivot) + pivot + translation;
    }
}

void TetMesh::extract_boundary() {
    // Outward faces of a positively-oriented tet (a,b,c,d).
    static constexpr int face_of[4][3] = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};

    std::map<std::array<int, 3>, std::array<int, 3>> once;  // sorted key -> oriented face
    std::set<std::array<int, 3>> dup;
    for (const auto& tet : tets) {
        for (const auto& f : face_of) {
            const std::array<int, 3> face = {tet[f[0]], tet[f[1]], tet[f[2]]};
            std::array<int, 3> key = face;
            std::sort(key.begin(), key.end());
            if (dup.count(key)) continue;
            auto [it, inserted] = once.emplace(key, face);
            if (!inserted) {
                once.erase(it);
                dup.insert(key);
            }
        }
    }

    boundary_faces.clear();
    std::set<int> nodes;
    for (const auto& [key, face] : once) {
        boundary_faces.push_back(face);
        nodes.insert(face.begin(), face.end());
    }
    boundary_nodes.assign(nodes.begin(), nodes.end());
}

void TetMesh::validate() const {
    if (body_id.size() != ref_coords.size()) {
        throw InvalidInput("TetMesh: body_id length mismatch");
    }
    for (std::size_t e = 0; e < tets.size(); ++e) {
        const double vol6 = edge_matrix(tets[e], ref_coords).determinant();
        if (!(vol6 > 0.0)) {
            throw InvalidInput("TetMesh: non-positive reference volume in element " +
                               std::to_string(e));
        }
    }
}

TetMesh TetMesh::merge(std::span<const TetMesh> parts) {
    TetMesh out;
    int node_offset = 0;
    int body = 0;
    for (const TetMesh& part : parts) {
        out.ref_coords.insert(out.ref_coords.end(), part.ref_coords.begin(),
                              part.ref_coords.end());
        for (const auto& t : part.tets) {
            out.tets.push_back({t[0] + node_offset, t[1] + node_offset, t[2] + node_offset,
                                t[3] + node_offset});
        }
        for (const auto& f : part.boundary_faces) {
            out.boundary_faces.push_back(
                {f[0] + node_offset, f[1] + node_offset, f[2] + node_offset});
        }
        for (int n : part.boundary_nodes) {
            out.boundary_nodes.push_back(n + node_offset);
        }
        out.body_id.insert(out.body_id.end(), part.ref_coords.size(), body);
        node_offset += part.num_nodes();
        ++body;
    }
    return out;
}

ElementCache build_element_cache(const TetMesh& mesh) {
    ElementCache cache;
    cache.inv_dm.reserve(mesh.tets.size());
    cache.ref_volume.reserve(mesh.tets.size());
    cache.material_id.reserve(mesh.tets.size());
    for (std::size_t e = 0; e < mesh.tets.size(); ++e) {
        const Mat3 dm = edge_matrix(mesh.tets[e], mesh.ref_coords);
        const double vol6 = dm.determinant();
        if (!(vol6 > 0.0)) {
            throw InvalidInput("element cache: non-positive reference volume in element " +
                               std::to_string(e));
        }
        cache.inv_dm.push_back(dm.inverse());
        cache.ref_volume.push_back(vol6 / 6.0);
        cache.material_id.push_back(mesh.body_id[mesh.tets[e][0]]);
    }
    return cache;
}

std::vector<double> lumped_mass(const TetMesh& mesh, std::span<const Material> materials) {
    std::vector<double> m(mesh.ref_coords.size(), 0.0);
    for (std::size_t e = 0; e < mesh.tets.size(); ++e) {
        const auto& tet = mesh.tets[e];
        const double vol6 = edge_matrix(tet, mesh.ref_coords).determinant();
        if (!(vol6 > 0.0)) {
            throw InvalidInput("lumped_mass: non-positive reference volume in element " +
                               std::to_string(e));
        }
        const double rho = materials[mesh.body_id[tet[0]]].density;
        const double share = rho * vol6 / 6.0 / 4.0;
        for (int n : tet) {
            m[n] += share;
        }
    }
    return m;
}

double neo_hookean_energy(const Mat3& F, double lambda, double mu) {
    const double J = F.determinant();
    if (!(J > 0.0)) {
        throw NumericalFailure("neo-hookean: non-positive Jacobian");
    }
    const double logJ = std::log(J);
    return 0.5 * mu * ((F.transpose() * F).trace() - 3.0) - mu * logJ +
           0.5 * lambda * logJ * logJ;
}

Mat3 neo_hookean_stress(const Mat3& F, double lambda, double mu) {
    const double J = F.determinant();
    if (!(J > 0.0)) {
        throw NumericalFailure("neo-hookean: non-positive Jacobian");
    }
    const Mat3 f_inv_t = F.inverse().transpose();
    return mu * (F - f_inv_t) + lambda * std::log(J) * f_inv_t;
}

std::vector<Vec3> internal_force(const TetMesh& mesh, const ElementCache& cache,
                                 std::span<const Material> materials,
                                 std::span<const Vec3> x) {
    std::vector<Vec3> f(mesh.ref_coords.size(), Vec3::Zero());
    for (std::size_t e = 0; e < mesh.tets.size(); ++e) {
        const auto& tet = mesh.tets[e];
        const Mat3 F = edge_matrix(tet, x) * cache.inv_dm[e];
        if (!(F.determinant() > 0.0)) {
            throw NumericalFailure("element inversion in element " + std::to_string(e));
        }
        const Material& mat = materials[cache.material_id[e]];
        const Mat3 P = neo_hookean_stress(F, mat.lambda(), mat.shear());
        // dE/dDs, columns are the gradients w.r.t. nodes 1..3.
        const Mat3 K = cache.ref_volume[e] * P * cache.inv_dm[e].transpose();
        f[tet[1]] += K.col(0);
        f[tet[2]] += K.col(1);
        f[tet[3]] += K.col(2);
        f[tet[0]] -= K.col(0) + K.col(1) + K.col(2);
    }
    return f;
}

std::vector<Vec3> internal_force(const TetMesh& mesh, std::span<const Material> materials,
                                 std::span<const Vec3> x) {
    return internal_force(mesh, build_element_cache(mesh), materials, x);
}

double strain_energy(const TetMesh& mesh, const ElementCache& cache,
                     std::span<const Material> materials, std::span<const Vec3> x) {
    double energy = 0.0;
    for (std::size_t e = 0; e < mesh.tets.size(); ++e) {
        const Mat3 F = edge_matrix(mesh.tets[e], x) * cache.inv_dm[e];
        if (!(F.determinant() > 0.0)) {
            throw NumericalFailure("element inversion in element " + std::to_string(e));
        }
        const Material& mat = materials[cache.material_id[e]];
        energy += cache.ref_volume[e] * neo_hookean_energy(F, mat.lambda(), mat.shear());
    }
    return energy;
}

double strain_energy(const TetMesh& mesh, std::span<const Material> materials,
                     std::span<const Vec3> x) {
    return strain_energy(mesh, build_element_cache(mesh), materials, x);
}

std::vector<Vec3> mechanical_acceleration(const TetMesh& mesh, const ElementCache& cache,
                                          std::span<const Material> materials,
                                          std::span<const Vec3> x,
                                          std::span<const double> mass, const Vec3& gravity,
                                          std::span<const std::uint8_t> fixed) {
    std::vector<Vec3> accel = internal_force(mesh, cache, materials, x);
    for (std::size_t n = 0; n < accel.size(); ++n) {
        if (!fixed.empty() && fixed[n]) {
            accel[n] = Vec3::Zero();
        } else {
            accel[n] = gravity - accel[n] / mass[n];
        }
    }
    return accel;
}

}  // namespace augury
