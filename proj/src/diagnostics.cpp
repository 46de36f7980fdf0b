#include "augury/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace augury {

namespace {

// Closest point on triangle (a,b,c) to p; Ericson's region walk.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ap = p - a;
    const double d1 = ab.dot(ap);
    const double d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp);
    const double d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        return a + (d1 / (d1 - d3)) * ab;
    }

    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp);
    const double d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        return a + (d2 / (d2 - d6)) * ac;
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
    }

    const double denom = 1.0 / (va + vb + vc);
    return a + (vb * denom) * ab + (vc * denom) * ac;
}

bool ray_hits_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                       const Vec3& c) {
    // Moller-Trumbore, front and back faces alike.
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 pvec = dir.cross(e2);
    const double det = e1.dot(pvec);
    if (std::abs(det) < 1e-300) return false;
    const double inv_det = 1.0 / det;
    const Vec3 tvec = origin - a;
    const double u = tvec.dot(pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return false;
    const Vec3 qvec = tvec.cross(e1);
    const double v = dir.dot(qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return false;
    const double t = e2.dot(qvec) * inv_det;
    return t > 0.0;
}

struct BodyBoundary {
    std::vector<int> vertices;
    std::vector<std::array<int, 3>> faces;
};

BodyBoundary boundary_of_body(const SimState& state, int body) {
    BodyBoundary out;
    for (int n : state.mesh.boundary_nodes) {
        if (state.mesh.body_id[n] == body) out.vertices.push_back(n);
    }
    for (const auto& f : state.mesh.boundary_faces) {
        if (state.mesh.body_id[f[0]] == body) out.faces.push_back(f);
    }
    return out;
}

// Fixed irrational-ish direction keeps the parity ray away from face planes
// and edges of the axis-aligned meshes used here.
const Vec3 kParityRay = Vec3(0.57721566, 0.78539816, 0.26179939).normalized();

bool point_inside(const Vec3& p, const BodyBoundary& boundary, const SimState& state) {
    int crossings = 0;
    for (const auto& f : boundary.faces) {
        if (ray_hits_triangle(p, kParityRay, state.x[f[0]], state.x[f[1]], state.x[f[2]])) {
            ++crossings;
        }
    }
    return (crossings % 2) == 1;
}

double one_sided_gap(const SimState& state, const BodyBoundary& from,
                     const BodyBoundary& to) {
    double best = std::numeric_limits<double>::infinity();
    for (int v : from.vertices) {
        const Vec3& p = state.x[v];
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& f : to.faces) {
            const Vec3 q =
                closest_point_on_triangle(p, state.x[f[0]], state.x[f[1]], state.x[f[2]]);
            dist = std::min(dist, (p - q).norm());
        }
        if (point_inside(p, to, state)) {
            dist = -dist;
        }
        best = std::min(best, dist);
    }
    return best;
}

void append_double(std::string& line, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    line += buf;
}

}  // namespace

Vec3 linear_momentum(const SimState& state) {
    Vec3 p = Vec3::Zero();
    for (std::size_t n = 0; n < state.x.size(); ++n) {
        p += state.mass[n] * state.v[n];
    }
    return p;
}

Vec3 angular_momentum(const SimState& state) {
    Vec3 L = Vec3::Zero();
    for (std::size_t n = 0; n < state.x.size(); ++n) {
        L += state.mass[n] * state.x[n].cross(state.v[n]);
    }
    for (int n : state.mesh.boundary_nodes) {
        L += state.mass[n] * axl(state.B[n]);
    }
    return L;
}

std::array<double, 3> total_energy(const SimState& state) {
    double ke = 0.0;
    double pe = 0.0;
    for (std::size_t n = 0; n < state.x.size(); ++n) {
        ke += 0.5 * state.mass[n] * state.v[n].squaredNorm();
        pe -= state.mass[n] * state.gravity.dot(state.x[n]);
    }
    const double se =
        strain_energy(state.mesh, state.elements, state.materials, state.x);
    return {ke, se, pe};
}

double min_gap(const SimState& state, int body_a, int body_b) {
    if (body_a == body_b) {
        throw InvalidInput("min_gap: need two distinct bodies");
    }
    const BodyBoundary a = boundary_of_body(state, body_a);
    const BodyBoundary b = boundary_of_body(state, body_b);
    if (a.faces.empty() || b.faces.empty()) {
        throw InvalidInput("min_gap: a body has no boundary faces");
    }
    return std::min(one_sided_gap(state, a, b), one_sided_gap(state, b, a));
}

DiagnosticsRow measure(const SimState& state) {
    DiagnosticsRow row;
    row.time = state.time;
    row.linear = linear_momentum(state);
    row.angular = angular_momentum(state);
    const auto [ke, se, pe] = total_energy(state);
    row.kinetic = ke;
    row.strain = se;
    row.potential = pe;
    row.total = ke + se + pe;
    row.min_gap = state.mesh.num_bodies() >= 2 ? min_gap(state, 0, 1) : 0.0;
    return row;
}

DiagnosticsCsv::DiagnosticsCsv(const std::string& path) : file_(std::fopen(path.c_str(), "wb")) {
    if (file_ == nullptr) {
        throw InvalidInput("cannot open diagnostics file " + path);
    }
    std::fputs("time,px,py,pz,Lx,Ly,Lz,KE,SE,PE,E_total,min_gap\n", file_);
}

DiagnosticsCsv::~DiagnosticsCsv() {
    if (file_ != nullptr) {
        std::fclose(file_);
    }
}

void DiagnosticsCsv::write(const DiagnosticsRow& row) {
    std::string line;
    line.reserve(320);
    const double values[] = {row.time,      row.linear[0], row.linear[1],  row.linear[2],
                             row.angular[0], row.angular[1], row.angular[2], row.kinetic,
                             row.strain,    row.potential, row.total,      row.min_gap};
    bool first = true;
    for (double v : values) {
        if (!first) line += ',';
        append_double(line, v);
        first = false;
    }
    line += '\n';
    std::fputs(line.c_str(), file_);
    std::fflush(file_);
}

}  // namespace augury
