#pragma once

#include "augury/integrator.hpp"
#include "augury/types.hpp"

#include <array>
#include <cstdio>
#include <string>

namespace augury {

struct DiagnosticsRow {
    double time;
    Vec3 linear;
    Vec3 angular;
    double kinetic, strain, potential, total;
    double min_gap;
};

Vec3 linear_momentum(const SimState& state);

// About the global origin, including the affine axl(B) contribution of the
// boundary particles.
Vec3 angular_momentum(const SimState& state);

// {KE, SE, PE}; the kinetic energy omits the B-mode contribution.
std::array<double, 3> total_energy(const SimState& state);

// Signed closest distance between two bodies' boundaries; negative means a
// vertex of one body lies inside the other. Symmetric in its arguments.
double min_gap(const SimState& state, int body_a, int body_b);

// min_gap between bodies 0 and 1 when at least two bodies exist, else zero.
DiagnosticsRow measure(const SimState& state);

// CSV with a fixed column order and 17-significant-digit floats, so repeated
// runs are byte-identical.
class DiagnosticsCsv {
  public:
    explicit DiagnosticsCsv(const std::string& path);
    ~DiagnosticsCsv();
    DiagnosticsCsv(const DiagnosticsCsv&) = delete;
    DiagnosticsCsv& operator=(const DiagnosticsCsv&) = delete;

    void write(const DiagnosticsRow& row);

  private:
    std::FILE* file_;
};

}  // namespace augury
