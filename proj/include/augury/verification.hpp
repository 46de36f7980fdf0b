#pragma once

#include "augury/transfers.hpp"
#include "augury/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace augury {

// Deterministic pseudorandom particle cloud for property checks.
ParticleSet random_cloud(std::uint64_t seed, int count, double box = 3.0);

struct BasisCheck {
    double pou_error;           // max |sum w - 1|
    double completeness_error;  // max ||sum w x_i - x|| / h
    double second_moment_error; // max |sum w r r^T - (h^2/2) I|, h = 1
};
BasisCheck check_spline_basis(int n_points, std::uint64_t seed);

// Max relative deviation of H^APIC from identity on random affine fields.
double check_affine_preservation(int n_fields, std::uint64_t seed);

struct MomentumCheck {
    double linear_pic;
    double linear_apic;
    double angular_apic;
};
// Max relative net momentum in the range of G over random fields.
MomentumCheck check_momentum_free_g(int n_fields, std::uint64_t seed);

// Hand-checkable undesirable-delta cases; returns a failure message or "".
std::string check_contact_laws();

}  // namespace augury
