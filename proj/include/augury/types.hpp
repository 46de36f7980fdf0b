#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace augury {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Velocity plus scaled velocity gradient, the pair the grid transfers act on.
struct GeneralizedVelocity {
    Vec3 v = Vec3::Zero();
    Mat3 B = Mat3::Zero();
};

// Rates share the same layout: {acceleration, B rate}.
using GeneralizedAcceleration = GeneralizedVelocity;

enum class TransferMode { PIC, APIC };

// axl(B)_a = eps_abc B_cb; the affine contribution to angular momentum.
inline Vec3 axl(const Mat3& B) {
    return Vec3(B(2, 1) - B(1, 2), B(0, 2) - B(2, 0), B(1, 0) - B(0, 1));
}

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-facing input (configs, preconditions). CLI exit code 1.
struct InvalidInput : SimError {
    using SimError::SimError;
};

// Runtime numerical breakdown (element inversion, blow-up). CLI exit code 2.
struct NumericalFailure : SimError {
    using SimError::SimError;
};

}  // namespace augury
