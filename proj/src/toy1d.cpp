#include "augury/toy1d.hpp"

#include <cmath>

namespace augury {

std::array<double, 3> toy_apic_rhs(const ToyState& s) {
    const double x = s.x;
    return {s.v, ((x * x - 1.0) * s.v - x * s.B) / s.tau,
            ((x * x * x - x) * s.v - x * x * s.B) / s.tau};
}

std::array<double, 2> toy_pic_rhs(const ToyState& s) {
    return {s.v, s.v * (s.x * s.x - 1.0) / s.tau};
}

namespace {

std::array<double, 3> rhs(const ToyState& s, TransferMode mode) {
    if (mode == TransferMode::APIC) {
        return toy_apic_rhs(s);
    }
    const auto [xd, vd] = toy_pic_rhs(s);
    return {xd, vd, 0.0};
}

}  // namespace

ToyTrajectory integrate_toy(const ToyState& initial, TransferMode mode, double t_end,
                            double dt, int sample_stride) {
    if (!(initial.tau > 0.0)) {
        throw InvalidInput("integrate_toy: tau must be positive");
    }
    if (!(dt > 0.0) || dt > initial.tau / 50.0) {
        throw InvalidInput("integrate_toy: need 0 < dt <= tau/50");
    }
    if (sample_stride < 1) {
        throw InvalidInput("integrate_toy: sample stride must be at least 1");
    }

    ToyTrajectory out;
    out.tau = initial.tau;
    ToyState s = initial;
    const long n_steps = std::lround(t_end / dt);

    const auto record = [&](double t) {
        out.samples.push_back({t, s.x, s.v, rhs(s, mode)[1], s.B});
    };
    record(0.0);

    for (long n = 1; n <= n_steps; ++n) {
        const auto eval = [&](double x, double v, double B) {
            ToyState q{x, v, B, s.tau};
            return rhs(q, mode);
        };
        const auto k1 = eval(s.x, s.v, s.B);
        const auto k2 = eval(s.x + 0.5 * dt * k1[0], s.v + 0.5 * dt * k1[1],
                             s.B + 0.5 * dt * k1[2]);
        const auto k3 = eval(s.x + 0.5 * dt * k2[0], s.v + 0.5 * dt * k2[1],
                             s.B + 0.5 * dt * k2[2]);
        const auto k4 = eval(s.x + dt * k3[0], s.v + dt * k3[1], s.B + dt * k3[2]);

        s.x += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        s.v += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        s.B += dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);

        if (std::abs(s.x) > 10.0 || !std::isfinite(s.x) || !std::isfinite(s.v) ||
            !std::isfinite(s.B)) {
            out.unstable = true;
            record(n * dt);
            break;
        }
        if (n % sample_stride == 0 || n == n_steps) {
            record(n * dt);
        }
    }
    return out;
}

}  // namespace augury
