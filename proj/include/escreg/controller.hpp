#pragma once

#include "escreg/internal_model.hpp"

namespace escreg {

/// Polynomial gain function with nonnegative coefficients and constant term
/// >= 1, so rho(s) >= 1 holds structurally on s >= 0 and the running integral
/// has a closed form.
struct RhoPoly {
    Vector coeffs;  // ascending powers

    double eval(double s) const;
    /// integral of rho over [0, x]
    double integral(double x) const;
};

RhoPoly make_rho(const Vector& coeffs);

enum class ControllerVariant { A, B };

/// Dither parameters: u = sqrt(alpha omega) cos(omega t + phase) (envelope
/// rho(e) for variant A) plus the saturated feedforward.
struct DitherConfig {
    double alpha = 1.0;
    double omega = 100.0;
    double k = 2.0;
    RhoPoly rho;
};

DitherConfig make_dither_config(double alpha, double omega, double k, const RhoPoly& rho);

struct CompensatorState {
    Vector eta;
    double pi = 0.0;
    Vector vartheta;
};

CompensatorState zero_compensator(Eigen::Index n);

/// Variant A: sqrt(alpha omega) cos(omega t + k e^2) rho(e) + chi_s(eta, vartheta).
/// Variant B: sqrt(alpha omega) cos(omega t + k int_0^{e^2} rho) + chi_s(eta, vartheta).
double control_input(double t, double e, const CompensatorState& comp,
                     const DitherConfig& cfg, ControllerVariant variant,
                     const InternalModel& model);

/// (eta', pi', vartheta') = (M eta + N pi, -pi + u, -Theta eta (eta^T vartheta - pi)).
CompensatorState compensator_rhs(const CompensatorState& comp, double u,
                                 const InternalModel& model);

}  // namespace escreg
