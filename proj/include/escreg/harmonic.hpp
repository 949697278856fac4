#pragma once

#include <vector>

#include "escreg/internal_model.hpp"
#include "escreg/linalg.hpp"

namespace escreg {

/// One frequency line of a finite trigonometric sum. omega = 0 carries the
/// constant part in cos_coeff.
struct HarmonicTerm {
    double omega = 0.0;
    Vector cos_coeff;
    Vector sin_coeff;
};

/// Vector-valued finite sum  x(t) = sum_k c_k cos(w_k t) + s_k sin(w_k t)
/// with distinct frequencies. Zero-amplitude terms are kept: they record
/// harmonics that are structurally present but vanish for special parameters.
struct HarmonicSignal {
    Eigen::Index dim = 0;
    std::vector<HarmonicTerm> terms;

    Vector eval(double t) const;
    double eval_scalar(double t) const;  // dim-1 convenience
    HarmonicSignal derivative() const;
    HarmonicSignal component(Eigen::Index i) const;
};

HarmonicSignal harmonic_zero(Eigen::Index dim);
HarmonicSignal harmonic_constant(const Vector& c);

HarmonicSignal add(const HarmonicSignal& a, const HarmonicSignal& b);
HarmonicSignal scale(const HarmonicSignal& a, double factor);
/// Apply a constant matrix to every coefficient pair.
HarmonicSignal linear_map(const Matrix& A, const HarmonicSignal& a);
HarmonicSignal dot(const Vector& v, const HarmonicSignal& a);
/// Product of two scalar signals, expanded by the product-to-sum identities.
HarmonicSignal multiply(const HarmonicSignal& a, const HarmonicSignal& b);
/// Stack scalar signals into a vector-valued one.
HarmonicSignal stack(const std::vector<HarmonicSignal>& parts);

/// Steady-state response of x' = F x + forcing for Hurwitz F: per frequency
/// the cos/sin coefficient pair solves a 2n x 2n real linear system.
HarmonicSignal linear_harmonic_steady_state(const Matrix& F, const HarmonicSignal& forcing);

/// Steady-state solution data of the regulator equations for the benchmark
/// plant family, in harmonic form. vartheta_ss records the constant varrho
/// (the steady state of the estimate).
struct SteadyState {
    HarmonicSignal z_ss;
    HarmonicSignal u_ss;
    HarmonicSignal xi_ss;
    HarmonicSignal theta_ss;
    HarmonicSignal varpi_ss;
    Vector vartheta_ss;
};

/// Regulator-equation solution for the benchmark plant (harmonic balance with
/// the cubic output term expanded analytically). The internal model supplies
/// m and T(a) for the theta / varpi transforms.
SteadyState example_steady_input(double sigma, const Vector& w, double b,
                                 const Vector& v0, const InternalModel& model);

/// True iff every harmonic line of u_ss carries magnitude above 1e-9
/// (persistent excitation of theta).
bool assumption3_check(const SteadyState& ss);

/// max ||col(theta(t), varrho)||^2 over one period, sampled, times a safety
/// factor; used as the chi_s saturation radius.
double steady_sat_radius(const SteadyState& ss, double sigma, double safety = 1.5);

}  // namespace escreg
