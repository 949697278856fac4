#pragma once

#include "escreg/linalg.hpp"

namespace escreg {

/// Steady-state generator: xi' = Phi(a) xi, u = Gamma xi, where Phi(a) is the
/// companion matrix of the minimal polynomial annihilating the steady-state
/// input and Gamma selects the first component.
struct GeneratorSpec {
    Eigen::Index n = 0;
    Vector a;      // (a_1, ..., a_n), a_1 multiplies u in the annihilating ODE
    Matrix Phi;    // companion(a)
    RowVector Gamma;
};

/// Dynamic compensator data: eta' = M eta + N pi, pi' = -pi + u,
/// vartheta' = -Theta eta (eta^T vartheta - pi), together with the coordinate
/// change T and the regressor offset varrho = m - a.
struct InternalModel {
    Eigen::Index n = 0;
    Vector m;
    Matrix M;      // companion(m), Hurwitz
    Vector N;      // col(0, ..., 0, 1)
    double Theta = 1.0;
    Matrix T;
    Vector varrho;
    double sat_radius = 1.0;  // delta bounding ||col(eta, vartheta)||^2

    Vector a() const { return m - varrho; }
};

/// Coefficients (a_1, ..., a_n) of prod_i (s^2 + w_i^2), optionally times s.
/// a_k is the coefficient of s^{k-1} in the monic annihilating polynomial.
Vector min_poly_coeffs(const Vector& frequencies, bool include_zero = false);

GeneratorSpec make_generator(const Vector& a);

/// T with T^{-1} stacked row by row as varrho^T (Phi + I) Phi^k, k = 0..n-1.
/// Throws SingularMatrix when the stack is singular (observability failure).
Matrix build_T(const Vector& a, const Vector& m);

/// Assembles and validates the compensator data for a given generator.
InternalModel make_internal_model(const Vector& a, const Vector& m, double Theta,
                                  double sat_radius);

/// Frobenius norm of T Phi - M T - N varrho^T T.
double sylvester_residual(const InternalModel& model, const GeneratorSpec& gen);

/// chi(theta, varrho) = varrho^T [Phi(m - varrho) + I] theta, evaluated with
/// the estimate vartheta in place of varrho and theta_hat in place of theta.
/// Phi is rebuilt from m - vartheta on every call.
double chi(Eigen::Ref<const Vector> theta_hat, Eigen::Ref<const Vector> vartheta,
           const InternalModel& model);

/// Smooth step: 0 for s <= 0, 1 for s >= 1, psi(s)/(psi(s)+psi(1-s)) between,
/// with psi(s) = exp(-1/s) for s > 0.
double bump_psi(double s);

/// Saturated feedforward chi * Psi(delta + 1 - ||col(eta, vartheta)||^2).
double chi_s(Eigen::Ref<const Vector> eta, Eigen::Ref<const Vector> vartheta,
             const InternalModel& model);

}  // namespace escreg
