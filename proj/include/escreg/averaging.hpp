#pragma once

#include <functional>
#include <vector>

#include "escreg/linalg.hpp"

namespace escreg {

/// Time-varying vector field with an optional analytic Jacobian. When the
/// Jacobian is absent it is approximated by central differences with step
/// h = 1e-6 (1 + ||x||). Evaluators must be pure.
struct VectorField {
    Eigen::Index dim = 0;
    std::function<void(const Vector& x, double t, Vector& out)> eval_into;
    std::function<Matrix(const Vector& x, double t)> jacobian;  // may be empty

    Vector eval(const Vector& x, double t) const;
    Matrix jac(const Vector& x, double t) const;
};

VectorField make_field(Eigen::Index dim,
                       std::function<Vector(const Vector&, double)> f);
VectorField make_field(Eigen::Index dim,
                       std::function<Vector(const Vector&, double)> f,
                       std::function<Matrix(const Vector&, double)> jacobian);

/// [gi, gj](x) = Jgj(x) gi(x) - Jgi(x) gj(x).
Vector lie_bracket(const VectorField& gi, const VectorField& gj, const Vector& x, double t);

/// Dither contribution g1(x) cos(omega t) + g2(x) sin(omega t).
struct DitherPair {
    VectorField g1;
    VectorField g2;
};

/// Lie-bracket average of x' = f + sum_i [g1_i cos(omega t) + g2_i sin(omega t)]:
/// f + sum_i (1/(2 omega)) [g1_i, g2_i]. The amplitudes carry sqrt(omega), so
/// for the dither laws here the result is omega-independent.
VectorField averaged_field(const VectorField& f, const std::vector<DitherPair>& pairs,
                           double omega);

struct DeviationRecord {
    double omega = 0.0;
    double sup_deviation = 0.0;
    double final_deviation = 0.0;
};

/// For each omega, integrate the dithered and the averaged system from x0 over
/// [0, T] with fixed-step RK4 (steps_per_period steps per dither period) and
/// record sup_t and final-state deviations. Throws IntegrationDiverged when a
/// state norm exceeds 1e6. omegas must be increasing.
std::vector<DeviationRecord> convergence_test(
    const std::function<VectorField(double omega)>& dithered,
    const VectorField& averaged, const Vector& x0, double T,
    const std::vector<double>& omegas, int steps_per_period = 64);

}  // namespace escreg
