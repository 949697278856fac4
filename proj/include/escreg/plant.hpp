#pragma once

#include <functional>

#include "escreg/linalg.hpp"

namespace escreg {

/// Marginal oscillator v' = S(sigma) v generating references and disturbances.
struct Exosystem {
    double sigma = 1.0;
    Matrix S;
    Vector v0;
};

Exosystem make_exosystem(double sigma, const Vector& v0);
Vector exosystem_rhs(const Vector& v, const Exosystem& exo);

/// Output-feedback plant
///   z' = F(w) z + G(y, v, w) y + D1(v, w)
///   y' = H(w) z + K(y, v, w) y + b(v, w) u + D2(v, w)
///   e  = y - q(v, w)
/// Evaluators must be pure functions of their arguments.
struct PlantModel {
    Eigen::Index nz = 0;
    Vector w;
    std::function<Matrix(const Vector& w)> F;
    std::function<Vector(double y, const Vector& v, const Vector& w)> G;
    std::function<Vector(const Vector& v, const Vector& w)> D1;
    std::function<RowVector(const Vector& w)> H;
    std::function<double(double y, const Vector& v, const Vector& w)> K;
    std::function<double(const Vector& v, const Vector& w)> b;
    std::function<double(const Vector& v, const Vector& w)> D2;
    std::function<double(const Vector& v, const Vector& w)> q;
};

struct PlantState {
    Vector z;
    double y = 0.0;
};

/// Right-hand side of the plant equations. Throws NonFinite when an evaluator
/// returns NaN or infinity.
PlantState plant_rhs(const PlantState& state, const Vector& v, double u,
                     const PlantModel& model);

/// The benchmark plant: F = -I2, G = (sin^2(y - v1), 1), H = [0, 1],
/// K = -w1 - w2 y^2, D1 = D2 = 0, q = v1, constant input gain b.
PlantModel example_plant(const Vector& w, double b_const);

/// Minimum-phase check: F(w) Hurwitz.
bool check_minimum_phase(const PlantModel& model);

/// b^2(v, w) > 0 on a sampled grid of exosystem states with ||v|| <= radius.
bool check_control_gain(const PlantModel& model, double radius = 2.0, int samples = 64);

/// Assumption on the exosystem spectrum: distinct imaginary eigenvalues.
bool check_exosystem(const Exosystem& exo);

}  // namespace escreg
