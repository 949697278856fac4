#pragma once

#include "escreg/averaging.hpp"
#include "escreg/controller.hpp"
#include "escreg/internal_model.hpp"
#include "escreg/plant.hpp"

namespace escreg {

/// Index map of the stacked closed-loop state col(z, y, v, eta, pi, vartheta).
struct StateLayout {
    Eigen::Index nz = 0;
    Eigen::Index nv = 0;
    Eigen::Index n = 0;

    Eigen::Index z() const { return 0; }
    Eigen::Index y() const { return nz; }
    Eigen::Index v() const { return nz + 1; }
    Eigen::Index eta() const { return nz + 1 + nv; }
    Eigen::Index pi() const { return nz + 1 + nv + n; }
    Eigen::Index vartheta() const { return nz + 1 + nv + n + 1; }
    Eigen::Index dim() const { return nz + 1 + nv + 2 * n + 1; }
};

/// Full description of one closed-loop run.
struct Scenario {
    PlantModel plant;
    Exosystem exo;
    InternalModel model;
    DitherConfig cfg;
    ControllerVariant variant = ControllerVariant::A;
    Vector x0;        // stacked per StateLayout
    double T = 0.0;   // horizon, seconds
    double dt = 0.0;  // step; <= 0 selects the default 2 pi / (64 omega)
    bool full_rate = false;

    StateLayout layout() const;
    double step() const;  // dt with the default applied
};

/// Closed loop with the full dither law (u recomputed inside every stage).
VectorField make_dithered_field(const Scenario& sc);

/// Closed loop with the dither removed (u = chi_s only); the drift part of
/// the control-affine decomposition.
VectorField make_drift_field(const Scenario& sc);

/// The dither fields of the decomposition x' = drift + g1 cos(omega t)
/// + g2 sin(omega t). The dither enters both the y and the pi equation.
DitherPair make_dither_pair(const Scenario& sc);

/// Analytic Lie-bracket average of the dithered closed loop in original
/// coordinates: the dither is replaced by the equivalent feedback
/// -k alpha b rho^2(e) e (variant A) or -k alpha b rho(e^2) e (variant B)
/// entering exactly where u enters. Independent of omega.
VectorField make_averaged_closed_loop(const Scenario& sc);

/// Same scenario with a different dither frequency (step reset to default).
Scenario with_omega(Scenario sc, double omega);

}  // namespace escreg
