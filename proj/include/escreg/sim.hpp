#pragma once

#include <string>
#include <vector>

#include "escreg/closed_loop.hpp"
#include "escreg/harmonic.hpp"

namespace escreg {

/// Classical 4th-order Runge-Kutta update. Throws NonFinite when the result
/// is not finite.
Vector rk4_step(const VectorField& field, const Vector& x, double t, double dt);

/// Sampled closed-loop run. states holds one stacked state per row; e and u
/// are recomputed at the recorded instants.
struct Trajectory {
    StateLayout layout;
    std::vector<double> times;
    Matrix states;  // times.size() x layout.dim()
    Vector e;
    Vector u;

    /// Channel by name: z1..z{nz}, y, v1..v{nv}, eta1..eta{n}, pi,
    /// vt1..vt{n}, e, u.
    Vector channel(const std::string& name) const;
    std::vector<std::string> channel_names() const;
};

/// Fixed-step RK4 over [0, T]. The control is evaluated fresh inside every
/// stage. Recording is strided so the output stays at or below max_rows rows
/// unless full_rate is set. Throws IntegrationDiverged when the state norm
/// exceeds 1e6.
Trajectory integrate(const Scenario& sc, Eigen::Index max_rows = 200000);

/// Error coordinates relative to the steady state: zbar = z - z(mu),
/// etabar = eta - theta(mu), varthetabar = vartheta - varrho,
/// pibar = pi - varpi(mu) - e / b.
struct ErrorView {
    std::vector<double> times;
    Matrix zbar;
    Matrix etabar;
    Matrix varthetabar;
    Vector pibar;
    Vector e;
};

ErrorView error_view(const Trajectory& traj, const SteadyState& oracle, double b);

/// sup |channel| over the final tail_fraction of the horizon.
double ultimate_bound(const Trajectory& traj, const std::string& channel,
                      double tail_fraction);

}  // namespace escreg
