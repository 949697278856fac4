#pragma once

#include <string>
#include <vector>

#include "escreg/sim.hpp"

namespace escreg {

/// Parse a scenario from JSON text. Recognized keys:
///   plant ("example_liu2009"), w, b, sigma, v0,
///   m, Theta, frequencies | a, sat_radius,
///   controller ("A"|"B"), alpha, omega, k, rho {arg, coeffs},
///   T, dt, full_rate, x0 {z, y, eta, pi, vartheta}.
/// Missing sat_radius is derived from the steady-state orbit. Throws
/// ConfigError on malformed or inconsistent input.
Scenario parse_scenario(const std::string& json_text);

Scenario load_scenario(const std::string& path);

/// Steady-state oracle for the scenario's plant parameters.
SteadyState oracle_for(const Scenario& sc);

/// t, e, y, v1.., z1.., eta1.., pi, vt1.., u with 9 significant digits.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

struct SweepRecord {
    double omega = 0.0;
    double ultimate_bound_e = 0.0;
    double sup_dev_vs_averaged = 0.0;
    double vartheta_err_final = 0.0;
};

/// One closed-loop run per omega: tail bound of |e|, sup deviation from the
/// averaged trajectory on the recorded grid, and the final estimator error.
std::vector<SweepRecord> run_sweep(const Scenario& sc, const std::vector<double>& omegas,
                                   double tail_fraction = 0.2);

void write_sweep_csv(const std::vector<SweepRecord>& records, const std::string& path);

void write_deviation_csv(const std::vector<DeviationRecord>& records, const std::string& path);

/// Harmonic table of the steady-state signals, one row per (signal,
/// component, frequency).
void write_harmonics_csv(const SteadyState& ss, const std::string& path);

std::vector<double> parse_omega_list(const std::string& csv);

}  // namespace escreg
