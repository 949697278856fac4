// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Runs against the benchmark scenario shipped in scenarios/.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "escreg/scenario_io.hpp"

using namespace escreg;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    int id;
    std::string label;
    Clock::time_point start = Clock::now();

    Criterion(int id_, std::string label_) : id(id_), label(std::move(label_)) {}

    void finish(bool pass, const std::string& detail, double budget_s = 0.0) {
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        bool ok = pass;
        std::string note = detail;
        if (budget_s > 0.0 && elapsed > budget_s) {
            ok = false;
            note += " [over budget " + std::to_string(budget_s) + "s]";
        }
        std::printf("[%s] criterion %d: %s (%s) [%.1fs]\n", ok ? "PASS" : "FAIL", id,
                    label.c_str(), note.c_str(), elapsed);
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

std::string scenario_file() {
    return std::string(ESCREG_SCENARIO_DIR) + "/benchmark.json";
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// --- criterion 1: internal-model algebra ---------------------------------
void criterion1() {
    Criterion c(1, "internal-model algebra residuals");
    const double sigma = M_PI / 12.0;
    const Vector a = min_poly_coeffs((Vector(2) << sigma, 3.0 * sigma).finished());
    const Vector m = (Vector(4) << 24.0, 50.0, 35.0, 10.0).finished();
    const GeneratorSpec gen = make_generator(a);
    const InternalModel model = make_internal_model(a, m, 10.0, 6600.0);
    const double syl = sylvester_residual(model, gen);
    const double comm = (model.T * gen.Phi * invert(model.T) - gen.Phi).norm();
    c.finish(syl <= 1e-9 && comm <= 1e-8,
             "sylvester=" + fmt(syl) + " commutation=" + fmt(comm), 1.0);
}

// --- criterion 2: oracle closure ------------------------------------------
void criterion2() {
    Criterion c(2, "steady-state oracle closes through chi and the compensator dynamics");
    const Scenario sc = load_scenario(scenario_file());
    const SteadyState ss = oracle_for(sc);
    const HarmonicSignal dtheta = ss.theta_ss.derivative();
    const double period = 2.0 * M_PI / sc.exo.sigma;
    double max_chi_err = 0.0, max_ode_res = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = period * i / 1000.0;
        const Vector theta = ss.theta_ss.eval(t);
        max_chi_err = std::max(max_chi_err,
                               std::abs(chi(theta, sc.model.varrho, sc.model) -
                                        ss.u_ss.eval_scalar(t)));
        const Vector res =
            dtheta.eval(t) - sc.model.M * theta - sc.model.N * ss.varpi_ss.eval_scalar(t);
        max_ode_res = std::max(max_ode_res, res.norm());
    }
    c.finish(max_chi_err <= 1e-8 && max_ode_res <= 1e-8,
             "chi_err=" + fmt(max_chi_err) + " ode_res=" + fmt(max_ode_res), 5.0);
}

// --- criterion 3: averaging equivalence -----------------------------------
void criterion3() {
    Criterion c(3, "numeric bracket average equals the analytic averaged loop");
    Scenario sc = load_scenario(scenario_file());
    sc.cfg.k = 2.5;
    sc.cfg.alpha = 1.0;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> unif(-0.75, 0.75);
    double worst = 0.0;
    for (auto variant : {ControllerVariant::A, ControllerVariant::B}) {
        sc.variant = variant;
        const VectorField drift = make_drift_field(sc);
        const VectorField numeric =
            averaged_field(drift, {make_dither_pair(sc)}, sc.cfg.omega);
        const VectorField analytic = make_averaged_closed_loop(sc);
        for (int rep = 0; rep < 100; ++rep) {
            Vector x(sc.layout().dim());
            for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = unif(rng);
            const double t = 0.1 * rep;
            const Vector fn = numeric.eval(x, t);
            const Vector fa = analytic.eval(x, t);
            worst = std::max(worst, (fn - fa).norm() / (1.0 + fa.norm()));
        }
    }
    c.finish(worst <= 1e-6, "max_rel_err=" + fmt(worst), 30.0);
}

// --- criterion 4: convergence property -------------------------------------
void criterion4() {
    Criterion c(4, "dithered-to-averaged deviations shrink along the omega ladder");
    const std::vector<double> omegas = {100.0, 400.0, 1600.0};
    bool pass = true;
    std::string detail;

    {  // scalar toy, variant-A law with rho(x) = x^2 + 1 and b = -1
        const double k = 1.0, alpha = 1.0, b = -1.0;
        auto family = [&](double omega) {
            return make_field(1, [=](const Vector& x, double t) {
                const double e = x(0);
                const double rho = e * e + 1.0;
                return Vector(Vector::Constant(
                    1, b * std::sqrt(alpha * omega) * rho * std::cos(omega * t + k * e * e)));
            });
        };
        const VectorField averaged = make_field(1, [=](const Vector& x, double) {
            const double e = x(0);
            const double rho = e * e + 1.0;
            return Vector(Vector::Constant(1, -k * alpha * b * b * rho * rho * e));
        });
        const auto recs =
            convergence_test(family, averaged, Vector::Constant(1, 1.0), 5.0, omegas);
        detail += "toy=";
        for (std::size_t i = 0; i < recs.size(); ++i) {
            detail += fmt(recs[i].sup_deviation) + (i + 1 < recs.size() ? "/" : "");
            if (i > 0) {
                pass = pass && recs[i].sup_deviation < recs[i - 1].sup_deviation &&
                       recs[i].sup_deviation <= 0.7 * recs[i - 1].sup_deviation;
            }
        }
    }

    {  // benchmark closed loop, gentle gains so the averaged regime is clean
        Scenario sc = load_scenario(scenario_file());
        sc.cfg.k = 2.5;
        sc.cfg.alpha = 1.0;
        sc.cfg.rho = make_rho((Vector(3) << 1.0, 0.0, 1.0).finished());
        sc.T = 40.0;
        auto family = [&sc](double omega) {
            return make_dithered_field(with_omega(sc, omega));
        };
        const auto recs = convergence_test(family, make_averaged_closed_loop(sc), sc.x0,
                                           sc.T, omegas);
        detail += " loop=";
        for (std::size_t i = 0; i < recs.size(); ++i) {
            detail += fmt(recs[i].sup_deviation) + (i + 1 < recs.size() ? "/" : "");
            if (i > 0) {
                pass = pass && recs[i].sup_deviation < recs[i - 1].sup_deviation &&
                       recs[i].sup_deviation <= 0.7 * recs[i - 1].sup_deviation;
            }
        }
    }
    c.finish(pass, detail, 120.0);
}

// --- criteria 5 and 6: regulation trend, both control directions ----------
void criterion56(int id, double b) {
    Criterion c(id, std::string("regulation trend with b = ") + (b < 0 ? "-1" : "+1"));
    Scenario sc = load_scenario(scenario_file());
    sc.plant = example_plant(sc.plant.w, b);
    sc.cfg.k = 500.0;
    sc.cfg.alpha = 0.005;  // k alpha = 2.5
    sc.cfg.rho = make_rho((Vector(3) << 20.0, 0.0, 1.0).finished());
    sc.T = 240.0;
    const std::vector<double> omegas = {50.0, 100.0, 200.0, 400.0};
    std::vector<double> bounds;
    for (double omega : omegas) {
        const Trajectory traj = integrate(with_omega(sc, omega));
        bounds.push_back(ultimate_bound(traj, "e", 0.2));
    }
    bool pass = bounds.back() < 0.1;
    std::string detail = "ub=";
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        detail += fmt(bounds[i]) + (i + 1 < bounds.size() ? "/" : "");
        if (i > 0) pass = pass && bounds[i] <= bounds[i - 1];
    }
    c.finish(pass, detail, 300.0);
}

// --- criterion 7: estimator convergence ------------------------------------
void criterion7() {
    Criterion c(7, "estimator reaches a tenth of its initial error at omega = 400");
    Scenario sc = load_scenario(scenario_file());
    sc.cfg.k = 500.0;
    sc.cfg.alpha = 0.005;
    sc.cfg.rho = make_rho((Vector(3) << 20.0, 0.0, 1.0).finished());
    // theta(mu) is persistently exciting but its one-period gramian has
    // lambda_min ~ 3e-6 (the third-harmonic content of u is weak), so the
    // slow estimator modes decay at ~Theta lambda_min = 3e-5 per second and
    // the ten-fold contraction needs a long horizon.
    sc.T = 64000.0;
    sc.cfg.omega = 400.0;
    sc.dt = 0.0;
    const bool pe = assumption3_check(oracle_for(sc));
    const Trajectory traj = integrate(sc);
    const StateLayout lay = sc.layout();
    const Vector vt_final =
        traj.states.row(traj.states.rows() - 1).segment(lay.vartheta(), lay.n).transpose();
    const Vector vt_init = sc.x0.segment(lay.vartheta(), lay.n);
    const double err_final = (vt_final - sc.model.varrho).norm();
    const double err_init = (vt_init - sc.model.varrho).norm();
    c.finish(pe && err_final <= 0.1 * err_init,
             "pe=" + std::string(pe ? "yes" : "no") + " err_T=" + fmt(err_final) +
                 " err_0=" + fmt(err_init) + " T=" + fmt(sc.T));
}

// --- criterion 8: numerics --------------------------------------------------
void criterion8() {
    Criterion c(8, "RK4 order and Lyapunov solver on random Hurwitz matrices");
    const VectorField decay =
        make_field(1, [](const Vector& x, double) { return Vector(-x); });
    auto run = [&](double dt) {
        Vector x = Vector::Constant(1, 1.0);
        double t = 0.0;
        while (t < 1.0 - 1e-12) {
            x = rk4_step(decay, x, t, dt);
            t += dt;
        }
        return std::abs(x(0) - std::exp(-1.0));
    };
    const double ratio = run(0.02) / run(0.01);
    bool pass = ratio >= 14.0 && ratio <= 18.0;

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst_res = 0.0;
    bool pd = true;
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 5);
        Matrix G(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) G(i, j) = unif(rng);
        const double max_re = Eigen::EigenSolver<Matrix>(G).eigenvalues().real().maxCoeff();
        const Matrix F = G - (max_re + 0.5) * Matrix::Identity(n, n);
        const Matrix P = lyapunov_solve(F);
        worst_res = std::max(
            worst_res, (P * F + F.transpose() * P + Matrix::Identity(n, n)).norm());
        for (int k = 1; k <= n; ++k) {
            pd = pd && P.topLeftCorner(k, k).determinant() > 0.0;
        }
    }
    pass = pass && worst_res <= 1e-9 && pd;
    c.finish(pass,
             "rk4_ratio=" + fmt(ratio) + " lyap_res=" + fmt(worst_res) +
                 " pd=" + (pd ? std::string("yes") : std::string("no")));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion56(5, -1.0);
    criterion56(6, 1.0);
    criterion7();
    criterion8();
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
