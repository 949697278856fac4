#include "escreg/sim.hpp"

#include <cmath>

namespace escreg {

namespace {

constexpr double kDivergenceThreshold = 1e6;

double control_at(const Scenario& sc, const StateLayout& lay, const Vector& x, double t) {
    CompensatorState comp{x.segment(lay.eta(), lay.n), x(lay.pi()),
                          x.segment(lay.vartheta(), lay.n)};
    const auto v = x.segment(lay.v(), lay.nv);
    const double e = x(lay.y()) - sc.plant.q(v, sc.plant.w);
    return control_input(t, e, comp, sc.cfg, sc.variant, sc.model);
}

}  // namespace

Vector rk4_step(const VectorField& field, const Vector& x, double t, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("rk4_step: dt must be positive");
    const Vector k1 = field.eval(x, t);
    const Vector k2 = field.eval(x + 0.5 * dt * k1, t + 0.5 * dt);
    const Vector k3 = field.eval(x + 0.5 * dt * k2, t + 0.5 * dt);
    const Vector k4 = field.eval(x + dt * k3, t + dt);
    Vector next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite()) throw NonFinite("rk4_step: non-finite state");
    return next;
}

Trajectory integrate(const Scenario& sc, Eigen::Index max_rows) {
    const StateLayout lay = sc.layout();
    const double dt = sc.step();
    const double dt_max = 2.0 * M_PI / (sc.cfg.omega * 40.0);
    if (dt > dt_max * (1.0 + 1e-12)) {
        throw ConfigError("integrate: dt exceeds 2 pi / (40 omega)");
    }
    if (sc.T <= 0.0) throw ConfigError("integrate: horizon T must be positive");

    const auto nsteps = static_cast<long>(std::ceil(sc.T / dt));
    const long stride =
        sc.full_rate ? 1 : std::max<long>(1, (nsteps + max_rows - 2) / (max_rows - 1));
    const auto nrec = static_cast<Eigen::Index>(nsteps / stride + 2);

    const VectorField field = make_dithered_field(sc);
    Trajectory traj;
    traj.layout = lay;
    traj.states.resize(nrec, lay.dim());
    traj.e.resize(nrec);
    traj.u.resize(nrec);

    Vector x = sc.x0;
    Vector k1(lay.dim()), k2(lay.dim()), k3(lay.dim()), k4(lay.dim()), xs(lay.dim());
    double t = 0.0;
    Eigen::Index row = 0;
    auto record = [&](double tr, const Vector& xr) {
        traj.times.push_back(tr);
        traj.states.row(row) = xr.transpose();
        traj.e(row) = xr(lay.y()) - sc.plant.q(xr.segment(lay.v(), lay.nv), sc.plant.w);
        traj.u(row) = control_at(sc, lay, xr, tr);
        ++row;
    };
    record(0.0, x);
    for (long i = 0; i < nsteps; ++i) {
        field.eval_into(x, t, k1);
        xs = x + 0.5 * dt * k1;
        field.eval_into(xs, t + 0.5 * dt, k2);
        xs = x + 0.5 * dt * k2;
        field.eval_into(xs, t + 0.5 * dt, k3);
        xs = x + dt * k3;
        field.eval_into(xs, t + dt, k4);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
        if (!x.allFinite()) throw NonFinite("integrate: non-finite state at t=" + std::to_string(t));
        if (x.norm() > kDivergenceThreshold) {
            throw IntegrationDiverged("integrate: state norm exceeded 1e6 at t=" +
                                      std::to_string(t));
        }
        if ((i + 1) % stride == 0 || i + 1 == nsteps) {
            record(t, x);
        }
    }
    traj.states.conservativeResize(row, lay.dim());
    traj.e.conservativeResize(row);
    traj.u.conservativeResize(row);
    return traj;
}

std::vector<std::string> Trajectory::channel_names() const {
    std::vector<std::string> names;
    for (Eigen::Index i = 0; i < layout.nz; ++i) names.push_back("z" + std::to_string(i + 1));
    names.push_back("y");
    for (Eigen::Index i = 0; i < layout.nv; ++i) names.push_back("v" + std::to_string(i + 1));
    for (Eigen::Index i = 0; i < layout.n; ++i) names.push_back("eta" + std::to_string(i + 1));
    names.push_back("pi");
    for (Eigen::Index i = 0; i < layout.n; ++i) names.push_back("vt" + std::to_string(i + 1));
    names.push_back("e");
    names.push_back("u");
    return names;
}

Vector Trajectory::channel(const std::string& name) const {
    if (name == "e") return e;
    if (name == "u") return u;
    const auto names = channel_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            return states.col(static_cast<Eigen::Index>(i));
        }
    }
    throw std::invalid_argument("Trajectory::channel: unknown channel " + name);
}

ErrorView error_view(const Trajectory& traj, const SteadyState& oracle, double b) {
    if (b == 0.0) throw std::invalid_argument("error_view: b must be nonzero");
    const StateLayout& lay = traj.layout;
    const auto nrec = static_cast<Eigen::Index>(traj.times.size());
    ErrorView ev;
    ev.times = traj.times;
    ev.zbar.resize(nrec, lay.nz);
    ev.etabar.resize(nrec, lay.n);
    ev.varthetabar.resize(nrec, lay.n);
    ev.pibar.resize(nrec);
    ev.e = traj.e;
    for (Eigen::Index i = 0; i < nrec; ++i) {
        const double t = traj.times[i];
        const Vector x = traj.states.row(i).transpose();
        ev.zbar.row(i) = (x.segment(lay.z(), lay.nz) - oracle.z_ss.eval(t)).transpose();
        ev.etabar.row(i) = (x.segment(lay.eta(), lay.n) - oracle.theta_ss.eval(t)).transpose();
        ev.varthetabar.row(i) =
            (x.segment(lay.vartheta(), lay.n) - oracle.vartheta_ss).transpose();
        ev.pibar(i) = x(lay.pi()) - oracle.varpi_ss.eval_scalar(t) - traj.e(i) / b;
    }
    return ev;
}

double ultimate_bound(const Trajectory& traj, const std::string& channel,
                      double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
        throw std::invalid_argument("ultimate_bound: tail_fraction must be in (0, 1)");
    }
    const Vector col = traj.channel(channel);
    const double t_end = traj.times.back();
    const double t_start = t_end * (1.0 - tail_fraction);
    double sup = 0.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
        if (traj.times[static_cast<std::size_t>(i)] >= t_start) {
            sup = std::max(sup, std::abs(col(i)));
        }
    }
    return sup;
}

}  // namespace escreg
