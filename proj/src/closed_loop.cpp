#include "escreg/closed_loop.hpp"

#include <cmath>
#include <memory>

namespace escreg {

StateLayout Scenario::layout() const {
    return StateLayout{plant.nz, exo.S.rows(), model.n};
}

double Scenario::step() const {
    return dt > 0.0 ? dt : 2.0 * M_PI / (64.0 * cfg.omega);
}

namespace {

enum class LoopMode { Dithered, Drift, Averaged };

VectorField make_loop_field(const Scenario& sc, LoopMode mode) {
    const StateLayout lay = sc.layout();
    if (sc.x0.size() != lay.dim()) {
        throw ConfigError("closed loop: x0 has wrong dimension");
    }
    const Matrix F = sc.plant.F(sc.plant.w);
    const RowVector H = sc.plant.H(sc.plant.w);
    const Matrix S = sc.exo.S;
    const PlantModel plant = sc.plant;
    const InternalModel model = sc.model;
    const DitherConfig cfg = sc.cfg;
    const ControllerVariant variant = sc.variant;

    VectorField vf;
    vf.dim = lay.dim();
    // The matvecs are written out by hand and v is materialized once per call:
    // Eigen's dynamic gemv dispatch and Block-to-Vector conversions cost more
    // than the arithmetic at these sizes, and this lambda runs hundreds of
    // millions of times in the omega sweeps. The scratch buffer makes a field
    // instance single-threaded.
    auto v_buf = std::make_shared<Vector>(Vector::Zero(lay.nv));
    vf.eval_into = [=](const Vector& x, double t, Vector& dx) {
        const auto& w = plant.w;
        const auto nz = lay.nz, nv = lay.nv, n = lay.n;
        const auto zi = lay.z(), vi = lay.v(), ei = lay.eta(), vti = lay.vartheta();
        const double y = x(lay.y());
        Vector& v = *v_buf;
        v = x.segment(vi, nv);
        const auto eta = x.segment(ei, n);
        const auto vt = x.segment(vti, n);
        const double pi = x(lay.pi());

        const double b = plant.b(v, w);
        const double e = y - plant.q(v, w);
        double u = chi_s(eta, vt, model);
        switch (mode) {
            case LoopMode::Dithered: {
                const double amp = std::sqrt(cfg.alpha * cfg.omega);
                if (variant == ControllerVariant::A) {
                    u += amp * std::cos(cfg.omega * t + cfg.k * e * e) * cfg.rho.eval(e);
                } else {
                    u += amp * std::cos(cfg.omega * t + cfg.k * cfg.rho.integral(e * e));
                }
                break;
            }
            case LoopMode::Drift:
                break;
            case LoopMode::Averaged: {
                if (variant == ControllerVariant::A) {
                    const double r = cfg.rho.eval(e);
                    u += -cfg.k * cfg.alpha * b * r * r * e;
                } else {
                    u += -cfg.k * cfg.alpha * b * cfg.rho.eval(e * e) * e;
                }
                break;
            }
        }

        dx.resize(lay.dim());
        const Vector G = plant.G(y, v, w);
        const Vector D1 = plant.D1(v, w);
        double hz = 0.0;
        for (Eigen::Index i = 0; i < nz; ++i) {
            double acc = G(i) * y + D1(i);
            for (Eigen::Index j = 0; j < nz; ++j) acc += F(i, j) * x(zi + j);
            dx(zi + i) = acc;
            hz += H(i) * x(zi + i);
        }
        dx(lay.y()) = hz + plant.K(y, v, w) * y + b * u + plant.D2(v, w);
        for (Eigen::Index i = 0; i < nv; ++i) {
            double acc = 0.0;
            for (Eigen::Index j = 0; j < nv; ++j) acc += S(i, j) * x(vi + j);
            dx(vi + i) = acc;
        }
        // M is companion(m): rows shift, last row is -m^T eta; N = e_n.
        double last = pi;
        double mismatch = -pi;
        for (Eigen::Index j = 0; j < n; ++j) {
            last -= model.m(j) * eta(j);
            mismatch += eta(j) * vt(j);
        }
        for (Eigen::Index i = 0; i + 1 < n; ++i) dx(ei + i) = eta(i + 1);
        dx(ei + n - 1) = last;
        dx(lay.pi()) = -pi + u;
        for (Eigen::Index j = 0; j < n; ++j) {
            dx(vti + j) = -model.Theta * mismatch * eta(j);
        }
    };
    return vf;
}

}  // namespace

VectorField make_dithered_field(const Scenario& sc) {
    return make_loop_field(sc, LoopMode::Dithered);
}

VectorField make_drift_field(const Scenario& sc) {
    return make_loop_field(sc, LoopMode::Drift);
}

DitherPair make_dither_pair(const Scenario& sc) {
    const StateLayout lay = sc.layout();
    const PlantModel plant = sc.plant;
    const DitherConfig cfg = sc.cfg;
    const ControllerVariant variant = sc.variant;

    // u = amp(e) cos(omega t + phase(e)) expands into the cos/sin pair
    //   g1 = amp cos(phase) B,  g2 = -amp sin(phase) B,
    // where B has b(v, w) in the y slot and 1 in the pi slot.
    auto component = [=](bool cos_part) {
        return [=](const Vector& x, double /*t*/) {
            const auto v = x.segment(lay.v(), lay.nv);
            const double e = x(lay.y()) - plant.q(v, plant.w);
            const double amp = std::sqrt(cfg.alpha * cfg.omega);
            double envelope, phase;
            if (variant == ControllerVariant::A) {
                envelope = amp * cfg.rho.eval(e);
                phase = cfg.k * e * e;
            } else {
                envelope = amp;
                phase = cfg.k * cfg.rho.integral(e * e);
            }
            const double scalar =
                cos_part ? envelope * std::cos(phase) : -envelope * std::sin(phase);
            Vector g = Vector::Zero(lay.dim());
            g(lay.y()) = plant.b(v, plant.w) * scalar;
            g(lay.pi()) = scalar;
            return g;
        };
    };
    return DitherPair{make_field(lay.dim(), component(true)),
                      make_field(lay.dim(), component(false))};
}

VectorField make_averaged_closed_loop(const Scenario& sc) {
    return make_loop_field(sc, LoopMode::Averaged);
}

Scenario with_omega(Scenario sc, double omega) {
    sc.cfg.omega = omega;
    sc.dt = 0.0;
    return sc;
}

}  // namespace escreg
