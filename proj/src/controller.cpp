#include "escreg/controller.hpp"

#include <cmath>

namespace escreg {

double RhoPoly::eval(double s) const {
    double v = 0.0;
    for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i) {
        v = v * s + coeffs(i);
    }
    return v;
}

double RhoPoly::integral(double x) const {
    double v = 0.0;
    for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i) {
        v = v * x + coeffs(i) / static_cast<double>(i + 1);
    }
    return v * x;
}

RhoPoly make_rho(const Vector& coeffs) {
    if (coeffs.size() < 1) throw ConfigError("make_rho: empty coefficient list");
    if (coeffs(0) < 1.0) throw ConfigError("make_rho: constant term must be >= 1");
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        if (coeffs(i) < 0.0) throw ConfigError("make_rho: coefficients must be nonnegative");
    }
    return RhoPoly{coeffs};
}

DitherConfig make_dither_config(double alpha, double omega, double k, const RhoPoly& rho) {
    if (alpha <= 0.0) throw ConfigError("make_dither_config: alpha must be positive");
    if (omega <= 0.0) throw ConfigError("make_dither_config: omega must be positive");
    if (k <= 0.0) throw ConfigError("make_dither_config: k must be positive");
    return DitherConfig{alpha, omega, k, rho};
}

CompensatorState zero_compensator(Eigen::Index n) {
    return {Vector::Zero(n), 0.0, Vector::Zero(n)};
}

double control_input(double t, double e, const CompensatorState& comp,
                     const DitherConfig& cfg, ControllerVariant variant,
                     const InternalModel& model) {
    const double amp = std::sqrt(cfg.alpha * cfg.omega);
    double dither;
    if (variant == ControllerVariant::A) {
        dither = amp * std::cos(cfg.omega * t + cfg.k * e * e) * cfg.rho.eval(e);
    } else {
        dither = amp * std::cos(cfg.omega * t + cfg.k * cfg.rho.integral(e * e));
    }
    return dither + chi_s(comp.eta, comp.vartheta, model);
}

CompensatorState compensator_rhs(const CompensatorState& comp, double u,
                                 const InternalModel& model) {
    const auto n = model.n;
    if (comp.eta.size() != n || comp.vartheta.size() != n) {
        throw std::invalid_argument("compensator_rhs: dimension mismatch");
    }
    CompensatorState d;
    d.eta = model.M * comp.eta + model.N * comp.pi;
    d.pi = -comp.pi + u;
    d.vartheta = -model.Theta * comp.eta * (comp.eta.dot(comp.vartheta) - comp.pi);
    return d;
}

}  // namespace escreg
