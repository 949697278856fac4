#include "escreg/plant.hpp"

#include <cmath>

namespace escreg {

Exosystem make_exosystem(double sigma, const Vector& v0) {
    if (sigma <= 0.0) throw ConfigError("make_exosystem: sigma must be positive");
    if (v0.size() != 2) throw ConfigError("make_exosystem: v0 must have dimension 2");
    Exosystem exo;
    exo.sigma = sigma;
    exo.S = (Matrix(2, 2) << 0.0, sigma, -sigma, 0.0).finished();
    exo.v0 = v0;
    return exo;
}

Vector exosystem_rhs(const Vector& v, const Exosystem& exo) {
    if (v.size() != exo.S.rows()) throw std::invalid_argument("exosystem_rhs: dimension mismatch");
    return exo.S * v;
}

PlantState plant_rhs(const PlantState& state, const Vector& v, double u,
                     const PlantModel& model) {
    const Matrix F = model.F(model.w);
    const Vector G = model.G(state.y, v, model.w);
    const Vector D1 = model.D1(v, model.w);
    const RowVector H = model.H(model.w);
    const double K = model.K(state.y, v, model.w);
    const double b = model.b(v, model.w);
    const double D2 = model.D2(v, model.w);

    PlantState d;
    d.z = F * state.z + G * state.y + D1;
    d.y = H.dot(state.z) + K * state.y + b * u + D2;
    if (!d.z.allFinite() || !std::isfinite(d.y)) {
        throw NonFinite("plant_rhs: evaluator returned NaN or infinity");
    }
    return d;
}

PlantModel example_plant(const Vector& w, double b_const) {
    if (w.size() != 2 || !w.allFinite()) {
        throw ConfigError("example_plant: w must be a finite 2-vector");
    }
    if (b_const == 0.0) throw ConfigError("example_plant: b must be nonzero");
    PlantModel p;
    p.nz = 2;
    p.w = w;
    p.F = [](const Vector&) { return -Matrix::Identity(2, 2); };
    p.G = [](double y, const Vector& v, const Vector&) {
        const double s = std::sin(y - v(0));
        return (Vector(2) << s * s, 1.0).finished();
    };
    p.D1 = [](const Vector&, const Vector&) { return Vector::Zero(2); };
    p.H = [](const Vector&) { return (RowVector(2) << 0.0, 1.0).finished(); };
    p.K = [](double y, const Vector&, const Vector& w) { return -w(0) - w(1) * y * y; };
    p.b = [b_const](const Vector&, const Vector&) { return b_const; };
    p.D2 = [](const Vector&, const Vector&) { return 0.0; };
    p.q = [](const Vector& v, const Vector&) { return v(0); };
    return p;
}

bool check_minimum_phase(const PlantModel& model) {
    return is_hurwitz(model.F(model.w));
}

bool check_control_gain(const PlantModel& model, double radius, int samples) {
    for (int i = 0; i < samples; ++i) {
        const double ang = 2.0 * M_PI * i / samples;
        for (double r : {0.0, 0.5 * radius, radius}) {
            const Vector v = (Vector(2) << r * std::cos(ang), r * std::sin(ang)).finished();
            const double b = model.b(v, model.w);
            if (!(b * b > 0.0)) return false;
        }
    }
    return true;
}

bool check_exosystem(const Exosystem& exo) {
    return eig_imaginary_distinct(exo.S);
}

}  // namespace escreg
