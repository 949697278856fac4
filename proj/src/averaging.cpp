#include "escreg/averaging.hpp"

#include <cmath>

namespace escreg {

Vector VectorField::eval(const Vector& x, double t) const {
    Vector out(dim);
    eval_into(x, t, out);
    return out;
}

Matrix VectorField::jac(const Vector& x, double t) const {
    if (jacobian) return jacobian(x, t);
    const double h = 1e-6 * (1.0 + x.norm());
    Matrix J(dim, dim);
    Vector xp = x, xm = x, fp(dim), fm(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        xp(j) += h;
        xm(j) -= h;
        eval_into(xp, t, fp);
        eval_into(xm, t, fm);
        J.col(j) = (fp - fm) / (2.0 * h);
        xp(j) = x(j);
        xm(j) = x(j);
    }
    return J;
}

VectorField make_field(Eigen::Index dim, std::function<Vector(const Vector&, double)> f) {
    VectorField vf;
    vf.dim = dim;
    vf.eval_into = [f = std::move(f)](const Vector& x, double t, Vector& out) {
        out = f(x, t);
    };
    return vf;
}

VectorField make_field(Eigen::Index dim, std::function<Vector(const Vector&, double)> f,
                       std::function<Matrix(const Vector&, double)> jacobian) {
    VectorField vf = make_field(dim, std::move(f));
    vf.jacobian = std::move(jacobian);
    return vf;
}

Vector lie_bracket(const VectorField& gi, const VectorField& gj, const Vector& x, double t) {
    if (gi.dim != gj.dim || x.size() != gi.dim) {
        throw std::invalid_argument("lie_bracket: dimension mismatch");
    }
    const Vector fi = gi.eval(x, t);
    const Vector fj = gj.eval(x, t);
    const Vector out = gj.jac(x, t) * fi - gi.jac(x, t) * fj;
    if (!out.allFinite()) throw NonFinite("lie_bracket: non-finite result");
    return out;
}

VectorField averaged_field(const VectorField& f, const std::vector<DitherPair>& pairs,
                           double omega) {
    for (const auto& p : pairs) {
        if (p.g1.dim != f.dim || p.g2.dim != f.dim) {
            throw std::invalid_argument("averaged_field: dimension mismatch");
        }
    }
    VectorField out;
    out.dim = f.dim;
    out.eval_into = [f, pairs, omega](const Vector& x, double t, Vector& dx) {
        f.eval_into(x, t, dx);
        for (const auto& p : pairs) {
            dx += lie_bracket(p.g1, p.g2, x, t) / (2.0 * omega);
        }
    };
    return out;
}

namespace {

constexpr double kDivergenceThreshold = 1e6;

void rk4_inplace(const VectorField& f, Vector& x, double t, double dt, Vector& k1,
                 Vector& k2, Vector& k3, Vector& k4, Vector& xs) {
    f.eval_into(x, t, k1);
    xs = x + 0.5 * dt * k1;
    f.eval_into(xs, t + 0.5 * dt, k2);
    xs = x + 0.5 * dt * k2;
    f.eval_into(xs, t + 0.5 * dt, k3);
    xs = x + dt * k3;
    f.eval_into(xs, t + dt, k4);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::vector<DeviationRecord> convergence_test(
    const std::function<VectorField(double omega)>& dithered,
    const VectorField& averaged, const Vector& x0, double T,
    const std::vector<double>& omegas, int steps_per_period) {
    for (std::size_t i = 1; i < omegas.size(); ++i) {
        if (omegas[i] <= omegas[i - 1]) {
            throw std::invalid_argument("convergence_test: omegas must be increasing");
        }
    }
    std::vector<DeviationRecord> records;
    records.reserve(omegas.size());
    const auto dim = x0.size();
    Vector k1(dim), k2(dim), k3(dim), k4(dim), xs(dim);
    for (double omega : omegas) {
        const VectorField fast = dithered(omega);
        if (fast.dim != dim || averaged.dim != dim) {
            throw std::invalid_argument("convergence_test: dimension mismatch");
        }
        const double dt = 2.0 * M_PI / (omega * steps_per_period);
        const auto nsteps = static_cast<long>(std::ceil(T / dt));
        Vector xd = x0, xa = x0;
        double sup = 0.0;
        double t = 0.0;
        for (long i = 0; i < nsteps; ++i) {
            rk4_inplace(fast, xd, t, dt, k1, k2, k3, k4, xs);
            rk4_inplace(averaged, xa, t, dt, k1, k2, k3, k4, xs);
            t += dt;
            if (xd.norm() > kDivergenceThreshold || xa.norm() > kDivergenceThreshold) {
                throw IntegrationDiverged("convergence_test: state norm exceeded 1e6 at t=" +
                                          std::to_string(t) + " (omega=" + std::to_string(omega) + ")");
            }
            sup = std::max(sup, (xd - xa).norm());
        }
        records.push_back({omega, sup, (xd - xa).norm()});
    }
    return records;
}

}  // namespace escreg
