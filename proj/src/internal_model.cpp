#include "escreg/internal_model.hpp"

#include <cmath>

namespace escreg {

Vector min_poly_coeffs(const Vector& frequencies, bool include_zero) {
    const auto nf = frequencies.size();
    for (Eigen::Index i = 0; i < nf; ++i) {
        if (!(frequencies(i) > 0.0)) {
            throw std::invalid_argument("min_poly_coeffs: frequencies must be positive");
        }
        for (Eigen::Index j = i + 1; j < nf; ++j) {
            if (std::abs(frequencies(i) - frequencies(j)) <=
                1e-9 * std::max(1.0, std::abs(frequencies(i)))) {
                throw DuplicateFrequency("min_poly_coeffs: frequencies " +
                                         std::to_string(i) + " and " + std::to_string(j));
            }
        }
    }
    // Ascending coefficients of prod (s^2 + w^2), monic.
    Vector p = Vector::Ones(1);
    for (Eigen::Index i = 0; i < nf; ++i) {
        Vector next = Vector::Zero(p.size() + 2);
        const double w2 = frequencies(i) * frequencies(i);
        next.head(p.size()) += w2 * p;
        next.tail(p.size()) += p;
        p = next;
    }
    if (include_zero) {
        Vector next = Vector::Zero(p.size() + 1);
        next.tail(p.size()) = p;
        p = next;
    }
    return p.head(p.size() - 1);  // drop the leading 1, keep (a_1, ..., a_n)
}

GeneratorSpec make_generator(const Vector& a) {
    GeneratorSpec gen;
    gen.n = a.size();
    gen.a = a;
    gen.Phi = companion(a);
    gen.Gamma = RowVector::Zero(gen.n);
    gen.Gamma(0) = 1.0;
    if (!eig_imaginary_distinct(gen.Phi)) {
        throw ConfigError("make_generator: spectrum of Phi(a) is not distinct imaginary");
    }
    return gen;
}

Matrix build_T(const Vector& a, const Vector& m) {
    if (a.size() != m.size()) {
        throw std::invalid_argument("build_T: a and m sizes differ");
    }
    const auto n = a.size();
    const Matrix Phi = companion(a);
    const Vector varrho = m - a;
    Matrix Tinv(n, n);
    RowVector row = varrho.transpose() * (Phi + Matrix::Identity(n, n));
    for (Eigen::Index k = 0; k < n; ++k) {
        Tinv.row(k) = row;
        row = row * Phi;
    }
    try {
        return invert(Tinv);
    } catch (const SingularMatrix&) {
        throw SingularMatrix("build_T: T^{-1} singular ((Phi, varrho^T) not observable)");
    }
}

InternalModel make_internal_model(const Vector& a, const Vector& m, double Theta,
                                  double sat_radius) {
    if (Theta <= 0.0) throw ConfigError("make_internal_model: Theta must be positive");
    if (sat_radius <= 0.0) throw ConfigError("make_internal_model: sat_radius must be positive");
    const GeneratorSpec gen = make_generator(a);  // validates the a-spectrum
    InternalModel model;
    model.n = m.size();
    model.m = m;
    model.M = companion(m);
    if (!is_hurwitz(model.M)) {
        throw ConfigError("make_internal_model: M = companion(m) is not Hurwitz");
    }
    model.N = Vector::Zero(model.n);
    model.N(model.n - 1) = 1.0;
    model.Theta = Theta;
    model.varrho = m - a;
    model.T = build_T(a, m);
    model.sat_radius = sat_radius;
    if (sylvester_residual(model, gen) > 1e-9) {
        throw ConfigError("make_internal_model: Sylvester identity residual above 1e-9");
    }
    return model;
}

double sylvester_residual(const InternalModel& model, const GeneratorSpec& gen) {
    const Matrix lhs = model.T * gen.Phi - model.M * model.T;
    const Matrix rhs = model.N * (model.varrho.transpose() * model.T);
    return (lhs - rhs).norm();
}

double chi(Eigen::Ref<const Vector> theta_hat, Eigen::Ref<const Vector> vartheta,
           const InternalModel& model) {
    const auto n = model.n;
    if (theta_hat.size() != n || vartheta.size() != n) {
        throw std::invalid_argument("chi: dimension mismatch");
    }
    // Phi(m - vartheta) theta, using the companion structure directly:
    // rows 0..n-2 shift, last row is -(m - vartheta)^T theta.
    double acc = 0.0;
    double last = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        last -= (model.m(i) - vartheta(i)) * theta_hat(i);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const double phi_theta_i = (i + 1 < n) ? theta_hat(i + 1) : last;
        acc += vartheta(i) * (phi_theta_i + theta_hat(i));
    }
    return acc;
}

double bump_psi(double s) {
    // exp(-1/s) underflows well before s = 1e-8; the guard keeps 1/s finite.
    const auto psi = [](double x) { return x <= 1e-8 ? 0.0 : std::exp(-1.0 / x); };
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double num = psi(s);
    const double den = num + psi(1.0 - s);
    return den == 0.0 ? 0.0 : num / den;
}

double chi_s(Eigen::Ref<const Vector> eta, Eigen::Ref<const Vector> vartheta,
             const InternalModel& model) {
    const double nrm2 = eta.squaredNorm() + vartheta.squaredNorm();
    const double blend = bump_psi(model.sat_radius + 1.0 - nrm2);
    if (blend == 0.0) return 0.0;
    return chi(eta, vartheta, model) * blend;
}

}  // namespace escreg
