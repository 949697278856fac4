#include "escreg/harmonic.hpp"

#include <algorithm>
#include <cmath>

namespace escreg {

namespace {

double freq_tol(const std::vector<HarmonicTerm>& terms) {
    double mx = 1.0;
    for (const auto& t : terms) mx = std::max(mx, std::abs(t.omega));
    return 1e-9 * mx;
}

// Sort by frequency and merge lines closer than the tolerance. Zero-amplitude
// lines survive on purpose.
std::vector<HarmonicTerm> normalized(std::vector<HarmonicTerm> terms, Eigen::Index dim) {
    const double tol = freq_tol(terms);
    std::sort(terms.begin(), terms.end(),
              [](const HarmonicTerm& a, const HarmonicTerm& b) { return a.omega < b.omega; });
    std::vector<HarmonicTerm> out;
    for (auto& t : terms) {
        if (!out.empty() && std::abs(out.back().omega - t.omega) <= tol) {
            out.back().cos_coeff += t.cos_coeff;
            out.back().sin_coeff += t.sin_coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    for (auto& t : out) {
        if (t.cos_coeff.size() == 0) t.cos_coeff = Vector::Zero(dim);
        if (t.sin_coeff.size() == 0) t.sin_coeff = Vector::Zero(dim);
    }
    return out;
}

}  // namespace

Vector HarmonicSignal::eval(double t) const {
    Vector x = Vector::Zero(dim);
    for (const auto& term : terms) {
        x += term.cos_coeff * std::cos(term.omega * t) +
             term.sin_coeff * std::sin(term.omega * t);
    }
    return x;
}

double HarmonicSignal::eval_scalar(double t) const {
    if (dim != 1) throw std::invalid_argument("eval_scalar: signal is not scalar");
    return eval(t)(0);
}

HarmonicSignal HarmonicSignal::derivative() const {
    HarmonicSignal d;
    d.dim = dim;
    for (const auto& term : terms) {
        if (term.omega == 0.0) continue;  // constants drop out
        d.terms.push_back({term.omega, term.sin_coeff * term.omega,
                           -term.cos_coeff * term.omega});
    }
    return d;
}

HarmonicSignal HarmonicSignal::component(Eigen::Index i) const {
    HarmonicSignal c;
    c.dim = 1;
    for (const auto& term : terms) {
        c.terms.push_back({term.omega, Vector::Constant(1, term.cos_coeff(i)),
                           Vector::Constant(1, term.sin_coeff(i))});
    }
    return c;
}

HarmonicSignal harmonic_zero(Eigen::Index dim) {
    return {dim, {}};  // no lines at all, so it cannot leak spurious harmonics
}

HarmonicSignal harmonic_constant(const Vector& c) {
    return {c.size(), {{0.0, c, Vector::Zero(c.size())}}};
}

HarmonicSignal add(const HarmonicSignal& a, const HarmonicSignal& b) {
    if (a.dim != b.dim) throw std::invalid_argument("add: dimension mismatch");
    std::vector<HarmonicTerm> terms = a.terms;
    terms.insert(terms.end(), b.terms.begin(), b.terms.end());
    return {a.dim, normalized(std::move(terms), a.dim)};
}

HarmonicSignal scale(const HarmonicSignal& a, double factor) {
    HarmonicSignal out = a;
    for (auto& t : out.terms) {
        t.cos_coeff *= factor;
        t.sin_coeff *= factor;
    }
    return out;
}

HarmonicSignal linear_map(const Matrix& A, const HarmonicSignal& a) {
    if (A.cols() != a.dim) throw std::invalid_argument("linear_map: dimension mismatch");
    HarmonicSignal out;
    out.dim = A.rows();
    for (const auto& t : a.terms) {
        out.terms.push_back({t.omega, A * t.cos_coeff, A * t.sin_coeff});
    }
    return out;
}

HarmonicSignal dot(const Vector& v, const HarmonicSignal& a) {
    return linear_map(v.transpose(), a);
}

HarmonicSignal multiply(const HarmonicSignal& a, const HarmonicSignal& b) {
    if (a.dim != 1 || b.dim != 1) {
        throw std::invalid_argument("multiply: defined for scalar signals");
    }
    std::vector<HarmonicTerm> terms;
    auto push = [&terms](double omega, double dc, double ds) {
        if (omega < 0.0) {
            omega = -omega;
            ds = -ds;
        }
        HarmonicTerm t;
        t.omega = omega;
        t.cos_coeff = Vector::Constant(1, dc);
        t.sin_coeff = Vector::Constant(1, omega == 0.0 ? 0.0 : ds);
        terms.push_back(std::move(t));
    };
    for (const auto& ta : a.terms) {
        const double c1 = ta.cos_coeff(0), s1 = ta.sin_coeff(0);
        for (const auto& tb : b.terms) {
            const double c2 = tb.cos_coeff(0), s2 = tb.sin_coeff(0);
            const double wsum = ta.omega + tb.omega;
            const double wdif = ta.omega - tb.omega;
            // cos cos, sin sin -> cosines; cos sin, sin cos -> sines
            push(wdif, 0.5 * (c1 * c2 + s1 * s2), 0.5 * (s1 * c2 - c1 * s2));
            push(wsum, 0.5 * (c1 * c2 - s1 * s2), 0.5 * (c1 * s2 + s1 * c2));
        }
    }
    return {1, normalized(std::move(terms), 1)};
}

HarmonicSignal stack(const std::vector<HarmonicSignal>& parts) {
    if (parts.empty()) throw std::invalid_argument("stack: empty");
    // Union of frequencies, each part contributes its row.
    std::vector<HarmonicTerm> all;
    const auto dim = static_cast<Eigen::Index>(parts.size());
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (parts[i].dim != 1) throw std::invalid_argument("stack: parts must be scalar");
        for (const auto& t : parts[i].terms) {
            HarmonicTerm row;
            row.omega = t.omega;
            row.cos_coeff = Vector::Zero(dim);
            row.sin_coeff = Vector::Zero(dim);
            row.cos_coeff(i) = t.cos_coeff(0);
            row.sin_coeff(i) = t.sin_coeff(0);
            all.push_back(std::move(row));
        }
    }
    return {dim, normalized(std::move(all), dim)};
}

HarmonicSignal linear_harmonic_steady_state(const Matrix& F, const HarmonicSignal& forcing) {
    const auto n = F.rows();
    if (F.cols() != n || forcing.dim != n) {
        throw std::invalid_argument("linear_harmonic_steady_state: dimension mismatch");
    }
    HarmonicSignal out;
    out.dim = n;
    for (const auto& term : forcing.terms) {
        if (term.omega == 0.0) {
            out.terms.push_back({0.0, solve_linear(-F, term.cos_coeff), Vector::Zero(n)});
            continue;
        }
        // x = p cos + q sin solves x' = F x + forcing:
        //   omega q - F p = c,  -omega p - F q = s
        Matrix A = Matrix::Zero(2 * n, 2 * n);
        A.topLeftCorner(n, n) = -F;
        A.topRightCorner(n, n) = term.omega * Matrix::Identity(n, n);
        A.bottomLeftCorner(n, n) = -term.omega * Matrix::Identity(n, n);
        A.bottomRightCorner(n, n) = -F;
        Vector rhs(2 * n);
        rhs.head(n) = term.cos_coeff;
        rhs.tail(n) = term.sin_coeff;
        const Vector pq = solve_linear(A, rhs);
        out.terms.push_back({term.omega, pq.head(n), pq.tail(n)});
    }
    return out;
}

SteadyState example_steady_input(double sigma, const Vector& w, double b,
                                 const Vector& v0, const InternalModel& model) {
    if (sigma <= 0.0) throw std::invalid_argument("example_steady_input: sigma must be positive");
    if (b == 0.0) throw std::invalid_argument("example_steady_input: b must be nonzero");
    if (w.size() != 2 || v0.size() != 2) {
        throw std::invalid_argument("example_steady_input: w and v0 must have dimension 2");
    }
    // v(t) = exp(S t) v0 with S = [[0, sigma], [-sigma, 0]]:
    //   v1 = v01 cos + v02 sin,  v2 = v02 cos - v01 sin
    HarmonicSignal v;
    v.dim = 2;
    v.terms.push_back({sigma, (Vector(2) << v0(0), v0(1)).finished(),
                       (Vector(2) << v0(1), -v0(0)).finished()});

    const HarmonicSignal v1 = v.component(0);
    // z-regulator equation for the benchmark: z' = -z + col(0, v1) on the
    // zero-error manifold (the sin^2(y - v1) feed vanishes at y = v1).
    const HarmonicSignal z_forcing = stack({harmonic_zero(1), v1});
    const HarmonicSignal z_ss =
        linear_harmonic_steady_state(-Matrix::Identity(2, 2), z_forcing);

    // u = b^{-1} (d v1/dt - z2 + w1 v1 + w2 v1^3); the cube contributes the
    // 3 sigma line even when w2 = 0 (zero-amplitude, kept for the PE check).
    const HarmonicSignal cube = multiply(multiply(v1, v1), v1);
    HarmonicSignal u = v1.derivative();
    u = add(u, scale(z_ss.component(1), -1.0));
    u = add(u, scale(v1, w(0)));
    u = add(u, scale(cube, w(1)));
    u = scale(u, 1.0 / b);

    std::vector<HarmonicSignal> xi_parts;
    xi_parts.push_back(u);
    for (Eigen::Index k = 1; k < model.n; ++k) {
        xi_parts.push_back(xi_parts.back().derivative());
    }
    const HarmonicSignal xi = stack(xi_parts);
    const HarmonicSignal theta = linear_map(model.T, xi);
    const HarmonicSignal varpi = dot(model.varrho, theta);

    SteadyState ss;
    ss.z_ss = z_ss;
    ss.u_ss = u;
    ss.xi_ss = xi;
    ss.theta_ss = theta;
    ss.varpi_ss = varpi;
    ss.vartheta_ss = model.varrho;
    return ss;
}

bool assumption3_check(const SteadyState& ss) {
    for (const auto& term : ss.u_ss.terms) {
        const double mag = std::sqrt(term.cos_coeff.squaredNorm() + term.sin_coeff.squaredNorm());
        if (mag <= 1e-9) return false;
    }
    return !ss.u_ss.terms.empty();
}

double steady_sat_radius(const SteadyState& ss, double sigma, double safety) {
    const double period = 2.0 * M_PI / sigma;
    const int samples = 2048;
    const double rho2 = ss.vartheta_ss.squaredNorm();
    double mx = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = period * i / samples;
        mx = std::max(mx, ss.theta_ss.eval(t).squaredNorm() + rho2);
    }
    return safety * mx;
}

}  // namespace escreg
