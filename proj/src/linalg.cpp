#include "escreg/linalg.hpp"

#include <cmath>
#include <vector>

namespace escreg {

namespace {

void check_square(const Matrix& A, const char* who) {
    if (A.rows() != A.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }
}

}  // namespace

Vector solve_linear(const Matrix& A, const Vector& b) {
    check_square(A, "solve_linear");
    if (b.size() != A.rows()) {
        throw std::invalid_argument("solve_linear: dimension mismatch");
    }
    Eigen::PartialPivLU<Matrix> lu(A);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot < kSingularTol) {
        throw SingularMatrix("solve_linear: pivot " + std::to_string(min_pivot));
    }
    return lu.solve(b);
}

Matrix invert(const Matrix& A) {
    check_square(A, "invert");
    Eigen::PartialPivLU<Matrix> lu(A);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot < kSingularTol) {
        throw SingularMatrix("invert: pivot " + std::to_string(min_pivot));
    }
    return lu.inverse();
}

Matrix companion(const Vector& coeffs) {
    const auto n = coeffs.size();
    if (n < 1) {
        throw std::invalid_argument("companion: need at least one coefficient");
    }
    Matrix C = Matrix::Zero(n, n);
    if (n > 1) {
        C.topRightCorner(n - 1, n - 1).setIdentity();
    }
    C.row(n - 1) = -coeffs.transpose();
    return C;
}

Vector charpoly(const Matrix& A) {
    check_square(A, "charpoly");
    const auto n = A.rows();
    Vector c = Vector::Zero(n + 1);
    c(n) = 1.0;
    Matrix M = Matrix::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        Matrix AM = A * M;
        c(n - k) = -AM.trace() / static_cast<double>(k);
        M = AM + c(n - k) * Matrix::Identity(n, n);
    }
    return c;
}

Vector descending_coeffs(const Vector& ascending) {
    return ascending.reverse();
}

bool routh_hurwitz_stable(const Vector& coeffs_monic) {
    const auto deg = coeffs_monic.size() - 1;
    if (deg < 1) {
        throw std::invalid_argument("routh_hurwitz_stable: degree must be >= 1");
    }
    if (std::abs(coeffs_monic(0) - 1.0) > 1e-9) {
        throw std::invalid_argument("routh_hurwitz_stable: polynomial must be monic");
    }
    const double scale = coeffs_monic.cwiseAbs().maxCoeff();
    const double zero_tol = 1e-12 * std::max(1.0, scale);

    // First two Routh rows interleave the coefficients.
    const auto width = static_cast<Eigen::Index>(deg / 2 + 1);
    std::vector<Vector> rows(2, Vector::Zero(width));
    for (Eigen::Index i = 0; i <= static_cast<Eigen::Index>(deg); ++i) {
        rows[i % 2](i / 2) = coeffs_monic(i);
    }

    Vector prev = rows[0];
    Vector cur = rows[1];
    std::vector<double> first_col = {prev(0)};
    for (Eigen::Index r = 1; r <= deg; ++r) {
        if (cur.cwiseAbs().maxCoeff() < zero_tol) {
            throw DegenerateRow("routh_hurwitz_stable: row " + std::to_string(r) +
                                " vanished (imaginary-axis roots)");
        }
        first_col.push_back(cur(0));
        if (std::abs(cur(0)) < zero_tol) {
            // Zero pivot with other nonzero entries: roots with Re >= 0 exist.
            return false;
        }
        if (r == deg) break;
        Vector next = Vector::Zero(width);
        for (Eigen::Index j = 0; j + 1 < width; ++j) {
            next(j) = (cur(0) * prev(j + 1) - prev(0) * cur(j + 1)) / cur(0);
        }
        prev = cur;
        cur = next;
    }
    for (double p : first_col) {
        if (p <= 0.0) return false;
    }
    return true;
}

bool is_hurwitz(const Matrix& F) {
    try {
        return routh_hurwitz_stable(descending_coeffs(charpoly(F)));
    } catch (const DegenerateRow&) {
        return false;
    }
}

Matrix lyapunov_solve(const Matrix& F) {
    check_square(F, "lyapunov_solve");
    const auto n = F.rows();
    const auto n2 = n * n;
    // Row (i,j) of K vec(P) = vec(-I) encodes (P F + F^T P)_{ij} = -I_{ij},
    // with P flattened row-major: vec index = i*n + j.
    Matrix K = Matrix::Zero(n2, n2);
    Vector rhs = Vector::Zero(n2);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto row = i * n + j;
            for (Eigen::Index k = 0; k < n; ++k) {
                K(row, i * n + k) += F(k, j);  // (P F)_{ij} term
                K(row, k * n + j) += F(k, i);  // (F^T P)_{ij} term
            }
            rhs(row) = (i == j) ? -1.0 : 0.0;
        }
    }
    Vector p;
    try {
        p = solve_linear(K, rhs);
    } catch (const SingularMatrix&) {
        throw SingularMatrix("lyapunov_solve: vectorized system singular (F not Hurwitz)");
    }
    Matrix P(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            P(i, j) = p(i * n + j);
        }
    }
    return 0.5 * (P + P.transpose());
}

namespace {

// Dense ascending-coefficient polynomial helpers for the Sturm count below.
using Poly = std::vector<double>;

int degree(const Poly& p, double tol) {
    for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d) {
        if (std::abs(p[d]) > tol) return d;
    }
    return -1;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {0.0};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        d[i - 1] = p[i] * static_cast<double>(i);
    }
    return d;
}

// Remainder of a by b, degrees tracked with tolerance.
Poly poly_rem(Poly a, const Poly& b, double tol) {
    const int db = degree(b, tol);
    int da = degree(a, tol);
    while (da >= db && da >= 0) {
        const double q = a[da] / b[db];
        for (int i = 0; i <= db; ++i) {
            a[da - db + i] -= q * b[i];
        }
        a[da] = 0.0;
        da = degree(a, tol);
    }
    return a;
}

double poly_eval(const Poly& p, double x) {
    double v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        v = v * x + *it;
    }
    return v;
}

int sign_of(double v, double tol) {
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

// Count of distinct real roots of q in (-inf, 0) by a Sturm chain.
int sturm_negative_root_count(const Poly& q, double tol) {
    std::vector<Poly> chain = {q, derivative(q)};
    while (degree(chain.back(), tol) > 0) {
        Poly r = poly_rem(chain[chain.size() - 2], chain.back(), tol);
        for (auto& c : r) c = -c;
        if (degree(r, tol) < 0) break;  // nontrivial gcd; caller checks squarefree
        chain.push_back(std::move(r));
    }
    int changes_minus_inf = 0, changes_zero = 0;
    int prev_inf = 0, prev_zero = 0;
    for (const auto& p : chain) {
        const int d = degree(p, tol);
        if (d < 0) continue;
        const int lead = sign_of(p[d], tol);
        const int s_inf = (d % 2 == 0) ? lead : -lead;
        const int s_zero = sign_of(poly_eval(p, 0.0), tol);
        if (s_inf != 0) {
            if (prev_inf != 0 && s_inf != prev_inf) ++changes_minus_inf;
            prev_inf = s_inf;
        }
        if (s_zero != 0) {
            if (prev_zero != 0 && s_zero != prev_zero) ++changes_zero;
            prev_zero = s_zero;
        }
    }
    return changes_minus_inf - changes_zero;
}

// gcd(q, q') has positive degree <=> repeated roots.
bool has_repeated_roots(const Poly& q, double tol) {
    Poly a = q, b = derivative(q);
    while (true) {
        const int db = degree(b, tol);
        if (db < 0) return true;  // derivative collapsed: degenerate, treat as repeated
        if (db == 0) return false;
        Poly r = poly_rem(a, b, tol);
        if (degree(r, tol) < 0) return true;
        a = std::move(b);
        b = std::move(r);
        // Rescale to keep the tolerance meaningful.
        const int d = degree(b, 0.0);
        if (d >= 0) {
            const double lead = std::abs(b[d]);
            if (lead > 0) {
                for (auto& c : b) c /= lead;
            }
        }
    }
}

}  // namespace

bool eig_imaginary_distinct(const Matrix& S) {
    check_square(S, "eig_imaginary_distinct");
    const Vector c = charpoly(S);
    const auto nn = c.size() - 1;
    const double tol = 1e-9 * std::max(1.0, c.cwiseAbs().maxCoeff());

    // Spectrum {+-i w_k} (optionally one zero root) forces s^p * Q(s^2)
    // with p in {0,1}: pure even or pure odd coefficients.
    bool odd_zero = true, even_zero = true;
    for (Eigen::Index i = 0; i <= static_cast<Eigen::Index>(nn); ++i) {
        if (i % 2 == 1 && std::abs(c(i)) > tol) odd_zero = false;
        if (i % 2 == 0 && std::abs(c(i)) > tol) even_zero = false;
    }

    Poly q;
    if (nn % 2 == 0 && odd_zero) {
        // p = 0: Q(x) built from even coefficients; Q(0) != 0 or we have a
        // repeated zero root.
        if (std::abs(c(0)) <= tol) return false;
        for (Eigen::Index i = 0; i <= static_cast<Eigen::Index>(nn); i += 2) {
            q.push_back(c(i));
        }
    } else if (nn % 2 == 1 && even_zero) {
        // p = 1: one simple zero root, Q from odd coefficients.
        if (std::abs(c(1)) <= tol) return false;  // zero root not simple
        for (Eigen::Index i = 1; i <= static_cast<Eigen::Index>(nn); i += 2) {
            q.push_back(c(i));
        }
    } else {
        return false;
    }

    const int deg_q = degree(q, tol);
    if (deg_q <= 0) return deg_q == 0 && nn <= 1;
    if (has_repeated_roots(q, tol)) return false;
    return sturm_negative_root_count(q, tol) == deg_q;
}

}  // namespace escreg
