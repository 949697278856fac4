#pragma once

#include <Eigen/Dense>

#include "escreg/errors.hpp"

namespace escreg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// Pivot magnitude below this is treated as singular. All matrices in this
/// library are small (n <= ~12) and well scaled, so a fixed tolerance is fine.
inline constexpr double kSingularTol = 1e-12;

/// Solve A x = b by partially pivoted LU. Throws SingularMatrix when a pivot
/// falls below kSingularTol.
Vector solve_linear(const Matrix& A, const Vector& b);

/// Inverse via the same pivoted LU path as solve_linear.
Matrix invert(const Matrix& A);

/// Companion matrix of s^n + c_n s^{n-1} + ... + c_2 s + c_1: upper-right
/// identity block, last row (-c_1, ..., -c_n). coeffs = (c_1, ..., c_n).
Matrix companion(const Vector& coeffs);

/// Characteristic polynomial of A by the Faddeev-LeVerrier recursion.
/// Returns ascending coefficients, size n+1, monic (last entry 1).
Vector charpoly(const Matrix& A);

/// Routh-Hurwitz test on a monic polynomial given in descending powers,
/// coeffs = (1, c_{n-1}, ..., c_0). Returns true iff all roots have negative
/// real part. Throws DegenerateRow when a Routh row vanishes identically
/// (imaginary-axis roots).
bool routh_hurwitz_stable(const Vector& coeffs_monic);

/// Hurwitz test for a square matrix via its characteristic polynomial.
/// DegenerateRow maps to false.
bool is_hurwitz(const Matrix& F);

/// Solve P F + F^T P = -I by the explicit n^2 x n^2 vectorized system.
/// Returns the symmetric solution. Throws SingularMatrix when the vectorized
/// system is singular (F not Hurwitz).
Matrix lyapunov_solve(const Matrix& F);

/// True iff the spectrum of S consists of simple eigenvalues on the imaginary
/// axis. Decided from the characteristic polynomial: parity structure plus a
/// Sturm count on the polynomial in s^2 (no complex eigensolver involved).
bool eig_imaginary_distinct(const Matrix& S);

/// Descending monic coefficient vector from an ascending charpoly vector.
Vector descending_coeffs(const Vector& ascending);

}  // namespace escreg
