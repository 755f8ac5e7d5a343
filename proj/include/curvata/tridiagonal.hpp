#pragma once

#include <vector>

#include "curvata/errors.hpp"

namespace curvata::tridiag {

/// Symmetric tridiagonal matrix: diag has length N, off length N-1.
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues of T strictly below x (Sturm pivot count).
int count_below(const SymTridiag& T, double x);

/// The k lowest eigenvalues, ascending, by deterministic bisection on the
/// Sturm count. Bisection runs to near machine precision relative to the
/// Gershgorin scale of T, independent of threading or compiler flags.
std::vector<double> lowest_eigenvalues(const SymTridiag& T, int k);

/// Solve (T - shift*I) x = b by LU with partial pivoting (fill one band).
/// Throws numerical_failure when the shifted matrix is numerically singular.
std::vector<double> solve_shifted(const SymTridiag& T, double shift,
                                  const std::vector<double>& b);

/// Unit eigenvector for an isolated eigenvalue, by inverse iteration from a
/// fixed deterministic start. Returns the vector and its residual
/// ||(T - lambda) v|| relative to the Gershgorin scale.
struct EigenvectorResult {
    std::vector<double> v;
    double residual = 0.0;
};
EigenvectorResult eigenvector(const SymTridiag& T, double lambda);

/// Largest row sum bound max_i (|e_{i-1}| + |d_i| + |e_i|).
double gershgorin_scale(const SymTridiag& T);

} // namespace curvata::tridiag
