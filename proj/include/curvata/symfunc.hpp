#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "curvata/errors.hpp"

namespace curvata::symfunc {

/// Principal curvature data at a point: a finite real vector of length n >= 1.
struct CurvatureVector {
    std::vector<double> kappa;

    CurvatureVector() = default;
    explicit CurvatureVector(std::vector<double> k);

    int n() const { return static_cast<int>(kappa.size()); }
    double max_abs() const;
};

/// Binomial coefficient as a double (exact for the ranges used here).
double binomial(int n, int r);

/// Elementary symmetric polynomial sigma_r(kappa): 1 at r=0, 0 for r>n.
/// Evaluated by the one-pass coefficient recurrence of prod_i (t + kappa_i).
double elementary_symmetric(const CurvatureVector& kv, int r);

/// Power sums and curvature invariants bundled per point.
///
/// S[r] = sigma_r for r=0..n, H[r] = S[r]/binom(n,r).
/// newton(r, i) = sigma_r of kappa with entry i removed, r=0..n-1, i=0..n-1:
/// the i-th eigenvalue of the r-th Newton transformation.
/// trace_p[r], trace_pa[r], trace_pa2[r] hold sum_i kappa_i^p * newton(r,i)
/// for p = 0, 1, 2.
struct SymmetricProfile {
    int n = 0;
    std::vector<double> S;
    std::vector<double> H;
    std::vector<double> newton_rows;  // row-major, n rows of length n
    std::vector<double> trace_p;
    std::vector<double> trace_pa;
    std::vector<double> trace_pa2;
    std::vector<double> tau;          // umbilicity coefficients, k=0..n-1

    double newton(int r, int i) const { return newton_rows[static_cast<size_t>(r) * n + i]; }
};

/// Full symmetric-function profile of a curvature vector.
SymmetricProfile profile(const CurvatureVector& kv);

/// One Newton spectrum row for any order r >= 0 (row n is the
/// characteristic-polynomial row and vanishes identically).
std::vector<double> newton_row(const CurvatureVector& kv, int r);

/// (k+1)^2 S_{k+1}^2 - (n-k) S_k tr(P_k A^2), k in [0, n-1].
/// Nonpositive whenever kappa >= 0 and the k-th Newton row is positive,
/// zero exactly on umbilic data.
double umbilicity_coefficient(const CurvatureVector& kv, int k);

/// One inequality check: margin >= 0 means the inequality holds.
struct MaclaurinEntry {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs for "lhs <= rhs" entries
};

/// Mean-curvature inequality report for nonnegative data.
/// applicable=false (empty entries) when some kappa_i < 0.
struct MaclaurinReport {
    bool applicable = false;
    std::vector<MaclaurinEntry> entries;

    double min_margin() const;
    double max_abs_margin() const;
};

/// Checks, on kappa >= 0: H_{r-1}H_{r+1} <= H_r^2 (r=1..n-1),
/// H_r^{1/r} >= H_{r+1}^{1/(r+1)} (r=1..n-1), H_1 H_{r+1} >= H_{r+2}
/// (r=0..n-2). Margins are raw differences, positive when satisfied.
MaclaurinReport maclaurin_report(const CurvatureVector& kv);

enum class SignClass { PositiveDefinite, NegativeDefinite, Indefinite };

/// Default comparison tolerance for profile checks: 1e-9 * (1+max|kappa|)^n.
double default_tolerance(const CurvatureVector& kv);

/// Sign class of the r-th Newton spectrum row. Entries with |value| <= tol
/// are sign-ambiguous and force Indefinite.
SignClass positivity_check(const CurvatureVector& kv, int r, double tol);
SignClass positivity_check(const CurvatureVector& kv, int r);

} // namespace curvata::symfunc
