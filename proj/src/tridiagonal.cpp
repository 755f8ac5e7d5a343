#include "curvata/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace curvata::tridiag {

namespace {

void validate(const SymTridiag& T) {
    if (T.diag.empty())
        throw invalid_input("tridiagonal matrix must be nonempty");
    if (T.off.size() + 1 != T.diag.size())
        throw invalid_input("off-diagonal length must be N-1");
}

} // namespace

double gershgorin_scale(const SymTridiag& T) {
    const int n = T.size();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = std::abs(T.diag[static_cast<size_t>(i)]);
        if (i > 0) row += std::abs(T.off[static_cast<size_t>(i) - 1]);
        if (i + 1 < n) row += std::abs(T.off[static_cast<size_t>(i)]);
        s = std::max(s, row);
    }
    return s;
}

int count_below(const SymTridiag& T, double x) {
    validate(T);
    const int n = T.size();
    // LDL^T pivots of T - xI; each negative pivot is one eigenvalue below x.
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    int count = 0;
    double q = T.diag[0] - x;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        const double e = T.off[static_cast<size_t>(i) - 1];
        double denom = q;
        if (std::abs(denom) < tiny) denom = (denom < 0.0) ? -tiny : tiny;
        q = (T.diag[static_cast<size_t>(i)] - x) - e * e / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const SymTridiag& T, int k) {
    validate(T);
    const int n = T.size();
    if (k < 1 || k > n)
        throw invalid_input("eigenvalue count must lie in [1, N]");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(T.off[static_cast<size_t>(i) - 1]);
        if (i + 1 < n) r += std::abs(T.off[static_cast<size_t>(i)]);
        lo = std::min(lo, T.diag[static_cast<size_t>(i)] - r);
        hi = std::max(hi, T.diag[static_cast<size_t>(i)] + r);
    }
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
    const double eps = std::numeric_limits<double>::epsilon();

    std::vector<double> out(static_cast<size_t>(k));
    double left = lo;
    for (int idx = 1; idx <= k; ++idx) {
        double a = left, b = hi;
        // smallest x with count_below(x) >= idx
        for (int it = 0; it < 128; ++it) {
            const double mid = 0.5 * (a + b);
            if (b - a <= 4.0 * eps * scale || mid <= a || mid >= b) break;
            if (count_below(T, mid) >= idx)
                b = mid;
            else
                a = mid;
        }
        out[static_cast<size_t>(idx) - 1] = 0.5 * (a + b);
        left = a;  // eigenvalue idx+1 cannot lie below this bracket
    }
    return out;
}

std::vector<double> solve_shifted(const SymTridiag& T, double shift,
                                  const std::vector<double>& b) {
    validate(T);
    const size_t n = T.diag.size();
    if (b.size() != n)
        throw invalid_input("right-hand side length mismatch");

    // Banded LU with partial pivoting; row swaps fill one extra superdiagonal.
    std::vector<double> d(n), dl(n, 0.0), du(n, 0.0), du2(n, 0.0);
    std::vector<double> rhs = b;
    for (size_t i = 0; i < n; ++i) d[i] = T.diag[i] - shift;
    for (size_t i = 0; i + 1 < n; ++i) {
        du[i] = T.off[i];
        dl[i] = T.off[i];  // dl[i]: entry below the diagonal in column i
    }

    const double scale = std::max({gershgorin_scale(T), std::abs(shift), 1.0});
    const double tiny = scale * std::numeric_limits<double>::min() * 1e4 +
                        scale * 1e-300;

    for (size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            double piv = d[i];
            if (std::abs(piv) < tiny) piv = (piv < 0.0 ? -tiny : tiny);
            const double m = dl[i] / piv;
            d[i] = piv;
            d[i + 1] -= m * du[i];
            rhs[i + 1] -= m * rhs[i];
        } else {
            // swap rows i and i+1, then eliminate
            const double m = d[i] / dl[i];
            d[i] = dl[i];
            const double old_diag_next = d[i + 1];
            d[i + 1] = du[i] - m * old_diag_next;
            du[i] = old_diag_next;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -m * du[i + 1];
            }
            const double r = rhs[i];
            rhs[i] = rhs[i + 1];
            rhs[i + 1] = r - m * rhs[i];
        }
    }
    if (std::abs(d[n - 1]) < tiny)
        d[n - 1] = (d[n - 1] < 0.0 ? -tiny : tiny);

    std::vector<double> x(n);
    for (size_t ii = n; ii-- > 0;) {
        double acc = rhs[ii];
        if (ii + 1 < n) acc -= du[ii] * x[ii + 1];
        if (ii + 2 < n) acc -= du2[ii] * x[ii + 2];
        x[ii] = acc / d[ii];
        if (!std::isfinite(x[ii]))
            throw numerical_failure("shifted tridiagonal solve produced non-finite values");
    }
    return x;
}

EigenvectorResult eigenvector(const SymTridiag& T, double lambda) {
    validate(T);
    const int n = T.size();
    const double scale = std::max(gershgorin_scale(T), 1.0);
    // Nudge the shift off the exact eigenvalue so the solve stays regular.
    const double shift = lambda + scale * std::numeric_limits<double>::epsilon() * 8.0;

    // Fixed full-spectrum start; an all-ones start can be orthogonal to
    // antisymmetric modes.
    std::vector<double> v(static_cast<size_t>(n));
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    double norm0 = 0.0;
    for (int i = 0; i < n; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        const double u = static_cast<double>(state >> 11) / 9007199254740992.0;
        v[static_cast<size_t>(i)] = 0.5 + u;
        norm0 += v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
    }
    norm0 = std::sqrt(norm0);
    for (double& x : v) x /= norm0;

    double res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 6; ++it) {
        std::vector<double> w = solve_shifted(T, shift, v);
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw numerical_failure("inverse iteration collapsed");
        for (double& x : w) x /= norm;
        v = std::move(w);

        // residual ||(T - lambda) v|| / scale
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double t = (T.diag[static_cast<size_t>(i)] - lambda) * v[static_cast<size_t>(i)];
            if (i > 0) t += T.off[static_cast<size_t>(i) - 1] * v[static_cast<size_t>(i) - 1];
            if (i + 1 < n) t += T.off[static_cast<size_t>(i)] * v[static_cast<size_t>(i) + 1];
            r2 += t * t;
        }
        res = std::sqrt(r2) / scale;
        if (res < 64.0 * std::numeric_limits<double>::epsilon()) break;
    }

    EigenvectorResult out;
    out.v = std::move(v);
    out.residual = res;
    if (out.residual > 1e-8)
        throw numerical_failure("inverse iteration residual did not converge");
    return out;
}

} // namespace curvata::tridiag
