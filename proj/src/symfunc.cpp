#include "curvata/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curvata::symfunc {

namespace {

void validate(const std::vector<double>& k) {
    if (k.empty())
        throw invalid_input("curvature vector must have length >= 1");
    for (double v : k)
        if (!std::isfinite(v))
            throw invalid_input("curvature vector entries must be finite");
}

// Coefficient recurrence for prod_i (t + kappa_i), truncated at order rmax.
// ld keeps the cancellation-prone downstream reports inside their bands.
std::vector<long double> sigma_table(const std::vector<double>& k, int rmax) {
    std::vector<long double> e(static_cast<size_t>(rmax) + 1, 0.0L);
    e[0] = 1.0L;
    int filled = 0;
    for (double kappa : k) {
        ++filled;
        for (int j = std::min(filled, rmax); j >= 1; --j)
            e[j] += static_cast<long double>(kappa) * e[j - 1];
    }
    return e;
}

} // namespace

CurvatureVector::CurvatureVector(std::vector<double> k) : kappa(std::move(k)) {
    validate(kappa);
}

double CurvatureVector::max_abs() const {
    double m = 0.0;
    for (double v : kappa) m = std::max(m, std::abs(v));
    return m;
}

double binomial(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    r = std::min(r, n - r);
    double acc = 1.0;
    for (int j = 1; j <= r; ++j)
        acc = acc * static_cast<double>(n - r + j) / static_cast<double>(j);
    return std::round(acc);
}

double elementary_symmetric(const CurvatureVector& kv, int r) {
    if (r < 0)
        throw invalid_input("symmetric function order must be >= 0");
    if (r == 0) return 1.0;
    if (r > kv.n()) return 0.0;
    return static_cast<double>(sigma_table(kv.kappa, r)[static_cast<size_t>(r)]);
}

std::vector<double> newton_row(const CurvatureVector& kv, int r) {
    if (r < 0)
        throw invalid_input("Newton row order must be >= 0");
    const int n = kv.n();
    auto sig = sigma_table(kv.kappa, std::min(r, n));
    std::vector<double> row(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        // sigma_m of kappa with entry i removed, by the removal recurrence
        // sigma_m(A_i) = sigma_m - kappa_i * sigma_{m-1}(A_i).
        long double s = 1.0L;
        const long double ki = kv.kappa[static_cast<size_t>(i)];
        for (int m = 1; m <= r; ++m) {
            long double sig_m = (m <= n) ? sig[static_cast<size_t>(m)] : 0.0L;
            s = sig_m - ki * s;
        }
        row[static_cast<size_t>(i)] = static_cast<double>(s);
    }
    return row;
}

SymmetricProfile profile(const CurvatureVector& kv) {
    const int n = kv.n();
    SymmetricProfile p;
    p.n = n;

    auto sig = sigma_table(kv.kappa, n);
    p.S.resize(static_cast<size_t>(n) + 1);
    p.H.resize(static_cast<size_t>(n) + 1);
    for (int r = 0; r <= n; ++r) {
        p.S[static_cast<size_t>(r)] = static_cast<double>(sig[static_cast<size_t>(r)]);
        p.H[static_cast<size_t>(r)] = p.S[static_cast<size_t>(r)] / binomial(n, r);
    }

    p.newton_rows.assign(static_cast<size_t>(n) * n, 0.0);
    p.trace_p.assign(static_cast<size_t>(n), 0.0);
    p.trace_pa.assign(static_cast<size_t>(n), 0.0);
    p.trace_pa2.assign(static_cast<size_t>(n), 0.0);

    // Removal recurrence down each column; traces are the weighted row sums.
    std::vector<long double> s_removed(static_cast<size_t>(n), 1.0L);
    for (int r = 0; r < n; ++r) {
        long double t0 = 0.0L, t1 = 0.0L, t2 = 0.0L;
        for (int i = 0; i < n; ++i) {
            const long double v = s_removed[static_cast<size_t>(i)];
            const long double ki = kv.kappa[static_cast<size_t>(i)];
            p.newton_rows[static_cast<size_t>(r) * n + i] = static_cast<double>(v);
            t0 += v;
            t1 += ki * v;
            t2 += ki * ki * v;
        }
        p.trace_p[static_cast<size_t>(r)] = static_cast<double>(t0);
        p.trace_pa[static_cast<size_t>(r)] = static_cast<double>(t1);
        p.trace_pa2[static_cast<size_t>(r)] = static_cast<double>(t2);
        for (int i = 0; i < n; ++i) {
            const long double ki = kv.kappa[static_cast<size_t>(i)];
            s_removed[static_cast<size_t>(i)] =
                sig[static_cast<size_t>(r) + 1] - ki * s_removed[static_cast<size_t>(i)];
        }
    }

    p.tau.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        p.tau[static_cast<size_t>(k)] = umbilicity_coefficient(kv, k);
    return p;
}

double umbilicity_coefficient(const CurvatureVector& kv, int k) {
    const int n = kv.n();
    if (k < 0 || k >= n)
        throw invalid_input("umbilicity order k must lie in [0, n-1]");

    auto sig = sigma_table(kv.kappa, std::min(k + 1, n));
    const long double Sk = sig[static_cast<size_t>(k)];
    const long double Sk1 = (k + 1 <= n) ? sig[static_cast<size_t>(k) + 1] : 0.0L;

    long double tr_pa2 = 0.0L;
    for (int i = 0; i < n; ++i) {
        const long double ki = kv.kappa[static_cast<size_t>(i)];
        long double s = 1.0L;
        for (int m = 1; m <= k; ++m)
            s = sig[static_cast<size_t>(m)] - ki * s;
        tr_pa2 += ki * ki * s;
    }

    const long double kp1 = static_cast<long double>(k + 1);
    const long double tau = kp1 * kp1 * Sk1 * Sk1 - static_cast<long double>(n - k) * Sk * tr_pa2;
    return static_cast<double>(tau);
}

double MaclaurinReport::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) m = std::min(m, e.margin);
    return m;
}

double MaclaurinReport::max_abs_margin() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, std::abs(e.margin));
    return m;
}

MaclaurinReport maclaurin_report(const CurvatureVector& kv) {
    MaclaurinReport rep;
    const int n = kv.n();
    for (double v : kv.kappa)
        if (v < 0.0) return rep;  // not applicable to mixed-sign data
    rep.applicable = true;

    auto sig = sigma_table(kv.kappa, n);
    std::vector<long double> Hl(static_cast<size_t>(n) + 1);
    for (int r = 0; r <= n; ++r)
        Hl[static_cast<size_t>(r)] = sig[static_cast<size_t>(r)] / static_cast<long double>(binomial(n, r));

    auto push = [&rep](std::string id, long double lhs, long double rhs) {
        MaclaurinEntry e;
        e.id = std::move(id);
        e.lhs = static_cast<double>(lhs);
        e.rhs = static_cast<double>(rhs);
        e.margin = static_cast<double>(rhs - lhs);
        rep.entries.push_back(std::move(e));
    };

    for (int r = 1; r <= n - 1; ++r)
        push("product:r=" + std::to_string(r),
             Hl[static_cast<size_t>(r) - 1] * Hl[static_cast<size_t>(r) + 1],
             Hl[static_cast<size_t>(r)] * Hl[static_cast<size_t>(r)]);
    for (int r = 1; r <= n - 1; ++r)
        push("chain:r=" + std::to_string(r),
             powl(Hl[static_cast<size_t>(r) + 1], 1.0L / (r + 1)),
             powl(Hl[static_cast<size_t>(r)], 1.0L / r));
    for (int r = 0; r <= n - 2; ++r)
        push("lead:r=" + std::to_string(r),
             Hl[static_cast<size_t>(r) + 2],
             Hl[1] * Hl[static_cast<size_t>(r) + 1]);
    return rep;
}

double default_tolerance(const CurvatureVector& kv) {
    return 1e-9 * std::pow(1.0 + kv.max_abs(), kv.n());
}

SignClass positivity_check(const CurvatureVector& kv, int r, double tol) {
    const int n = kv.n();
    if (r < 0 || r >= n)
        throw invalid_input("Newton row order must lie in [0, n-1]");
    if (!(tol >= 0.0))
        throw invalid_input("tolerance must be >= 0");
    auto row = newton_row(kv, r);
    bool all_pos = true, all_neg = true;
    for (double v : row) {
        if (!(v > tol)) all_pos = false;
        if (!(v < -tol)) all_neg = false;
    }
    if (all_pos) return SignClass::PositiveDefinite;
    if (all_neg) return SignClass::NegativeDefinite;
    return SignClass::Indefinite;
}

SignClass positivity_check(const CurvatureVector& kv, int r) {
    return positivity_check(kv, r, default_tolerance(kv));
}

} // namespace curvata::symfunc
