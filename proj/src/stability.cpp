#include "curvata/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace curvata::stability {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string format(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}
} // namespace

double stability_potential(const symfunc::CurvatureVector& kv, int r, double c) {
    const int n = kv.n();
    if (r < 0 || r >= n)
        throw invalid_input("stability potential order must lie in [0, n-1]");
    if (!std::isfinite(c))
        throw invalid_input("ambient curvature must be finite");
    auto p = symfunc::profile(kv);
    return p.trace_pa2[static_cast<size_t>(r)] + c * p.trace_p[static_cast<size_t>(r)];
}

double umbilic_index_scale(int n, int r, double kappa_bar) {
    if (n < 1 || r < 0 || r >= n)
        throw invalid_input("umbilic scale needs 0 <= r <= n-1");
    return symfunc::binomial(n - 1, r) * std::pow(kappa_bar, r);
}

double index_form_value(const IndexFormProblem& pb, const std::vector<double>& f) {
    const int N = pb.grid.N;
    if (static_cast<int>(f.size()) != N)
        throw invalid_input("test function length must match the grid");
    const double h = pb.grid.h;
    const double l = pb.angular_mode;
    const double ang = l * (l + pb.dim - 2);

    double kinetic = 0.0;
    for (int j = 1; j < N; ++j) {
        const double d = f[static_cast<size_t>(j)] - f[static_cast<size_t>(j) - 1];
        kinetic += pb.grid.edge_w[static_cast<size_t>(j)] * d * d / h;
    }
    if (pb.angular_mode >= 1)
        kinetic += 2.0 * pb.grid.edge_w[0] * f[0] * f[0] / h;

    std::vector<double> inv_sq;
    if (ang != 0.0) inv_sq = spectral::angular_coefficients(pb.form, pb.dim, pb.grid);

    double mass = 0.0;
    for (int i = 0; i < N; ++i) {
        const double w = pb.grid.node_w[static_cast<size_t>(i)] * h;
        double v = -pb.potential;
        if (ang != 0.0) v += pb.newton_weight * ang * inv_sq[static_cast<size_t>(i)];
        mass += v * f[static_cast<size_t>(i)] * f[static_cast<size_t>(i)] * w;
    }

    double boundary = 0.0;
    if (pb.has_boundary) {
        const double fold = 1.0 + pb.boundary_alpha * h / 2.0;
        if (std::abs(fold) < 1e-12)
            throw numerical_failure("boundary fold is singular at this resolution");
        const double fN = f[static_cast<size_t>(N) - 1];
        boundary = pb.boundary_alpha * pb.grid.edge_w[static_cast<size_t>(N)] * fN * fN / fold;
    }
    return pb.newton_weight * (kinetic + boundary) + mass;
}

const char* to_string(StabilityLabel label) {
    switch (label) {
        case StabilityLabel::StronglyStable: return "StronglyStable";
        case StabilityLabel::Stable: return "Stable";
        case StabilityLabel::Unstable: return "Unstable";
        case StabilityLabel::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

void TubeSpec::validate() const {
    if (n < 2)
        throw invalid_input("tube base dimension must be >= 2");
    if (r < 0 || r > n - 2)
        throw invalid_input("tube Newton order must lie in [0, n-2]");
    spaceform::SpaceForm sf(c);
    if (!(R > 0.0) || R >= sf.radius_limit())
        throw invalid_input("tube radius must lie in (0, radius limit)");
    if (!(l > 0.0) || !std::isfinite(l))
        throw invalid_input("tube axis length must be positive and finite");
}

TubeReport tube_verdict(const TubeSpec& spec) {
    spec.validate();
    const spaceform::SpaceForm sf(spec.c);

    TubeReport rep;
    rep.margin = kPi * sf.sn(spec.R) - spec.l * std::sqrt(static_cast<double>(spec.n - spec.r - 1));
    rep.cross_eigenvalue =
        spectral::tube_mode_eigenvalue(spec.n, spec.r, sf, spec.R, spec.l, 0, 1);
    rep.deciding_j = 0;
    rep.deciding_m = 1;

    // Orientation in which the Newton weight is positive; for odd r past the
    // equator the raw weight is negative and the form sign flips with it.
    const double kappa = sf.cot(spec.R);
    double orient = 1.0;
    if (spec.r % 2 == 1) orient = (kappa > 0.0) ? 1.0 : (kappa < 0.0 ? -1.0 : 0.0);
    const double effective = orient * rep.cross_eigenvalue;

    const double base = spectral::sphere_mode_eigenvalue(spec.n, spec.r, sf, spec.R, 0);
    const double scale = std::abs(base) + std::abs(rep.cross_eigenvalue - base);
    const double tol_margin = 1e-9;
    const double tol_eig = 1e-9 * std::max(scale, 1.0);

    const bool stable = rep.margin >= 0.0;
    const bool disagree = orient != 0.0 &&
                          ((rep.margin > tol_margin && effective < -tol_eig) ||
                           (rep.margin < -tol_margin && effective > tol_eig));

    if (disagree) {
        rep.verdict.label = StabilityLabel::Inconclusive;
        rep.verdict.margin = rep.margin;
        rep.verdict.witness = "closed-form margin and mode eigenvalue disagree: margin=" +
                              format(rep.margin) + " eigenvalue=" + format(effective);
        return rep;
    }

    rep.verdict.margin = rep.margin;
    if (stable) {
        rep.verdict.label = StabilityLabel::Stable;
        rep.verdict.witness = "lowest volume-compatible mode (j=0,m=1) eigenvalue=" +
                              format(rep.cross_eigenvalue);
    } else {
        rep.verdict.label = StabilityLabel::Unstable;
        rep.verdict.witness = "mode (j=0,m=1) eigenvalue=" + format(effective) +
                              " < 0, margin=" + format(rep.margin);
    }
    return rep;
}

StabilityVerdict koiso_classify(const KoisoInput& in) {
    if (!std::isfinite(in.lambda1) || !std::isfinite(in.lambda2))
        throw invalid_input("eigenvalues must be finite");
    const double tol =
        in.tol >= 0.0 ? in.tol : std::max(1e-7, 1e-6 * std::abs(in.lambda1));
    if (in.lambda1 > in.lambda2 + tol)
        throw invalid_input("lambda1 must not exceed lambda2");

    StabilityVerdict v;
    if (in.lambda1 >= -tol) {
        v.label = StabilityLabel::StronglyStable;
        v.margin = in.lambda1;
        v.koiso_case = 1;
        v.witness = "lambda1=" + format(in.lambda1) + " >= 0";
        return v;
    }

    if (in.lambda2 < -tol) {
        v.label = StabilityLabel::Unstable;
        v.margin = in.lambda2;
        v.koiso_case = 5;
        v.witness = "lambda2=" + format(in.lambda2) + " < 0";
        return v;
    }

    if (in.lambda2 > tol) {
        if (!in.resolvent)
            throw insufficient_input(
                "lambda1 < 0 < lambda2 branch needs the unit-load integral");
        v.koiso_case = 2;
        v.margin = in.resolvent->integral;
        if (v.margin >= -tol) {
            v.label = StabilityLabel::Stable;
            v.witness = "unit-load integral=" + format(v.margin) + " >= 0";
        } else {
            v.label = StabilityLabel::Unstable;
            v.witness = "unit-load integral=" + format(v.margin) + " < 0";
        }
        return v;
    }

    // lambda2 = 0 within tol.
    if (!in.e2_means)
        throw insufficient_input("lambda2 = 0 branch needs kernel mode means");
    double worst = 0.0;
    for (double m : *in.e2_means) worst = std::max(worst, std::abs(m));
    if (worst > tol) {
        v.label = StabilityLabel::Unstable;
        v.margin = in.lambda1;
        v.koiso_case = 3;
        v.witness = "kernel mode with nonzero mean (|mean|=" + format(worst) +
                    "), lambda1=" + format(in.lambda1) + " < 0";
        return v;
    }
    if (!in.resolvent || !in.resolvent->in_mean_zero_complement)
        throw insufficient_input(
            "lambda2 = 0 branch with mean-free kernel needs the restricted unit-load integral");
    v.koiso_case = 4;
    v.margin = in.resolvent->integral;
    if (v.margin >= -tol) {
        v.label = StabilityLabel::Stable;
        v.witness = "restricted unit-load integral=" + format(v.margin) + " >= 0";
    } else {
        v.label = StabilityLabel::Unstable;
        v.witness = "restricted unit-load integral=" + format(v.margin) + " < 0";
    }
    return v;
}

void CapSpec::validate() const {
    if (n < 2)
        throw invalid_input("cap dimension must be >= 2");
    spaceform::SpaceForm sf(c);
    if (!(rho0 > 0.0) || rho0 >= sf.radius_limit())
        throw invalid_input("cap radius must lie in (0, radius limit)");
    if (!(theta > 0.0) || !(theta < kPi))
        throw invalid_input("contact angle must lie in (0, pi)");
}

namespace {

// Negative count of the pencil restricted to the weighted-mean-zero
// hyperplane, via interlacing plus one secular sign probe: the restricted
// eigenvalues interlace the unrestricted ones, and the only undecided one
// sits in the gap (lambda_k, lambda_{k+1}) around -band, where
// phi(x) = u^T (T - x)^{-1} u changes sign at it.
int negatives_mean_zero(const spectral::DiscreteOperator& op, double band) {
    const int N = op.grid.N;
    const int k = tridiag::count_below(op.T, -band);
    if (k == 0) return 0;

    std::vector<double> u(static_cast<size_t>(N));
    double norm = 0.0;
    for (int i = 0; i < N; ++i) {
        u[static_cast<size_t>(i)] = std::sqrt(op.grid.h * op.grid.node_w[static_cast<size_t>(i)]);
        norm += u[static_cast<size_t>(i)] * u[static_cast<size_t>(i)];
    }
    norm = std::sqrt(norm);
    for (double& x : u) x /= norm;

    auto x = tridiag::solve_shifted(op.T, -band, u);
    double phi = 0.0;
    for (int i = 0; i < N; ++i) phi += u[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    return (k - 1) + (phi > 0.0 ? 1 : 0);
}

} // namespace

CapReport cap_morse_index(const CapSpec& spec, IndexSubspace subspace, int N,
                          int l_max, std::optional<double> robin_slope_override) {
    spec.validate();
    if (N < 64)
        throw invalid_input("cap index needs N >= 64");
    if (l_max < 2)
        throw invalid_input("cap index needs l_max >= 2");

    const double half_pi_gap = std::abs(spec.theta - kPi / 2.0);
    if (half_pi_gap > 1e-12 && !robin_slope_override)
        throw insufficient_input(
            "cap at theta != pi/2 needs an explicit Robin slope (see robin_coefficient)");

    CapReport rep;
    rep.zero_band = 50.0 / (static_cast<double>(N) * N);

    // Per-mode radial spectra.
    std::vector<spectral::DiscreteOperator> ops;
    std::vector<std::vector<double>> lams;
    int per_mode = 4;
    for (int l = 0; l <= l_max; ++l) {
        spectral::SturmLiouvilleProblem p = spectral::ball_problem(spec.n, spec.c, l, spec.rho0);
        if (robin_slope_override) p.robin_slope = *robin_slope_override;
        ops.push_back(spectral::assemble(p, N));
        lams.push_back(tridiag::lowest_eigenvalues(ops.back().T, per_mode));
    }

    rep.lambda1 = lams[0][0];
    for (const auto& fam : lams) rep.lambda1 = std::min(rep.lambda1, fam[0]);
    const double band = std::max({1e-7, 1e-6 * std::abs(rep.lambda1), rep.zero_band});
    rep.zero_band = band;

    // All negatives must be resolved within the computed families.
    for (size_t l = 0; l < lams.size(); ++l)
        if (lams[l].back() < -band)
            throw numerical_failure("per-mode eigenvalue budget too small for the negative count");
    if (lams.back()[0] <= band)
        throw numerical_failure("l_max too small to certify the negative count");

    // lambda2 and its merged group.
    struct Entry { double lambda; int l; };
    std::vector<Entry> flat;
    for (int l = 0; l <= l_max; ++l)
        for (double lam : lams[static_cast<size_t>(l)]) flat.push_back({lam, l});
    std::stable_sort(flat.begin(), flat.end(),
                     [](const Entry& a, const Entry& b) { return a.lambda < b.lambda; });

    // Ground group by chain merge. A ground value carrying multiplicity is
    // already the second eigenvalue counted with multiplicity.
    size_t i2 = 1;
    int ground_mult = spectral::harmonic_multiplicity(spec.n, flat[0].l);
    {
        double glast = flat[0].lambda;
        while (i2 < flat.size()) {
            const double tolj = std::max(1e-7, 1e-6 * std::abs(flat[i2].lambda));
            if (flat[i2].lambda - glast > tolj) break;
            ground_mult += spectral::harmonic_multiplicity(spec.n, flat[i2].l);
            glast = flat[i2].lambda;
            ++i2;
        }
    }
    if (ground_mult > 1) {
        rep.lambda2 = rep.lambda1;
        rep.lambda2_multiplicity = ground_mult - 1;
    } else {
        if (i2 >= flat.size())
            throw numerical_failure("spectrum budget exhausted before the second eigenvalue");
        rep.lambda2 = flat[i2].lambda;
        rep.lambda2_multiplicity = 0;
        // Means over the ball of the lambda2 group: an angular factor of
        // degree >= 1 integrates to zero, so only radial members need the
        // discrete mean.
        double last = rep.lambda2;
        for (size_t j = i2; j < flat.size(); ++j) {
            const double tolj = std::max(1e-7, 1e-6 * std::abs(flat[j].lambda));
            if (j > i2 && flat[j].lambda - last > tolj) break;
            rep.lambda2_multiplicity += spectral::harmonic_multiplicity(spec.n, flat[j].l);
            last = flat[j].lambda;
            if (flat[j].l >= 1) {
                rep.kernel_means.push_back(0.0);
            } else {
                auto ev = tridiag::eigenvector(ops[0].T, flat[j].lambda);
                double mean = 0.0;
                for (int i = 0; i < N; ++i) {
                    const double mi = ops[0].grid.h * ops[0].grid.node_w[static_cast<size_t>(i)];
                    mean += ev.v[static_cast<size_t>(i)] * std::sqrt(mi);
                }
                rep.kernel_means.push_back(mean * spaceform::unit_sphere_area(spec.n));
            }
        }
    }

    // Unit-load radial solve K f = -M 1 and its ball integral.
    {
        tridiag::SymTridiag K{ops[0].K_diag, ops[0].K_off};
        std::vector<double> rhs(static_cast<size_t>(N));
        for (int i = 0; i < N; ++i)
            rhs[static_cast<size_t>(i)] = -ops[0].grid.h * ops[0].grid.node_w[static_cast<size_t>(i)];
        auto f = tridiag::solve_shifted(K, 0.0, rhs);
        double radial = 0.0;
        for (int i = 0; i < N; ++i)
            radial += f[static_cast<size_t>(i)] * ops[0].grid.node_w[static_cast<size_t>(i)] * ops[0].grid.h;
        rep.resolvent_integral = radial * spaceform::unit_sphere_area(spec.n);
    }

    // Negative counts.
    int count = 0;
    for (int l = 0; l <= l_max; ++l) {
        int neg = 0;
        for (double lam : lams[static_cast<size_t>(l)])
            if (lam < -band) ++neg;
        if (l == 0 && subspace == IndexSubspace::MeanZero)
            neg = negatives_mean_zero(ops[0], band);
        count += neg * spectral::harmonic_multiplicity(spec.n, l);
    }
    rep.morse_index = count;
    return rep;
}

} // namespace curvata::stability
