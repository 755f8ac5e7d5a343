#include "curvata/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace curvata::spectral {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

void SturmLiouvilleProblem::validate() const {
    if (dim < 2)
        throw invalid_input("radial problem dimension must be >= 2");
    if (angular_mode < 0)
        throw invalid_input("angular mode must be >= 0");
    if (!std::isfinite(potential_shift))
        throw invalid_input("potential shift must be finite");
    if (!(rho0 > 0.0) || rho0 >= form.radius_limit())
        throw invalid_input("radius must lie in (0, radius limit)");
    if (boundary == BoundaryKind::Robin && !std::isfinite(robin_slope))
        throw invalid_input("Robin slope must be finite");
}

SturmLiouvilleProblem ball_problem(int n, double c, int l, double rho0) {
    SturmLiouvilleProblem p;
    p.dim = n;
    p.form = spaceform::SpaceForm(c);
    p.angular_mode = l;
    p.potential_shift = n * c;
    p.rho0 = rho0;
    p.boundary = BoundaryKind::Robin;
    p.validate();
    p.robin_slope = p.form.cot(rho0);
    return p;
}

double DiscreteOperator::dot(const std::vector<double>& f, const std::vector<double>& g) const {
    double s = 0.0;
    for (int i = 0; i < grid.N; ++i)
        s += f[static_cast<size_t>(i)] * g[static_cast<size_t>(i)] * grid.node_w[static_cast<size_t>(i)] * grid.h;
    return s;
}

std::vector<double> angular_coefficients(const spaceform::SpaceForm& form, int dim,
                                         const RadialGrid& g) {
    // Row-wise solve of the discrete analogue of the continuum identity
    //   (dim-1)/sn^2 = dim*c + (w sn')'/(w sn),   w = sn^(dim-1),
    // with the conservative flux difference standing in for (w sn')'.
    const int N = g.N;
    std::vector<double> sn(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i)
        sn[static_cast<size_t>(i)] = form.sn(g.node_rho[static_cast<size_t>(i)]);

    std::vector<double> X(static_cast<size_t>(N));
    for (int i = 0; i + 1 < N; ++i) {
        double flux = g.edge_w[static_cast<size_t>(i) + 1] *
                      (sn[static_cast<size_t>(i) + 1] - sn[static_cast<size_t>(i)]);
        if (i > 0)
            flux -= g.edge_w[static_cast<size_t>(i)] *
                    (sn[static_cast<size_t>(i)] - sn[static_cast<size_t>(i) - 1]);
        flux /= g.h;
        const double ratio = flux / (g.h * g.node_w[static_cast<size_t>(i)] * sn[static_cast<size_t>(i)]);
        X[static_cast<size_t>(i)] = (dim * form.c + ratio) / (dim - 1);
    }
    X[static_cast<size_t>(N) - 1] =
        1.0 / (sn[static_cast<size_t>(N) - 1] * sn[static_cast<size_t>(N) - 1]);
    return X;
}

DiscreteOperator assemble(const SturmLiouvilleProblem& p, int N) {
    p.validate();
    if (N < 2)
        throw invalid_input("grid must have at least 2 cells");

    DiscreteOperator op;
    RadialGrid& g = op.grid;
    g.rho0 = p.rho0;
    g.N = N;
    g.h = p.rho0 / N;
    g.node_rho.resize(static_cast<size_t>(N));
    g.node_w.resize(static_cast<size_t>(N));
    g.edge_w.resize(static_cast<size_t>(N) + 1);

    const int n = p.dim;
    for (int i = 0; i <= N; ++i) {
        const double rho = std::min(i * g.h, p.rho0);
        g.edge_w[static_cast<size_t>(i)] = std::pow(p.form.sn(rho), n - 1);
    }
    for (int i = 0; i < N; ++i) {
        g.node_rho[static_cast<size_t>(i)] = (i + 0.5) * g.h;
        g.node_w[static_cast<size_t>(i)] = std::pow(p.form.sn(g.node_rho[static_cast<size_t>(i)]), n - 1);
    }

    const double l = p.angular_mode;
    const double ang = l * (l + n - 2);
    op.K_diag.assign(static_cast<size_t>(N), 0.0);
    op.K_off.assign(static_cast<size_t>(N) - 1, 0.0);

    std::vector<double> inv_sq;
    if (ang != 0.0) inv_sq = angular_coefficients(p.form, n, g);

    for (int i = 0; i < N; ++i) {
        const double V =
            (ang != 0.0 ? ang * inv_sq[static_cast<size_t>(i)] : 0.0) - p.potential_shift;
        double diag = g.h * g.node_w[static_cast<size_t>(i)] * V;
        if (i > 0) diag += g.edge_w[static_cast<size_t>(i)] / g.h;
        if (i + 1 < N) diag += g.edge_w[static_cast<size_t>(i) + 1] / g.h;
        op.K_diag[static_cast<size_t>(i)] = diag;
        if (i + 1 < N)
            op.K_off[static_cast<size_t>(i)] = -g.edge_w[static_cast<size_t>(i) + 1] / g.h;
    }

    // Pole edge: even modes carry no flux; vanishing modes reflect oddly.
    // The edge weight vanishes for dim >= 2, so both reduce to zero flux.
    if (p.parity() == PoleParity::Vanishing)
        op.K_diag[0] += 2.0 * g.edge_w[0] / g.h;

    // Outer edge.
    const double wb = g.edge_w[static_cast<size_t>(N)];
    if (p.boundary == BoundaryKind::Dirichlet) {
        op.K_diag[static_cast<size_t>(N) - 1] += 2.0 * wb / g.h;
    } else {
        // Outward flux w(rho0) beta f(rho0) with the midpoint fold
        // f(rho0) = f_{N-1} / (1 - beta h/2); lands on the diagonal.
        const double fold = 1.0 - p.robin_slope * g.h / 2.0;
        if (std::abs(fold) < 1e-12)
            throw numerical_failure("Robin boundary fold is singular at this resolution");
        op.K_diag[static_cast<size_t>(N) - 1] -= p.robin_slope * wb / fold;
    }

    op.T.diag.resize(static_cast<size_t>(N));
    op.T.off.resize(static_cast<size_t>(N) - 1);
    for (int i = 0; i < N; ++i) {
        const double mi = g.h * g.node_w[static_cast<size_t>(i)];
        op.T.diag[static_cast<size_t>(i)] = op.K_diag[static_cast<size_t>(i)] / mi;
        if (i + 1 < N) {
            const double mj = g.h * g.node_w[static_cast<size_t>(i) + 1];
            op.T.off[static_cast<size_t>(i)] = op.K_off[static_cast<size_t>(i)] / std::sqrt(mi * mj);
        }
    }
    return op;
}

Spectrum radial_eigen(const SturmLiouvilleProblem& p, int count, int N) {
    if (N < 64)
        throw invalid_input("radial eigensolve needs N >= 64");
    if (count < 1 || count > N)
        throw invalid_input("eigenpair count must lie in [1, N]");

    DiscreteOperator op = assemble(p, N);
    auto lambdas = tridiag::lowest_eigenvalues(op.T, count);

    Spectrum sp;
    sp.eigenvalues = lambdas;
    sp.multiplicities.assign(lambdas.size(), 1);
    sp.origins.resize(lambdas.size());
    sp.eigenfunctions.resize(lambdas.size());
    sp.residuals.resize(lambdas.size());

    for (size_t k = 0; k < lambdas.size(); ++k) {
        sp.origins[k] = ModeOrigin{p.angular_mode, static_cast<int>(k)};
        auto ev = tridiag::eigenvector(op.T, lambdas[k]);
        RadialFunction f;
        f.rho0 = p.rho0;
        f.N = N;
        f.values.resize(static_cast<size_t>(N));
        double fmax = 0.0;
        for (int i = 0; i < N; ++i) {
            const double mi = op.grid.h * op.grid.node_w[static_cast<size_t>(i)];
            f.values[static_cast<size_t>(i)] = ev.v[static_cast<size_t>(i)] / std::sqrt(mi);
            fmax = std::max(fmax, std::abs(f.values[static_cast<size_t>(i)]));
        }
        for (int i = 0; i < N; ++i) {
            const double v = f.values[static_cast<size_t>(i)];
            if (std::abs(v) > 1e-8 * fmax) {
                if (v < 0.0)
                    for (double& x : f.values) x = -x;
                break;
            }
        }
        sp.eigenfunctions[k] = std::move(f);
        sp.residuals[k] = ev.residual;
    }
    return sp;
}

int harmonic_multiplicity(int n, int l) {
    if (n < 2 || l < 0)
        throw invalid_input("harmonic multiplicity needs n >= 2, l >= 0");
    if (l == 0) return 1;
    if (n == 2) return 2;
    const double m = symfunc::binomial(n + l - 2, l) *
                     static_cast<double>(n - 2 + 2 * l) / static_cast<double>(n - 2 + l);
    return static_cast<int>(std::lround(m));
}

Spectrum ball_robin_spectrum(int n, double c, double rho0, int l_max,
                             int per_mode, int N) {
    if (l_max < 0)
        throw invalid_input("l_max must be >= 0");
    if (per_mode < 1)
        throw invalid_input("per-mode count must be >= 1");

    struct Entry {
        double lambda;
        int l;
        int k;
        int mult;
    };
    std::vector<Entry> all;
    for (int l = 0; l <= l_max; ++l) {
        SturmLiouvilleProblem p = ball_problem(n, c, l, rho0);
        DiscreteOperator op = assemble(p, N);
        auto lam = tridiag::lowest_eigenvalues(op.T, per_mode);
        const int mult = harmonic_multiplicity(n, l);
        for (int k = 0; k < per_mode; ++k)
            all.push_back(Entry{lam[static_cast<size_t>(k)], l, k, mult});
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const Entry& a, const Entry& b) { return a.lambda < b.lambda; });

    Spectrum sp;
    size_t i = 0;
    while (i < all.size()) {
        double rep = all[i].lambda;
        int mult = 0;
        size_t j = i;
        double last = rep;
        while (j < all.size()) {
            const double lj = all[j].lambda;
            const double tol = std::max(1e-7, 1e-6 * std::abs(lj));
            if (j > i && lj - last > tol) break;
            mult += all[j].mult;
            last = lj;
            ++j;
        }
        sp.eigenvalues.push_back(rep);
        sp.multiplicities.push_back(mult);
        sp.origins.push_back(ModeOrigin{all[i].l, all[i].k});
        i = j;
    }
    return sp;
}

double sphere_mode_eigenvalue(int n, int r, const spaceform::SpaceForm& sf,
                              double R, int j) {
    if (n < 2)
        throw invalid_input("sphere mode needs ambient dimension >= 2");
    if (r < 0 || r > n - 2)
        throw invalid_input("Newton order must lie in [0, n-2]");
    if (j < 0)
        throw invalid_input("sphere mode index must be >= 0");
    if (!(R > 0.0) || R >= sf.radius_limit())
        throw invalid_input("sphere radius must lie in (0, radius limit)");

    const double sn = sf.sn(R);
    const double kappa = sf.cn(R) / sn;
    const double weight = (static_cast<double>(n - 1 - r) / (n - 1)) *
                          symfunc::binomial(n - 1, r) * std::pow(kappa, r);
    const double laplace = static_cast<double>(j) * (j + n - 2) / (sn * sn);
    return weight * (laplace - (n - 1) * (kappa * kappa + sf.c));
}

double tube_mode_eigenvalue(int n, int r, const spaceform::SpaceForm& sf,
                            double R, double l, int j, int m) {
    if (!(l > 0.0) || !std::isfinite(l))
        throw invalid_input("axis length must be positive and finite");
    if (m < 0)
        throw invalid_input("axial mode index must be >= 0");
    const double base = sphere_mode_eigenvalue(n, r, sf, R, j);
    const double kappa = sf.cot(R);
    const double Sr = symfunc::binomial(n - 1, r) * std::pow(kappa, r);
    const double axial = static_cast<double>(m) * m * kPi * kPi / (l * l);
    return base + Sr * axial;
}

ResolventResult resolvent_minus_one(int n, const spaceform::SpaceForm& sf,
                                    double rho0, int N) {
    if (n < 2)
        throw invalid_input("resolvent needs dimension >= 2");
    if (N < 64)
        throw invalid_input("resolvent check needs N >= 64");
    if (!(rho0 > 0.0) || rho0 >= sf.radius_limit())
        throw invalid_input("radius must lie in (0, radius limit)");

    const double c = sf.c;
    const double h = rho0 / N;
    auto value = [&](double rho) {
        if (c == 0.0) return -(rho * rho + rho0 * rho0) / (2.0 * n);
        return (sf.cn(rho0) * sf.cn(rho) - 1.0) / (n * c);
    };

    ResolventResult out;
    out.f.rho0 = rho0;
    out.f.N = N;
    out.f.values.resize(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i)
        out.f.values[static_cast<size_t>(i)] = value((i + 0.5) * h);

    // Weighted integral over the ball (midpoint rule in rho).
    double radial = 0.0;
    for (int i = 0; i < N; ++i)
        radial += out.f.values[static_cast<size_t>(i)] *
                  std::pow(sf.sn((i + 0.5) * h), n - 1) * h;
    out.integral = radial * spaceform::unit_sphere_area(n);

    // Conservative discretization of Delta f + ncf + 1, checked in the bulk.
    // Rows near the pole carry an O(1) pointwise truncation error (the row
    // index, not the mesh width, controls it there), so the scan starts at a
    // fixed fraction of the radius where the stencil is O(h^2).
    double worst = 0.0;
    for (int i = N / 4; i + 1 < N; ++i) {
        const double rho = (i + 0.5) * h;
        const double wbar = std::pow(sf.sn(rho), n - 1);
        const double wl = std::pow(sf.sn(i * h), n - 1);
        const double wr = std::pow(sf.sn((i + 1) * h), n - 1);
        const double fi = out.f.values[static_cast<size_t>(i)];
        const double fr = out.f.values[static_cast<size_t>(i) + 1];
        const double fl = out.f.values[static_cast<size_t>(i) - 1];
        const double lap = (wr * (fr - fi) - wl * (fi - fl)) / (h * h * wbar);
        worst = std::max(worst, std::abs(lap + n * c * fi + 1.0));
    }
    out.interior_residual = worst;

    // One-sided cubic stencils at rho0 over the last four nodes.
    const double f0 = out.f.values[static_cast<size_t>(N) - 1];
    const double f1 = out.f.values[static_cast<size_t>(N) - 2];
    const double f2 = out.f.values[static_cast<size_t>(N) - 3];
    const double f3 = out.f.values[static_cast<size_t>(N) - 4];
    const double deriv =
        (17.75 / 6.0 * f0 - 5.875 * f1 + 3.875 * f2 - 5.75 / 6.0 * f3) / h;
    const double boundary_value = 2.1875 * f0 - 2.1875 * f1 + 1.3125 * f2 - 0.3125 * f3;
    out.boundary_residual = std::abs(deriv - sf.cot(rho0) * boundary_value);
    return out;
}

} // namespace curvata::spectral
