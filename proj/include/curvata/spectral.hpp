#pragma once

#include <vector>

#include "curvata/spaceform.hpp"
#include "curvata/tridiagonal.hpp"

namespace curvata::spectral {

enum class BoundaryKind { Dirichlet, Robin };
enum class PoleParity { Even, Vanishing };

/// Radial eigenvalue problem on (0, rho0) with weight sn_c^(dim-1):
///   -(w f')'/w + [l(l+dim-2)/sn^2 - potential_shift] f = lambda f,
/// Dirichlet f(rho0) = 0 or Robin f'(rho0) = robin_slope * f(rho0).
struct SturmLiouvilleProblem {
    int dim = 2;
    spaceform::SpaceForm form;
    int angular_mode = 0;
    double potential_shift = 0.0;
    double rho0 = 1.0;
    BoundaryKind boundary = BoundaryKind::Robin;
    double robin_slope = 0.0;

    /// Pole behavior is set by the angular mode: even reflection for l = 0,
    /// vanishing (odd) reflection for l >= 1.
    PoleParity parity() const {
        return angular_mode == 0 ? PoleParity::Even : PoleParity::Vanishing;
    }
    void validate() const;
};

/// The radial block of the Laplace problem -Delta f - n c f on a geodesic
/// ball of radius rho0 in the n-dimensional model of curvature c, with the
/// boundary slope cn_c(rho0)/sn_c(rho0).
SturmLiouvilleProblem ball_problem(int n, double c, int l, double rho0);

/// Samples of a radial function on the staggered grid rho_i = (i+1/2)h.
struct RadialFunction {
    double rho0 = 0.0;
    int N = 0;
    std::vector<double> values;

    double h() const { return rho0 / N; }
    double node(int i) const { return (i + 0.5) * h(); }
};

/// Staggered grid with node/edge weight samples.
struct RadialGrid {
    double rho0 = 0.0;
    int N = 0;
    double h = 0.0;
    std::vector<double> node_rho;  // N midpoints
    std::vector<double> node_w;    // sn^(dim-1) at nodes
    std::vector<double> edge_w;    // sn^(dim-1) at the N+1 cell edges
};

/// Conservative finite-difference pencil K f = lambda M f with
/// M = diag(h * node_w), plus its symmetric similarity transform T.
struct DiscreteOperator {
    RadialGrid grid;
    std::vector<double> K_diag;
    std::vector<double> K_off;
    tridiag::SymTridiag T;

    /// Weighted L2 inner product sum_i f_i g_i w_i h of node samples.
    double dot(const std::vector<double>& f, const std::vector<double>& g) const;
};

/// Assemble the discrete operator on an N-cell grid.
DiscreteOperator assemble(const SturmLiouvilleProblem& p, int N);

/// Discrete counterpart of the angular factor 1/sn^2 at each node, defined
/// row-wise so that f = sn satisfies the l = 1 radial identity exactly on
/// the grid. Agrees with the point value to O(h^2); near the pole the raw
/// point value leaves an O(1) row defect for dim >= 4, this does not. The
/// boundary row keeps the point value (its flux is owned by the boundary
/// condition).
std::vector<double> angular_coefficients(const spaceform::SpaceForm& form, int dim,
                                         const RadialGrid& grid);

struct ModeOrigin {
    int l = 0;  // angular mode
    int k = 0;  // position within that mode's radial family (0 = ground)
};

/// Eigenvalues ascending with multiplicities; radial profiles and their
/// relative residuals are carried when the solver computed them.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<int> multiplicities;
    std::vector<ModeOrigin> origins;
    std::vector<RadialFunction> eigenfunctions;
    std::vector<double> residuals;
};

/// Lowest `count` eigenpairs of one radial problem (all simple). The
/// eigenfunctions are unit vectors in the weighted L2 norm, signed positive
/// at the first node carrying mass.
Spectrum radial_eigen(const SturmLiouvilleProblem& p, int count, int N);

/// Dimension of the degree-l spherical harmonic space on the unit
/// (n-1)-sphere; n = 2 uses the circle convention (1, then 2, 2, ...).
int harmonic_multiplicity(int n, int l);

/// Merged spectrum of the ball Robin problem over angular modes
/// l = 0..l_max, each weighted by its harmonic multiplicity. Nearby
/// eigenvalues merge when |a-b| < max(1e-7, 1e-6 |a|).
Spectrum ball_robin_spectrum(int n, double c, double rho0, int l_max,
                             int per_mode, int N);

/// Closed-form j-th mode eigenvalue of the order-r stability operator on a
/// geodesic sphere of radius R in the n-dimensional model:
///   ((n-1-r)/(n-1)) C(n-1,r) (cn/sn)^r (j(j+n-2)/sn^2 - (n-1)(cn^2/sn^2+c)).
double sphere_mode_eigenvalue(int n, int r, const spaceform::SpaceForm& sf,
                              double R, int j);

/// Tube mode eigenvalue over sphere mode j and axial Neumann mode m on an
/// axis of length l: adds C(n-1,r) (cn/sn)^r m^2 pi^2 / l^2.
double tube_mode_eigenvalue(int n, int r, const spaceform::SpaceForm& sf,
                            double R, double l, int j, int m);

/// Explicit radial solution of Delta f + n c f = -1 on the ball with the
/// natural Robin slope, its weighted integral over the ball, and the
/// discrete residuals of both defining identities.
struct ResolventResult {
    RadialFunction f;
    double integral = 0.0;          // int f dmu over the ball
    double interior_residual = 0.0; // max | discrete(Delta f + ncf + 1) |
    double boundary_residual = 0.0; // | f'(rho0) - beta f(rho0) | discretized
};
ResolventResult resolvent_minus_one(int n, const spaceform::SpaceForm& sf,
                                    double rho0, int N);

} // namespace curvata::spectral
