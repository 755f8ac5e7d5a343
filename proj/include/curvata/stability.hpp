#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvata/spectral.hpp"

namespace curvata::stability {

/// q_r = tr(P_r A^2) + c (n-r) S_r, the zeroth-order coefficient of the
/// order-r stability operator in a space form of curvature c.
double stability_potential(const symfunc::CurvatureVector& kv, int r, double c);

/// Newton weight of an n-dimensional umbilic model with curvature kappa:
/// the common eigenvalue C(n-1,r) kappa^r = ((n-r)/n) C(n,r) kappa^r of the
/// r-th Newton transformation. Scales the r-form to the 0-form.
double umbilic_index_scale(int n, int r, double kappa_bar);

/// Quadratic-form data for radial test functions on a model with scalar
/// Newton weight. boundary_alpha is the form coefficient; for a Robin
/// eigenproblem with slope beta it equals -beta.
struct IndexFormProblem {
    spectral::RadialGrid grid;
    int dim = 2;
    spaceform::SpaceForm form;
    int angular_mode = 0;
    double newton_weight = 1.0;
    double potential = 0.0;
    double boundary_alpha = 0.0;
    bool has_boundary = true;
};

/// Discrete index form I(f, f): Newton-weighted kinetic energy minus the
/// potential term, plus the boundary term. Built to agree exactly with the
/// quadratic form of the assembled operator, so a discrete eigenfunction
/// with eigenvalue lambda gives I = lambda * ||f||^2 to roundoff.
double index_form_value(const IndexFormProblem& pb, const std::vector<double>& f);

enum class StabilityLabel { StronglyStable, Stable, Unstable, Inconclusive };

const char* to_string(StabilityLabel label);

struct StabilityVerdict {
    StabilityLabel label = StabilityLabel::Inconclusive;
    double margin = 0.0;
    std::string witness;
    int koiso_case = 0;  // 1..5 when the classifier decided
};

/// Tube over a geodesic sphere: radius R base in the n-dimensional model of
/// curvature c, axis length l, Newton order r.
struct TubeSpec {
    int n = 3;
    int r = 0;
    double c = 0.0;
    double R = 1.0;
    double l = 1.0;

    void validate() const;
};

struct TubeReport {
    StabilityVerdict verdict;
    double margin = 0.0;            // pi sn_c(R) - l sqrt(n-r-1)
    double cross_eigenvalue = 0.0;  // lowest nontrivial mode eigenvalue
    int deciding_j = 0;
    int deciding_m = 1;
};

/// Closed-form tube stability test pi sn_c(R) >= l sqrt(n-r-1) (equality
/// counts as stable), cross-checked against the sign of the deciding mode
/// eigenvalue. Disagreement beyond tolerance yields Inconclusive.
TubeReport tube_verdict(const TubeSpec& spec);

/// Data for the constrained-stability classifier.
struct ResolventRecord {
    double integral = 0.0;                // integral of the unit-load solution
    bool in_mean_zero_complement = false; // solution orthogonal to the kernel modes
};

struct KoisoInput {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    std::optional<ResolventRecord> resolvent;
    std::optional<std::vector<double>> e2_means;  // means of a lambda2 eigenbasis
    double tol = -1.0;  // negative: use max(1e-7, 1e-6 |lambda1|)
};

/// Volume-constrained stability from the two lowest eigenvalues:
/// case 1  lambda1 >= 0               -> StronglyStable
/// case 2  lambda1 < 0 < lambda2      -> sign of the unit-load integral
/// case 3  lambda2 = 0, a kernel mode has nonzero mean -> Unstable
/// case 4  lambda2 = 0, all kernel means vanish -> sign of the restricted
///         unit-load integral
/// case 5  lambda2 < 0                -> Unstable
/// Values within tol of zero count as zero. Branches whose inputs are
/// missing raise insufficient_input.
StabilityVerdict koiso_classify(const KoisoInput& in);

/// Totally umbilic cap reduced to its intrinsic ball data: dimension n,
/// curvature c, geodesic radius rho0, contact angle theta.
struct CapSpec {
    int n = 3;
    double c = 0.0;
    double rho0 = 1.0;
    double theta = 1.57079632679489661923;

    void validate() const;
};

enum class IndexSubspace { Full, MeanZero };

struct CapReport {
    int morse_index = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    int lambda2_multiplicity = 0;
    double resolvent_integral = 0.0;  // unit-load radial solve, whole-ball measure
    std::vector<double> kernel_means; // means of the lambda2 group modes
    double zero_band = 0.0;           // |lambda| below this counted as zero
};

/// Morse index of the cap's Robin problem on the chosen subspace, counting
/// harmonic multiplicities. MeanZero restricts the radial block to the
/// weighted-mean-zero hyperplane (higher modes already integrate to zero).
/// theta != pi/2 requires an explicit Robin slope override.
CapReport cap_morse_index(const CapSpec& spec, IndexSubspace subspace, int N,
                          int l_max,
                          std::optional<double> robin_slope_override = std::nullopt);

} // namespace curvata::stability
