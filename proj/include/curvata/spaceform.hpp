#pragma once

#include <limits>
#include <memory>

#include "curvata/errors.hpp"
#include "curvata/symfunc.hpp"

namespace curvata::spaceform {

/// Simply connected space form of constant sectional curvature c.
///
/// sn solves y'' + c y = 0 with y(0)=0, y'(0)=1; cn = sn'. Identities:
/// cn^2 + c sn^2 = 1, sn' = cn, cn' = -c sn. Near c*rho^2 = 0 both switch
/// to a 5-term Taylor branch so derivatives stay smooth across c = 0.
struct SpaceForm {
    double c = 0.0;

    SpaceForm() = default;
    explicit SpaceForm(double curvature);

    /// Diameter bound of the model: pi/sqrt(c) for c > 0, infinity otherwise.
    double radius_limit() const;

    double sn(double rho) const;
    double cn(double rho) const;

    /// cn(rho)/sn(rho); rho must be strictly inside (0, radius_limit()).
    double cot(double rho) const;

  private:
    void check_domain(double rho) const;
};

/// Model classes whose curvature data the library can synthesize.
enum class ModelKind { GeodesicSphere, Cylinder, UmbilicCap };

/// A model hypersurface given by its pointwise principal curvature data.
struct ModelHypersurface {
    ModelKind kind = ModelKind::GeodesicSphere;
    SpaceForm ambient;
    symfunc::CurvatureVector curvatures;
    symfunc::SymmetricProfile profile;

    double radius = 0.0;        // GeodesicSphere: geodesic radius
    double height = 0.0;        // Cylinder: axis length
    double umbilic_factor = 0.0;  // UmbilicCap: principal curvature
    double support_factor = 0.0;  // UmbilicCap: support surface curvature
    double contact_angle = 0.0;   // UmbilicCap

    std::shared_ptr<const ModelHypersurface> base;  // Cylinder: cross-section
};

/// Geodesic sphere of radius R in the m-dimensional model of curvature c:
/// m-1 equal principal curvatures cn_c(R)/sn_c(R).
ModelHypersurface sphere_profile(int m, const SpaceForm& sf, double R);

/// Product of a model hypersurface with an axis interval of length l:
/// appends one zero principal curvature. All symmetric functions S_j with
/// j <= dim(base) are preserved; the check is enforced on construction.
ModelHypersurface cylinder_profile(const ModelHypersurface& base_model, double l);

/// Totally umbilic cap model: n equal curvatures kappa_bar, with contact
/// angle theta against a support of umbilic factor kappa_support.
ModelHypersurface cap_profile(int n, const SpaceForm& sf, double kappa_bar,
                              double kappa_support, double theta);

/// Robin coefficient csc(theta)*kappa_support - cot(theta)*kappa_hyp for
/// umbilical boundary data; theta must lie in (0, pi).
double robin_coefficient(double kappa_support, double kappa_hyp, double theta);

/// Surface area of the unit (n-1)-sphere, n >= 2.
double unit_sphere_area(int n);

} // namespace curvata::spaceform
