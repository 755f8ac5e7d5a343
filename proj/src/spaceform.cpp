#include "curvata/spaceform.hpp"

#include <cmath>

namespace curvata::spaceform {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSeriesBand = 1e-8;  // switch point for |c|*rho^2
} // namespace

SpaceForm::SpaceForm(double curvature) : c(curvature) {
    if (!std::isfinite(curvature))
        throw invalid_input("space form curvature must be finite");
}

double SpaceForm::radius_limit() const {
    return c > 0.0 ? kPi / std::sqrt(c) : std::numeric_limits<double>::infinity();
}

void SpaceForm::check_domain(double rho) const {
    if (!std::isfinite(rho) || rho < 0.0 || rho >= radius_limit())
        throw invalid_input("radial coordinate outside [0, radius limit)");
}

double SpaceForm::sn(double rho) const {
    check_domain(rho);
    const double u = c * rho * rho;
    if (std::abs(u) < kSeriesBand) {
        return rho * (1.0 + u * (-1.0 / 6.0 + u * (1.0 / 120.0 + u * (-1.0 / 5040.0 + u / 362880.0))));
    }
    if (c > 0.0) {
        const double s = std::sqrt(c);
        return std::sin(s * rho) / s;
    }
    const double s = std::sqrt(-c);
    return std::sinh(s * rho) / s;
}

double SpaceForm::cn(double rho) const {
    check_domain(rho);
    const double u = c * rho * rho;
    if (std::abs(u) < kSeriesBand) {
        return 1.0 + u * (-1.0 / 2.0 + u * (1.0 / 24.0 + u * (-1.0 / 720.0 + u / 40320.0)));
    }
    if (c > 0.0) return std::cos(std::sqrt(c) * rho);
    return std::cosh(std::sqrt(-c) * rho);
}

double SpaceForm::cot(double rho) const {
    check_domain(rho);
    if (rho <= 0.0)
        throw invalid_input("cn/sn requires rho > 0");
    return cn(rho) / sn(rho);
}

ModelHypersurface sphere_profile(int m, const SpaceForm& sf, double R) {
    if (m < 2)
        throw invalid_input("geodesic sphere needs ambient dimension >= 2");
    if (!(R > 0.0) || R >= sf.radius_limit())
        throw invalid_input("sphere radius must lie in (0, radius limit)");
    ModelHypersurface h;
    h.kind = ModelKind::GeodesicSphere;
    h.ambient = sf;
    h.radius = R;
    h.curvatures = symfunc::CurvatureVector(
        std::vector<double>(static_cast<size_t>(m) - 1, sf.cot(R)));
    h.profile = symfunc::profile(h.curvatures);
    return h;
}

ModelHypersurface cylinder_profile(const ModelHypersurface& base_model, double l) {
    if (!(l > 0.0) || !std::isfinite(l))
        throw invalid_input("cylinder height must be positive and finite");
    ModelHypersurface h;
    h.kind = ModelKind::Cylinder;
    h.ambient = base_model.ambient;
    h.height = l;
    h.base = std::make_shared<ModelHypersurface>(base_model);

    auto k = base_model.curvatures.kappa;
    k.push_back(0.0);
    h.curvatures = symfunc::CurvatureVector(std::move(k));
    h.profile = symfunc::profile(h.curvatures);

    // A zero curvature direction must leave every lower-order symmetric
    // function untouched.
    const int nb = base_model.curvatures.n();
    const double tol = symfunc::default_tolerance(h.curvatures);
    for (int j = 0; j <= nb; ++j) {
        const double a = h.profile.S[static_cast<size_t>(j)];
        const double b = base_model.profile.S[static_cast<size_t>(j)];
        if (std::abs(a - b) > tol)
            throw numerical_failure("cylinder profile failed symmetric-function preservation");
    }
    if (std::abs(h.profile.S[static_cast<size_t>(nb) + 1]) > tol)
        throw numerical_failure("cylinder top symmetric function must vanish");
    return h;
}

ModelHypersurface cap_profile(int n, const SpaceForm& sf, double kappa_bar,
                              double kappa_support, double theta) {
    if (n < 2)
        throw invalid_input("cap dimension must be >= 2");
    if (!(theta > 0.0) || !(theta < kPi))
        throw invalid_input("contact angle must lie in (0, pi)");
    ModelHypersurface h;
    h.kind = ModelKind::UmbilicCap;
    h.ambient = sf;
    h.umbilic_factor = kappa_bar;
    h.support_factor = kappa_support;
    h.contact_angle = theta;
    h.curvatures = symfunc::CurvatureVector(
        std::vector<double>(static_cast<size_t>(n), kappa_bar));
    h.profile = symfunc::profile(h.curvatures);
    return h;
}

double robin_coefficient(double kappa_support, double kappa_hyp, double theta) {
    if (!(theta > 0.0) || !(theta < kPi))
        throw invalid_input("contact angle must lie in (0, pi)");
    if (!std::isfinite(kappa_support) || !std::isfinite(kappa_hyp))
        throw invalid_input("boundary curvature data must be finite");
    const double s = std::sin(theta);
    return kappa_support / s - kappa_hyp * (std::cos(theta) / s);
}

double unit_sphere_area(int n) {
    if (n < 2)
        throw invalid_input("unit sphere area needs n >= 2");
    return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

} // namespace curvata::spaceform
