#include "wavemaplab/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wml {

WeightSpec::WeightSpec(int ell_, int d_) : ell(ell_), d(d_) {
    if (ell != 1 && ell != 3)
        throw std::invalid_argument("WeightSpec: ell must be 1 or 3");
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("WeightSpec: d must be odd and >= 3");
}

CartesianPoint fhsc_to_cartesian(const HyperboloidalPoint& p) {
    if (p.y_norm >= 1.0)
        throw std::domain_error("fhsc_to_cartesian: y_norm must be < 1");
    const Real es = std::exp(p.s);
    const Real den = 1.0 - p.y_norm * p.y_norm;
    return {es / den, es * p.y_norm / den};
}

HyperboloidalPoint cartesian_to_fhsc(const CartesianPoint& p) {
    if (p.t <= 0.0)
        throw std::domain_error("cartesian_to_fhsc: t must be positive");
    // factored form stays accurate near the cone
    const Real cone = (p.t - p.x_norm) * (p.t + p.x_norm);
    if (cone <= 0.0)
        throw std::domain_error("cartesian_to_fhsc: point outside the light cone");
    const Real s = -std::log(p.t / cone);
    if (s < 0.0)
        throw std::domain_error("cartesian_to_fhsc: point below the initial hyperboloid");
    return {s, p.x_norm / p.t};
}

CartesianPoint similarity_chi(Real tau, Real xi_norm) {
    if (xi_norm >= 1.0)
        throw std::domain_error("similarity_chi: xi_norm must be < 1");
    if (tau < 0.0)
        throw std::domain_error("similarity_chi: tau must be >= 0");
    const Real emt = std::exp(-tau);
    return {-emt, emt * xi_norm};
}

CartesianPoint kelvin(const CartesianPoint& p) {
    if (!(p.t >= -1.0 && p.t < 0.0) || !(p.x_norm < -p.t))
        throw std::domain_error("kelvin: point outside the truncated past cone");
    const Real den = (p.t - p.x_norm) * (p.t + p.x_norm);
    return {-p.t / den, p.x_norm / den};
}

namespace {

// Integer power by repeated squaring; n >= 0.
Real ipow(Real base, int n) {
    Real acc = 1.0;
    Real b = base;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) acc *= b;
        b *= b;
    }
    return acc;
}

}  // namespace

Real weight(const WeightSpec& spec, Real y_norm) {
    const Real u = 1.0 - y_norm * y_norm;
    const int e = spec.exponent();
    if (e >= 0) return ipow(u, e);
    if (u == 0.0) return std::numeric_limits<Real>::infinity();
    return 1.0 / ipow(u, -e);
}

Real weight_reciprocal(const WeightSpec& spec, Real y_norm) {
    const Real u = 1.0 - y_norm * y_norm;
    const int e = spec.exponent();
    if (e <= 0) return ipow(u, -e);
    if (u == 0.0) return std::numeric_limits<Real>::infinity();
    return 1.0 / ipow(u, e);
}

}  // namespace wml
