#include "wavemaplab/model.hpp"

#include <cmath>
#include <stdexcept>

#include "wavemaplab/kernels.hpp"

namespace wml {

ModelParams::ModelParams(int d_, int k_) : ModelParams(d_, k_, false) {}

ModelParams::ModelParams(int d_, int k_, bool relaxed) : d(d_), k(k_) {
    const int d_min = relaxed ? 3 : 5;
    if (d < d_min || d % 2 == 0)
        throw std::invalid_argument("ModelParams: d must be odd and >= " + std::to_string(d_min));
    if (k <= 0) k = (d + 1) / 2;
    if (2 * k <= d)
        throw std::invalid_argument("ModelParams: k must exceed d/2");
}

ModelParams ModelParams::free_flow(int d_, int k_) {
    return ModelParams(d_, k_, true);
}

Real u_star(Real t, Real r, int d) {
    if (t <= 0.0)
        throw std::domain_error("u_star: t must be positive");
    const Real c = std::sqrt(Real(d - 4)) * t;
    return (2.0 / c) * arctan_over_id(r / c);
}

Real w_star_fhsc(Real y, int d) {
    const Real c = std::sqrt(Real(d - 4));
    return (2.0 / c) * arctan_over_id(y / c);
}

Real potential_v(Real y, int d) {
    const Real den = Real(d - 4) + y * y;
    return -8.0 * Real(d - 3) * Real(d - 4) / (den * den);
}

Real f_tilde(Real r, Real z, int d) {
    return 4.0 * Real(d - 3) * z * z * z * sin_minus_id_over_cube(2.0 * r * z);
}

Real f_tilde_prime(Real r, Real z, int d) {
    return 4.0 * Real(d - 3) * z * z * cos_minus_one_over_square(2.0 * r * z);
}

Real f_tilde_second(Real r, Real z, int d) {
    return -4.0 * Real(d - 3) * z * sinc(2.0 * r * z);
}

namespace {

// J(r,phi) = N(r,phi)/phi^2; its phi -> 0 limit is F''(r,w*)/2.
Real remainder_quotient(Real r, Real phi, int d) {
    const Real ws = w_star_fhsc(r, d);
    const Real a = 2.0 * r * ws;
    const Real sc = sinc(r * phi);
    return -Real(d - 3) * (2.0 * ws * sinc(a) * sc * sc -
                           4.0 * phi * std::cos(a) * sin_minus_id_over_cube(2.0 * r * phi));
}

}  // namespace

Real nonlinear_remainder(Real r, Real phi, int d) {
    return phi * phi * remainder_quotient(r, phi, d);
}

Real weighted_remainder(Real r, Real q1, int d) {
    const Real u = 1.0 - r * r;
    Real wrec = 1.0;  // (1-r^2)^((d-3)/2)
    for (int e = (d - 3) / 2; e > 0; --e) wrec *= u;
    const Real phi = wrec * q1;
    return q1 * phi * remainder_quotient(r, phi, d);
}

Vector corotational_embed(Real u_value, Real x_norm, const Vector& direction) {
    const Real theta = x_norm * u_value;
    Vector out(direction.size() + 1);
    out.head(direction.size()) = std::sin(theta) * direction;
    out(direction.size()) = std::cos(theta);
    return out;
}

Real cartesian_residual(const std::function<Real(Real, Real)>& u_sampler,
                        Real t, Real r, int d, Real h) {
    if (h <= 0.0)
        throw std::invalid_argument("cartesian_residual: h must be positive");
    if (t - 2.0 * h <= 0.0)
        throw std::domain_error("cartesian_residual: time stencil leaves t > 0");
    if (r != 0.0 && r - 2.0 * h < 0.0)
        throw std::domain_error("cartesian_residual: radial stencil leaves r >= 0");

    const Real h2 = 12.0 * h * h;
    auto dtt = [&](Real rr) {
        return (-u_sampler(t + 2 * h, rr) + 16 * u_sampler(t + h, rr) - 30 * u_sampler(t, rr) +
                16 * u_sampler(t - h, rr) - u_sampler(t - 2 * h, rr)) / h2;
    };

    const Real u0 = u_sampler(t, r);
    if (r == 0.0) {
        // Even profile: u_r(0) = 0 and the radial operator limit is d u_rr(0).
        const Real urr = (-u_sampler(t, 2 * h) + 16 * u_sampler(t, h) - 30 * u0 +
                          16 * u_sampler(t, h) - u_sampler(t, 2 * h)) / h2;
        return dtt(0.0) - Real(d) * urr + f_tilde(0.0, u0, d);
    }

    const Real up2 = u_sampler(t, r + 2 * h), up1 = u_sampler(t, r + h);
    const Real um1 = u_sampler(t, r - h), um2 = u_sampler(t, r - 2 * h);
    const Real urr = (-up2 + 16 * up1 - 30 * u0 + 16 * um1 - um2) / h2;
    const Real ur = (-up2 + 8 * up1 - 8 * um1 + um2) / (12.0 * h);
    return dtt(r) - urr - Real(d - 1) / r * ur + f_tilde(r, u0, d);
}

}  // namespace wml
