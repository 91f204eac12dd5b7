#pragma once

#include <functional>

#include "wavemaplab/types.hpp"

// The explicit slow-decay solution, its static profile on hyperboloidal
// slices, the linearization potential, the sine nonlinearity and its
// quadratic remainder (in both the plain and the boundary-weighted form),
// and the sphere embedding of a co-rotational profile.

namespace wml {

// Model dimensions: d odd >= 5, Sobolev monitoring order k > d/2,
// wave-map spatial dimension n = d-2.
struct ModelParams {
    int d;
    int k;

    // k <= 0 selects the default k = (d+1)/2.
    explicit ModelParams(int d_, int k_ = 0);

    // Relaxed constructor for free-flow-only use: any odd d >= 3 admitted.
    static ModelParams free_flow(int d_, int k_ = 0);

    int n() const { return d - 2; }

  private:
    ModelParams(int d_, int k_, bool relaxed);
};

// Pointwise sample of a radial profile.
struct ProfileSample {
    Real r;
    Real value;
};

// u*(t,r) = (2/r) arctan(r/(sqrt(d-4) t)); the removable singularity at r=0
// evaluates to 2/(sqrt(d-4) t). Throws for t <= 0.
Real u_star(Real t, Real r, int d);

// Static profile on slices: w*(y) = (2/y) arctan(y/sqrt(d-4)), w*(0) = 2/sqrt(d-4).
Real w_star_fhsc(Real y, int d);

// Linearization potential V(y) = -8(d-3)(d-4)/((d-4+y^2)^2). Smooth, negative, bounded.
Real potential_v(Real y, int d);

// F(r,z) = (d-3)/2 (sin(2rz) - 2rz)/r^3 and its z-derivatives.
Real f_tilde(Real r, Real z, int d);
Real f_tilde_prime(Real r, Real z, int d);   // (d-3)(cos(2rz)-1)/r^2
Real f_tilde_second(Real r, Real z, int d);  // -2(d-3) sin(2rz)/r

// Quadratic remainder N(r,phi) = F(r,w*+phi) - F(r,w*) - F'(r,w*) phi,
// evaluated through the cancellation-free product form
//   N = -(d-3) phi^2 [ 2 w*(r) sinc(A) sinc(r phi)^2 - 4 phi cos(A) S3(2 r phi) ],
// with A = 2 r w*(r) and S3(x) = (sin x - x)/x^3.
Real nonlinear_remainder(Real r, Real phi, int d);

// Boundary-weighted remainder W * N(W^{-1} q1) with W = (1-r^2)^((3-d)/2),
// computed as q1 * phi * J(r,phi) where phi = (1-r^2)^((d-3)/2) q1 and
// J = N/phi^2, so no infinite weight is ever multiplied; exactly 0 at r = 1.
Real weighted_remainder(Real r, Real q1, int d);

// Sphere embedding of a co-rotational profile value: (sin(|x|u) dir, cos(|x|u)).
// direction must be a unit vector; the result lives in R^{n+1}.
Vector corotational_embed(Real u_value, Real x_norm, const Vector& direction);

// Residual of the radial semilinear wave equation
//   u_tt - u_rr - ((d-1)/r) u_r + F(r,u)
// for a sampler u(t,r), via 4th-order central differences of half-width 2h.
// r = 0 uses the even-profile limit u_tt - d u_rr(0) + F(0,u). Throws if the
// stencil leaves {t > 0, r >= 0}.
Real cartesian_residual(const std::function<Real(Real, Real)>& u_sampler,
                        Real t, Real r, int d, Real h);

}  // namespace wml
