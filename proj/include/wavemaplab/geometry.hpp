#pragma once

#include "wavemaplab/types.hpp"

// Hyperboloidal similarity coordinates for the forward light-cone region,
// their factorization through classical similarity coordinates and the
// Kelvin transform, and the conformal boundary weights. Everything is
// radial: points carry (t,|x|) and (s,|y|) scalars only.

namespace wml {

struct CartesianPoint {
    Real t;       // time, t > 0 in the covered region
    Real x_norm;  // radial coordinate |x| >= 0
};

struct HyperboloidalPoint {
    Real s;       // slice label, s >= 0
    Real y_norm;  // |y| in [0,1)
};

// Weight (1-|y|^2)^((ell-d)/2); ell in {1,3}, d odd so the exponent is an integer.
struct WeightSpec {
    int ell;
    int d;

    WeightSpec(int ell_, int d_);
    int exponent() const { return (ell - d) / 2; }
};

// (s,y) -> (t,x) = (e^s/(1-y^2), e^s y/(1-y^2)). Throws std::domain_error for y >= 1.
CartesianPoint fhsc_to_cartesian(const HyperboloidalPoint& p);

// Inverse map (t,x) -> (s,y) = (-log(t/(t^2-x^2)), x/t). Requires t > 0,
// t^2 - x^2 > 0 and s >= 0 (point on or above the initial hyperboloid).
HyperboloidalPoint cartesian_to_fhsc(const CartesianPoint& p);

// Classical similarity coordinates (tau,xi) -> (-e^{-tau}, e^{-tau} xi),
// landing in the truncated past light cone of the origin.
CartesianPoint similarity_chi(Real tau, Real xi_norm);

// Kelvin transform (t,x) -> (-t, x)/(t^2-x^2) on the truncated past cone.
// Composed with similarity_chi it reproduces fhsc_to_cartesian.
CartesianPoint kelvin(const CartesianPoint& p);

// (1-y^2)^((ell-d)/2). Returns +infinity at y=1 when the exponent is negative;
// interior algorithms use weight_reciprocal at that node instead.
Real weight(const WeightSpec& spec, Real y_norm);

// The reciprocal weight (1-y^2)^((d-ell)/2), a polynomial; vanishes at y=1 for d > ell.
Real weight_reciprocal(const WeightSpec& spec, Real y_norm);

}  // namespace wml
