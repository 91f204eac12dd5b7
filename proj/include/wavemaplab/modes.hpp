#pragma once

#include <utility>
#include <vector>

#include "wavemaplab/grid.hpp"
#include "wavemaplab/model.hpp"
#include "wavemaplab/rational.hpp"
#include "wavemaplab/types.hpp"

// Spectral analysis of the linearized generator. Mode stability is certified
// by shooting for the self-adjoint reduced problem and counting zeros
// (oscillation theory); the dense matrix spectrum of the discretized
// generator serves as a secondary cross-check with a two-resolution filter
// against discretization artifacts.

namespace wml {

// Mode equation data in the smooth form, spectral parameter lambda.
struct ModeProblem {
    Complex lambda;
    int d;

    ModeProblem(Complex lambda_, int d_);
};

// Liouville-reduced self-adjoint problem, spectral parameter mu = -(lambda+1)(lambda+d-4).
struct ReducedProblem {
    Real mu;
    int d;

    ReducedProblem(Real mu_, int d_);
};

Complex mu_of_lambda(Complex lambda, int d);
Real mu_of_lambda(Real lambda, int d);
Rational mu_of_lambda(const Rational& lambda, int d);

enum class Endpoint { origin, boundary };
enum class OdeForm { smooth, reduced };

// Characteristic exponents of the mode ODE at the regular singular points.
// Smooth form: {0, 2-d} at 0 and {0, -lambda-(d-3)/2} at 1.
// Reduced form: {(d-1)/2, -(d-3)/2} at 0 and {(2 +- sqrt((d-5)^2-4mu))/4} at 1.
std::pair<Complex, Complex> frobenius_indices(const ModeProblem& problem, Endpoint endpoint);
std::pair<Complex, Complex> frobenius_indices(const ReducedProblem& problem, Endpoint endpoint);

// Exact-rational variant for integer/rational lambda (mu derived exactly);
// throws if the boundary radicand is not a perfect square.
std::pair<Rational, Rational> frobenius_indices_exact(OdeForm form, Endpoint endpoint,
                                                      const Rational& lambda, int d);

// Coefficient data of the reduced operator tau g = -(1-r^2)^2 (g'' + q g):
//   q(r) = -[((d-3)(d-1)/4 - r^2 (3d-9)/2)/(r^2 (1-r^2)^2) + V(r)/(1-r^2)],
//   w(r) = 1/(1-r^2)^2,
// with q ~ -(d-3)(d-1)/(4 r^2) as r -> 0. Both endpoints are limit-point;
// evaluation exactly at r = 0 or r = 1 is a domain error.
struct ReducedCoefficients {
    int d;

    explicit ReducedCoefficients(int d_);
    Real q(Real r) const;
    Real w(Real r) const;
};

ReducedCoefficients reduced_coefficients(int d);

// Explicit zero mode g0(r) = r^{(d-1)/2} (1-r^2)^{(7-d)/4} / (d-4+r^2), tau g0 = 0.
Real g0_profile(Real r, int d);

// Liouville substitution factor h(r) = r^{(1-d)/2} (1-r^2)^{(1-d-2 lambda)/4};
// maps smooth-form solutions f = h g to reduced-form g and back. r in (0,1).
Real liouville_factor(Real r, Real lambda, int d);

// Coefficients c_0..c_{n-1} of the normalized Frobenius solution
// g = sum c_m r^{(d-1)/2 + 2m} with g^{((d-1)/2)}(0) = 1.
std::vector<Real> frobenius_series_coefficients(const ReducedProblem& problem, int n_terms);

struct ShootResult {
    int zero_count = 0;
    std::vector<std::pair<Real, Real>> samples;  // (r, g) at accepted steps
    Real terminal_r = 0.0;
};

// Integrates -g'' - q g = mu w g from r = 1e-3 (Frobenius series start) to
// 1 - endpoint_margin with adaptive 5th-order stepping; counts strict sign
// changes of g. grid_density bounds the maximal step to span/grid_density.
// Throws std::runtime_error on step-size underflow or non-finite values.
ShootResult shoot_reduced(const ReducedProblem& problem, int grid_density = 2000,
                          Real endpoint_margin = 1e-6, Real rtol = 1e-10);

struct MuSample {
    Real mu;
    int zero_count;
};

struct OscillationCertificate {
    int d = 0;
    std::vector<MuSample> samples;
    std::string verdict;  // "PASS", "FAIL" or "INCONCLUSIVE"
    Real failing_mu = 0.0;  // set for INCONCLUSIVE
};

// Shoots at n_samples values of mu in [mu_min, 0); PASS iff every zero count
// is 0. Integration failures yield INCONCLUSIVE with the failing mu.
OscillationCertificate oscillation_certificate(int d, Real mu_min, int n_samples);

// Block matrix of the linearized generator on (q1,q2):
//   [[-Lambda-(d-2)I, I], [Lap - V, -Lambda-(d-1)I]]
// assembled from the grid operators (V present iff include_potential).
Matrix discretize_generator(const RadialGrid& grid, const ModelParams& params,
                            bool include_potential);

struct EigenvalueEntry {
    Complex value;
    bool resolved;  // agrees between the two resolutions within agree_tol
};

struct SpectrumReport {
    int d = 0, k = 0;
    int N_low = 0, N_high = 0;
    bool include_potential = true;
    std::vector<EigenvalueEntry> eigenvalues;  // high-resolution set, Re descending
    Real abscissa = 0.0;                       // max Re over the resolved set
    Real free_growth_bound = 0.0;              // max(d/2-k, eps) - (d-2), eps = 0.01
};

// Dense nonsymmetric eigensolve at two resolutions; eigenvalues matched
// across resolutions within agree_tol are marked resolved.
SpectrumReport generator_spectrum(const ModelParams& params, int N_low, int N_high,
                                  Real agree_tol, bool include_potential = true);

Real free_growth_bound(const ModelParams& params, Real eps = 0.01);

// Cross-validation of the shooting certificate: direct collocation of the
// reduced operator in the regular variable p = g / r^{(d-1)/2} (boundary
// node truncated), filtered by two-resolution agreement. The underlying
// problem is self-adjoint, so resolved eigenvalues must be real; the
// certificate predicts none of them is negative.
std::vector<Complex> reduced_resolved_spectrum(int d, int N_low, int N_high, Real agree_tol);

}  // namespace wml
