#pragma once

#include "wavemaplab/types.hpp"

// Radial spectral discretization of even profiles on [0,1]. Nodes are the
// nonnegative half of a Gauss-Lobatto grid of size 2N, r_j = cos(j pi / 2N),
// so r_0 = 1 and r_N = 0. Differentiation matrices act on samples of even
// interpolants; parity folding of the full grid halves the matrix size and
// enforces regularity at r = 0. The endpoint r = 1 is a regular node with no
// boundary condition (the evolution operator degenerates there).

namespace wml {

using RadialField = Vector;  // values aligned with RadialGrid::nodes

class RadialGrid {
  public:
    // Throws std::invalid_argument for N < 8 or invalid d.
    RadialGrid(int N, int d);

    int n_modes;  // N
    int d;        // radial measure r^{d-1}
    Vector nodes;         // descending, nodes(0)=1, nodes(N)=0
    Matrix D1;            // derivative of the even interpolant (values are odd)
    Matrix D1_odd;        // derivative of the odd interpolant (values are even)
    Matrix D2;            // second derivative of the even interpolant
    Vector quad_weights;  // integrates even interpolants against r^{d-1} on [0,1]
};

RadialGrid build_grid(int N, int d);

// r f'(r); exactly 0 at r = 0.
RadialField lambda_op(const RadialGrid& grid, const RadialField& f);

// f'' + ((d-1)/r) f'; the even-parity limit d f''(0) is used at r = 0.
RadialField radial_laplacian(const RadialGrid& grid, const RadialField& f);

// j-th derivative with parity-correct folding (even, odd, even, ...).
RadialField derivative(const RadialGrid& grid, const RadialField& f, int j);

// int_0^1 f r^{d-1} dr of the even interpolant.
Real integrate(const RadialGrid& grid, const RadialField& f);

// Monitoring norm sqrt(sum_{j<=j_max} int |f^(j)|^2 r^{d-1} dr); j_max <= 4.
Real sobolev_norm(const RadialGrid& grid, const RadialField& f, int j_max);

// Barycentric evaluation of the even interpolant; exact at nodes. r in [0,1].
Real interpolate(const RadialGrid& grid, const RadialField& f, Real r);

}  // namespace wml
