#include "wavemaplab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wml {

namespace {

// Full Gauss-Lobatto differentiation matrix on x_i = cos(i pi / M), i = 0..M,
// with the negative-sum trick on the diagonal.
Matrix lobatto_diff_matrix(int M) {
    Matrix D(M + 1, M + 1);
    Vector x(M + 1), c(M + 1);
    for (int i = 0; i <= M; ++i) {
        x(i) = std::cos(Real(i) * pi / Real(M));
        c(i) = (i == 0 || i == M) ? 2.0 : 1.0;
    }
    for (int i = 0; i <= M; ++i) {
        Real rowsum = 0.0;
        for (int j = 0; j <= M; ++j) {
            if (i == j) continue;
            const Real sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            D(i, j) = (c(i) / c(j)) * sign / (x(i) - x(j));
            rowsum += D(i, j);
        }
        D(i, i) = -rowsum;
    }
    return D;
}

// Keep rows 0..N and fold columns j and 2N-j with the given parity sign.
Matrix fold(const Matrix& full, int N, Real sign) {
    Matrix out(N + 1, N + 1);
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j < N; ++j)
            out(i, j) = full(i, j) + sign * full(i, 2 * N - j);
        out(i, N) = full(i, N);
    }
    return out;
}

// Differentiation annihilates constants; pin the diagonal so the folded
// matrix does so exactly instead of to O(N^2 eps).
void enforce_zero_row_sums(Matrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        Real off = 0.0;
        for (int j = 0; j < m.cols(); ++j)
            if (j != i) off += m(i, j);
        m(i, i) = -off;
    }
}

// int_0^1 T_{2k}(r) r^{d-1} dr, from cos^{d-1} expanded in cosines and
// int_0^{pi/2} sin(t) cos(2mt) dt = 1/(1-4m^2).
Vector even_chebyshev_moments(int N, int d) {
    const int e = (d - 1) / 2;
    std::vector<Real> binom(e + 1);  // C(2e, e-i) for i = 0..e
    Real c = 1.0;
    for (int j = 0; j < e; ++j) c *= Real(2 * e - j) / Real(j + 1);  // C(2e, e)
    for (int i = 0; i <= e; ++i) {
        binom[i] = c;  // C(2e, e-i)
        c *= Real(e - i) / Real(e + i + 1);
    }
    auto inv = [](int m) { return 1.0 / (1.0 - 4.0 * Real(m) * Real(m)); };
    Vector mom(N + 1);
    const Real scale = std::pow(0.5, d - 1);
    for (int k = 0; k <= N; ++k) {
        Real acc = binom[0] * inv(k);
        for (int i = 1; i <= e; ++i)
            acc += binom[i] * (inv(k + i) + inv(k - i));
        mom(k) = scale * acc;
    }
    return mom;
}

}  // namespace

RadialGrid::RadialGrid(int N, int d_) : n_modes(N), d(d_) {
    if (N < 8)
        throw std::invalid_argument("RadialGrid: N must be >= 8");
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("RadialGrid: d must be odd and >= 3");

    nodes.resize(N + 1);
    for (int j = 0; j <= N; ++j)
        nodes(j) = std::cos(Real(j) * pi / Real(2 * N));
    nodes(N) = 0.0;

    const Matrix Dfull = lobatto_diff_matrix(2 * N);
    D1 = fold(Dfull, N, 1.0);
    D1_odd = fold(Dfull, N, -1.0);
    D2 = fold(Dfull * Dfull, N, 1.0);
    enforce_zero_row_sums(D1);
    enforce_zero_row_sums(D2);

    // Quadrature: transform node values to even Chebyshev coefficients
    // (DCT-I with halved end terms) and integrate T_{2k} exactly.
    const Vector mom = even_chebyshev_moments(N, d);
    quad_weights.resize(N + 1);
    for (int j = 0; j <= N; ++j) {
        const Real cj = (j == 0 || j == N) ? 2.0 : 1.0;
        Real acc = 0.0;
        for (int k = 0; k <= N; ++k) {
            const Real ck = (k == 0 || k == N) ? 2.0 : 1.0;
            acc += mom(k) / ck * std::cos(Real(k) * Real(j) * pi / Real(N));
        }
        quad_weights(j) = 2.0 / (Real(N) * cj) * acc;
    }
}

RadialGrid build_grid(int N, int d) { return RadialGrid(N, d); }

namespace {

// Differentiating f - mean(f) is exact for constants, which the plain
// matvec only annihilates to O(eps sum|entries|); near-constant fields are
// the common case along the decaying flow.
Vector apply_even(const Matrix& D, const Vector& f) {
    const Real mean = f.mean();
    return D * (f.array() - mean).matrix();
}

}  // namespace

RadialField lambda_op(const RadialGrid& grid, const RadialField& f) {
    if (f.size() != grid.nodes.size())
        throw std::invalid_argument("lambda_op: field size mismatch");
    return grid.nodes.cwiseProduct(apply_even(grid.D1, f));
}

RadialField radial_laplacian(const RadialGrid& grid, const RadialField& f) {
    if (f.size() != grid.nodes.size())
        throw std::invalid_argument("radial_laplacian: field size mismatch");
    const int N = grid.n_modes;
    const Vector d1 = apply_even(grid.D1, f);
    RadialField out = apply_even(grid.D2, f);
    for (int j = 0; j < N; ++j)
        out(j) += Real(grid.d - 1) / grid.nodes(j) * d1(j);
    out(N) *= Real(grid.d);
    return out;
}

RadialField derivative(const RadialGrid& grid, const RadialField& f, int j) {
    RadialField g = f;
    for (int m = 0; m < j; ++m)
        g = (m % 2 == 0) ? apply_even(grid.D1, g) : (grid.D1_odd * g).eval();
    return g;
}

Real integrate(const RadialGrid& grid, const RadialField& f) {
    return grid.quad_weights.dot(f);
}

Real sobolev_norm(const RadialGrid& grid, const RadialField& f, int j_max) {
    if (j_max < 0 || j_max > 4)
        throw std::invalid_argument("sobolev_norm: j_max must be in [0,4]");
    Real acc = 0.0;
    RadialField g = f;
    for (int j = 0; j <= j_max; ++j) {
        acc += integrate(grid, g.cwiseProduct(g));
        if (j < j_max)
            g = (j % 2 == 0) ? apply_even(grid.D1, g) : (grid.D1_odd * g).eval();
    }
    return std::sqrt(acc);
}

Real interpolate(const RadialGrid& grid, const RadialField& f, Real r) {
    if (r < 0.0 || r > 1.0)
        throw std::domain_error("interpolate: r must be in [0,1]");
    const int N = grid.n_modes;
    const Real u = r * r;
    if (r == 0.0) return f(N);
    Real num = 0.0, den = 0.0;
    for (int j = 0; j <= N; ++j) {
        const Real uj = grid.nodes(j) * grid.nodes(j);
        if (u == uj) return f(j);
        Real t;
        if (j == 0)
            t = u / (u - 1.0);
        else if (j == N)
            t = (N % 2 == 0) ? 1.0 : -1.0;
        else
            t = ((j % 2 == 0) ? 2.0 : -2.0) * u / (u - uj);
        num += t * f(j);
        den += t;
    }
    return num / den;
}

}  // namespace wml
