#include "wavemaplab/modes.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wml {

namespace {

void check_dimension(int d) {
    if (d < 5 || d % 2 == 0)
        throw std::invalid_argument("mode analysis requires odd d >= 5");
}

}  // namespace

ModeProblem::ModeProblem(Complex lambda_, int d_) : lambda(lambda_), d(d_) { check_dimension(d); }

ReducedProblem::ReducedProblem(Real mu_, int d_) : mu(mu_), d(d_) { check_dimension(d); }

Complex mu_of_lambda(Complex lambda, int d) {
    return -(lambda + 1.0) * (lambda + Real(d - 4));
}

Real mu_of_lambda(Real lambda, int d) {
    return -(lambda + 1.0) * (lambda + Real(d - 4));
}

Rational mu_of_lambda(const Rational& lambda, int d) {
    return -(lambda + Rational(1)) * (lambda + Rational(d - 4));
}

std::pair<Complex, Complex> frobenius_indices(const ModeProblem& problem, Endpoint endpoint) {
    if (endpoint == Endpoint::origin)
        return {Complex(0.0), Complex(Real(2 - problem.d))};
    return {Complex(0.0), -problem.lambda - Real(problem.d - 3) / 2.0};
}

std::pair<Complex, Complex> frobenius_indices(const ReducedProblem& problem, Endpoint endpoint) {
    const int d = problem.d;
    if (endpoint == Endpoint::origin)
        return {Complex(Real(d - 1) / 2.0), Complex(-Real(d - 3) / 2.0)};
    const Complex s = std::sqrt(Complex(Real(d - 5) * Real(d - 5) - 4.0 * problem.mu));
    return {(2.0 + s) / 4.0, (2.0 - s) / 4.0};
}

std::pair<Rational, Rational> frobenius_indices_exact(OdeForm form, Endpoint endpoint,
                                                      const Rational& lambda, int d) {
    check_dimension(d);
    if (form == OdeForm::smooth) {
        if (endpoint == Endpoint::origin)
            return {Rational(0), Rational(2 - d)};
        return {Rational(0), -lambda - Rational(d - 3, 2)};
    }
    if (endpoint == Endpoint::origin)
        return {Rational(d - 1, 2), Rational(-(d - 3), 2)};
    const Rational mu = mu_of_lambda(lambda, d);
    const Rational radicand = Rational((d - 5) * (d - 5)) - Rational(4) * mu;
    const Rational s = rational_sqrt(radicand);
    return {(Rational(2) + s) / Rational(4), (Rational(2) - s) / Rational(4)};
}

ReducedCoefficients::ReducedCoefficients(int d_) : d(d_) { check_dimension(d); }

Real ReducedCoefficients::q(Real r) const {
    if (r <= 0.0 || r >= 1.0)
        throw std::domain_error("ReducedCoefficients::q: r must be in (0,1)");
    const Real u = 1.0 - r * r;
    const Real a = Real(d - 3) * Real(d - 1) / 4.0;
    const Real b = Real(3 * d - 9) / 2.0;
    return -((a - r * r * b) / (r * r * u * u) + potential_v(r, d) / u);
}

Real ReducedCoefficients::w(Real r) const {
    if (r <= 0.0 || r >= 1.0)
        throw std::domain_error("ReducedCoefficients::w: r must be in (0,1)");
    const Real u = 1.0 - r * r;
    return 1.0 / (u * u);
}

ReducedCoefficients reduced_coefficients(int d) { return ReducedCoefficients(d); }

Real g0_profile(Real r, int d) {
    check_dimension(d);
    const Real a = Real(d - 1) / 2.0;
    const Real b = Real(7 - d) / 4.0;
    return std::pow(r, a) * std::pow(1.0 - r * r, b) / (Real(d - 4) + r * r);
}

Real liouville_factor(Real r, Real lambda, int d) {
    check_dimension(d);
    if (r <= 0.0 || r >= 1.0)
        throw std::domain_error("liouville_factor: r must be in (0,1)");
    return std::pow(r, Real(1 - d) / 2.0) *
           std::pow(1.0 - r * r, (Real(1 - d) - 2.0 * lambda) / 4.0);
}

namespace {

// Series of r^2 (q + mu w) = sum Q_j r^{2j}, from the closed forms of q, w
// and the geometric expansions of (1-r^2)^{-1}, (1-r^2)^{-2}, V(r).
std::vector<Real> reduced_q_series(int d, Real mu, int n_terms) {
    const Real a = Real(d - 3) * Real(d - 1) / 4.0;
    std::vector<Real> Q(n_terms);
    Q[0] = -a;
    Real v_partial = 0.0;  // sum of Taylor coefficients of V up to j-1
    Real v_sign = 1.0;
    for (int j = 1; j < n_terms; ++j) {
        const Real v_jm1 = -8.0 * Real(d - 3) * Real(j) * v_sign / std::pow(Real(d - 4), j);
        v_partial += v_jm1;
        v_sign = -v_sign;
        Q[j] = -a * Real(j + 1) + 1.5 * Real(d - 3) * Real(j) + mu * Real(j) - v_partial;
    }
    return Q;
}

}  // namespace

std::vector<Real> frobenius_series_coefficients(const ReducedProblem& problem, int n_terms) {
    const int d = problem.d;
    const int nu = (d - 1) / 2;
    const std::vector<Real> Q = reduced_q_series(d, problem.mu, n_terms);

    std::vector<Real> c(n_terms);
    Real fact = 1.0;
    for (int m = 2; m <= nu; ++m) fact *= Real(m);
    c[0] = 1.0 / fact;  // normalization g^{(nu)}(0) = 1
    for (int n = 1; n < n_terms; ++n) {
        Real acc = 0.0;
        for (int m = 0; m < n; ++m) acc += c[m] * Q[n - m];
        c[n] = -acc / (2.0 * Real(n) * Real(d + 2 * n - 2));
    }
    return c;
}

namespace {

// Dormand-Prince 5(4) step for y' = f(r,y), y in R^2.
using Vec2 = Eigen::Vector2d;

template <class F>
bool dp5_step(const F& f, Real r, const Vec2& y, Real h, Vec2& y_out, Vec2& err_out) {
    static const Real c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    const Vec2 k1 = f(r, y);
    const Vec2 k2 = f(r + c2 * h, y + h * (k1 / 5.0));
    const Vec2 k3 = f(r + c3 * h, y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
    const Vec2 k4 = f(r + c4 * h, y + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
    const Vec2 k5 = f(r + c5 * h, y + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                                           64448.0 / 6561 * k3 - 212.0 / 729 * k4));
    const Vec2 k6 = f(r + h, y + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 +
                                      46732.0 / 5247 * k3 + 49.0 / 176 * k4 -
                                      5103.0 / 18656 * k5));
    y_out = y + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 + 125.0 / 192 * k4 -
                     2187.0 / 6784 * k5 + 11.0 / 84 * k6);
    const Vec2 k7 = f(r + h, y_out);
    const Vec2 y4 = y + h * (5179.0 / 57600 * k1 + 7571.0 / 16695 * k3 + 393.0 / 640 * k4 -
                             92097.0 / 339200 * k5 + 187.0 / 2100 * k6 + 1.0 / 40 * k7);
    err_out = y_out - y4;
    return y_out.allFinite();
}

}  // namespace

ShootResult shoot_reduced(const ReducedProblem& problem, int grid_density,
                          Real endpoint_margin, Real rtol) {
    if (endpoint_margin < 1e-8 || endpoint_margin > 1e-3)
        throw std::invalid_argument("shoot_reduced: endpoint_margin must be in [1e-8, 1e-3]");
    if (grid_density < 10)
        throw std::invalid_argument("shoot_reduced: grid_density must be >= 10");

    const ReducedCoefficients coeff(problem.d);
    const Real mu = problem.mu;
    auto f = [&](Real r, const Vec2& y) -> Vec2 {
        return {y(1), -(coeff.q(r) + mu * coeff.w(r)) * y(0)};
    };

    const Real r_start = 1e-3;
    const Real r_end = 1.0 - endpoint_margin;
    const int nu = (problem.d - 1) / 2;

    // Frobenius series start: three terms, the fourth monitors truncation.
    const std::vector<Real> c = frobenius_series_coefficients(problem, 4);
    Vec2 y;
    y(0) = std::pow(r_start, nu) * (c[0] + r_start * r_start * (c[1] + r_start * r_start * c[2]));
    y(1) = std::pow(r_start, nu - 1) *
           (Real(nu) * c[0] + r_start * r_start * (Real(nu + 2) * c[1] + r_start * r_start * Real(nu + 4) * c[2]));
    const Real truncation = std::abs(c[3]) * std::pow(r_start, nu + 6);
    if (truncation > 1e-6 * std::abs(y(0)))
        throw std::runtime_error("shoot_reduced: Frobenius series truncation too large");

    ShootResult out;
    out.samples.push_back({r_start, y(0)});
    Real sign_prev = (y(0) > 0.0) ? 1.0 : ((y(0) < 0.0) ? -1.0 : 0.0);

    const Real h_max = (r_end - r_start) / Real(grid_density);
    Real r = r_start;
    Real h = h_max / 16.0;
    while (r < r_end) {
        if (r + h > r_end) h = r_end - r;
        Vec2 y_new, err;
        if (!dp5_step(f, r, y, h, y_new, err))
            throw std::runtime_error("shoot_reduced: non-finite state");
        Real ratio = 0.0;
        const Vec2 fy = f(r, y);
        for (int i = 0; i < 2; ++i) {
            const Real scale = rtol * (std::abs(y(i)) + std::abs(h * fy(i))) + 1e-300;
            ratio = std::max(ratio, std::abs(err(i)) / scale);
        }
        if (ratio <= 1.0) {
            r += h;
            y = y_new;
            out.samples.push_back({r, y(0)});
            const Real sign_new = (y(0) > 0.0) ? 1.0 : ((y(0) < 0.0) ? -1.0 : 0.0);
            if (sign_new != 0.0) {
                if (sign_prev != 0.0 && sign_new != sign_prev) ++out.zero_count;
                sign_prev = sign_new;
            }
        }
        const Real grow = 0.9 * std::pow(std::max(ratio, 1e-10), -0.2);
        h *= std::min(5.0, std::max(0.2, grow));
        h = std::min(h, h_max);
        if (h < 1e-14)
            throw std::runtime_error("shoot_reduced: step-size underflow");
    }
    out.terminal_r = r;
    return out;
}

OscillationCertificate oscillation_certificate(int d, Real mu_min, int n_samples) {
    check_dimension(d);
    if (!(mu_min < 0.0))
        throw std::invalid_argument("oscillation_certificate: mu_min must be negative");
    if (n_samples < 50)
        throw std::invalid_argument("oscillation_certificate: n_samples must be >= 50");

    OscillationCertificate cert;
    cert.d = d;
    cert.verdict = "PASS";
    for (int i = 0; i < n_samples; ++i) {
        const Real mu = mu_min * Real(n_samples - i) / Real(n_samples);
        try {
            const ShootResult res = shoot_reduced(ReducedProblem(mu, d), 2000, 1e-6, 1e-9);
            cert.samples.push_back({mu, res.zero_count});
            if (res.zero_count != 0 && cert.verdict == "PASS")
                cert.verdict = "FAIL";
        } catch (const std::runtime_error&) {
            cert.verdict = "INCONCLUSIVE";
            cert.failing_mu = mu;
            cert.samples.push_back({mu, -1});
        }
    }
    return cert;
}

Matrix discretize_generator(const RadialGrid& grid, const ModelParams& params,
                            bool include_potential) {
    if (grid.d != params.d)
        throw std::invalid_argument("discretize_generator: grid dimension mismatch");
    const int n = int(grid.nodes.size());
    const int d = params.d;

    Matrix lam = grid.nodes.asDiagonal() * grid.D1;
    Matrix lap = grid.D2;
    for (int i = 0; i < n - 1; ++i)
        lap.row(i) += Real(d - 1) / grid.nodes(i) * grid.D1.row(i);
    lap.row(n - 1) = Real(d) * grid.D2.row(n - 1);

    Matrix A = Matrix::Zero(2 * n, 2 * n);
    A.topLeftCorner(n, n) = -lam - Real(d - 2) * Matrix::Identity(n, n);
    A.topRightCorner(n, n) = Matrix::Identity(n, n);
    A.bottomLeftCorner(n, n) = lap;
    if (include_potential)
        for (int j = 0; j < n; ++j)
            A(n + j, j) -= potential_v(grid.nodes(j), d);
    A.bottomRightCorner(n, n) = -lam - Real(d - 1) * Matrix::Identity(n, n);
    return A;
}

Real free_growth_bound(const ModelParams& params, Real eps) {
    return std::max(Real(params.d) / 2.0 - Real(params.k), eps) - Real(params.d - 2);
}

namespace {

// Parlett-Reinsch balancing (diagonal similarity by powers of two). The
// blocks of the generator are badly graded, which otherwise costs the QR
// iteration several digits on the well-conditioned eigenvalues.
void balance_in_place(Matrix& A) {
    const int n = int(A.rows());
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            Real c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(A(j, i));
                r += std::abs(A(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const Real s = c + r;
            Real f = 1.0;
            while (c < r / 2.0) {
                f *= 2.0;
                c *= 4.0;
            }
            while (c >= r * 2.0) {
                f /= 2.0;
                c /= 4.0;
            }
            if ((c + r) / f < 0.95 * s && f != 1.0) {
                converged = false;
                A.row(i) /= f;
                A.col(i) *= f;
            }
        }
    }
}

std::vector<Complex> dense_eigenvalues(Matrix A) {
    balance_in_place(A);
    Eigen::EigenSolver<Matrix> solver(A, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense eigensolver failed to converge");
    std::vector<Complex> evs(solver.eigenvalues().size());
    for (int i = 0; i < solver.eigenvalues().size(); ++i)
        evs[i] = solver.eigenvalues()(i);
    return evs;
}

}  // namespace

SpectrumReport generator_spectrum(const ModelParams& params, int N_low, int N_high,
                                  Real agree_tol, bool include_potential) {
    if (N_high < 2 * N_low)
        throw std::invalid_argument("generator_spectrum: N_high must be >= 2 N_low");

    auto eigenvalues_at = [&](int N) {
        const RadialGrid grid(N, params.d);
        return dense_eigenvalues(discretize_generator(grid, params, include_potential));
    };

    const std::vector<Complex> low = eigenvalues_at(N_low);
    std::vector<Complex> high = eigenvalues_at(N_high);
    std::sort(high.begin(), high.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() < b.imag();
    });

    SpectrumReport report;
    report.d = params.d;
    report.k = params.k;
    report.N_low = N_low;
    report.N_high = N_high;
    report.include_potential = include_potential;
    report.free_growth_bound = free_growth_bound(params);
    report.abscissa = -std::numeric_limits<Real>::infinity();
    for (const Complex& z : high) {
        Real dist = std::numeric_limits<Real>::infinity();
        for (const Complex& zl : low)
            dist = std::min(dist, std::abs(z - zl));
        const bool resolved = dist <= agree_tol;
        report.eigenvalues.push_back({z, resolved});
        if (resolved)
            report.abscissa = std::max(report.abscissa, z.real());
    }
    return report;
}

namespace {

// Collocation of the reduced operator in the regular variable p = g / r^nu:
//   tau_hat p = -(1-r^2)^2 [ p'' + (2 nu / r) p' + q_reg(r) p ],
// with q_reg = q + nu(nu-1)/r^2 smooth and even (the centrifugal pole
// cancels against the leading part of q). The boundary node r = 1 is
// truncated; the two-resolution filter discards whatever that perturbs.
Matrix reduced_collocation_matrix(int d, int N) {
    const RadialGrid grid(N, d);
    const ReducedCoefficients coeff(d);
    const int nu = (d - 1) / 2;
    const Real a = Real(nu) * Real(nu - 1);
    const std::vector<Real> Q = reduced_q_series(d, 0.0, 14);

    auto q_reg = [&](Real r) {
        if (r < 0.15) {
            const Real u = r * r;
            Real acc = 0.0;
            for (int j = int(Q.size()) - 1; j >= 1; --j)
                acc = Q[size_t(j)] + acc * u;
            return acc;
        }
        return coeff.q(r) + a / (r * r);
    };

    const int n = int(grid.nodes.size());
    Matrix full = Matrix::Zero(n, n);
    for (int i = 1; i < n; ++i) {  // row 0 (r = 1) is dropped below
        const Real r = grid.nodes(i);
        const Real u = 1.0 - r * r;
        if (i == n - 1) {
            // r = 0: p'(0) = 0 by parity, (2 nu / r) p' -> 2 nu p''(0)
            full.row(i) = -(1.0 + 2.0 * Real(nu)) * grid.D2.row(i);
            full(i, i) -= q_reg(0.0);
        } else {
            full.row(i) = -(u * u) * (grid.D2.row(i) + 2.0 * Real(nu) / r * grid.D1.row(i));
            full(i, i) -= u * u * q_reg(r);
        }
    }
    return full.bottomRightCorner(n - 1, n - 1);  // drop the r = 1 node
}

}  // namespace

std::vector<Complex> reduced_resolved_spectrum(int d, int N_low, int N_high, Real agree_tol) {
    if (N_high < 2 * N_low)
        throw std::invalid_argument("reduced_resolved_spectrum: N_high must be >= 2 N_low");
    const std::vector<Complex> low = dense_eigenvalues(reduced_collocation_matrix(d, N_low));
    const std::vector<Complex> high = dense_eigenvalues(reduced_collocation_matrix(d, N_high));
    std::vector<Complex> resolved;
    for (const Complex& z : high) {
        Real dist = std::numeric_limits<Real>::infinity();
        for (const Complex& zl : low)
            dist = std::min(dist, std::abs(z - zl));
        if (dist <= agree_tol * (1.0 + std::abs(z)))
            resolved.push_back(z);
    }
    std::sort(resolved.begin(), resolved.end(),
              [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
    return resolved;
}

}  // namespace wml
