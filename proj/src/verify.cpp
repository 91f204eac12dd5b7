#include "wavemaplab/verify.hpp"

#include <cmath>
#include <random>

#include "wavemaplab/evolve.hpp"
#include "wavemaplab/geometry.hpp"
#include "wavemaplab/grid.hpp"
#include "wavemaplab/model.hpp"
#include "wavemaplab/modes.hpp"

namespace wml {

namespace {

Real geometry_roundtrip_error(std::mt19937_64& rng) {
    std::uniform_real_distribution<Real> us(0.0, 10.0);
    std::uniform_real_distribution<Real> uy(0.0, 1.0 - 1e-6);
    Real worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const HyperboloidalPoint p{us(rng), uy(rng)};
        const HyperboloidalPoint back = cartesian_to_fhsc(fhsc_to_cartesian(p));
        worst = std::max(worst, std::abs(back.s - p.s) / (1.0 + std::abs(p.s)));
        worst = std::max(worst, std::abs(back.y_norm - p.y_norm));
    }
    return worst;
}

Real geometry_factorization_error(std::mt19937_64& rng) {
    std::uniform_real_distribution<Real> us(0.0, 10.0);
    std::uniform_real_distribution<Real> uy(0.0, 1.0 - 1e-3);
    Real worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Real s = us(rng), y = uy(rng);
        const CartesianPoint direct = fhsc_to_cartesian({s, y});
        const CartesianPoint via = kelvin(similarity_chi(s, y));
        worst = std::max(worst, std::abs(via.t - direct.t) / std::abs(direct.t));
        worst = std::max(worst, std::abs(via.x_norm - direct.x_norm) / std::abs(direct.t));
    }
    return worst;
}

Real weight_product_error(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<Real> uy(0.0, 1.0 - 1e-6);
    Real worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const Real y = uy(rng);
        for (int ell : {1, 3}) {
            const WeightSpec spec{ell, d};
            worst = std::max(worst, std::abs(weight(spec, y) * weight_reciprocal(spec, y) - 1.0));
        }
    }
    return worst;
}

Real embed_unit_norm_error(int d, std::mt19937_64& rng) {
    std::normal_distribution<Real> gauss(0.0, 1.0);
    std::uniform_real_distribution<Real> uraw(-4.0, 4.0);
    const int n = d - 2;
    Real worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Vector dir(n);
        for (int j = 0; j < n; ++j) dir(j) = gauss(rng);
        dir.normalize();
        worst = std::max(worst, std::abs(corotational_embed(uraw(rng), std::abs(uraw(rng)), dir).norm() - 1.0));
    }
    return worst;
}

Real linearization_error(int d) {
    const Real eps = 1e-5;
    Real worst = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const Real r = Real(i) / 64.0;
        const Real ws = w_star_fhsc(r, d);
        const Real diff = (f_tilde(r, ws + eps, d) - f_tilde(r, ws - eps, d)) / (2.0 * eps);
        worst = std::max(worst, std::abs(diff - potential_v(r, d)));
    }
    return worst;
}

Real explicit_residual_error(int d) {
    auto sampler = [d](Real t, Real r) { return u_star(t, std::abs(r), d); };
    Real worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Real t = 1.0 + 2.0 * Real(i) / 9.0;
        for (int j = 0; j < 10; ++j) {
            Real r = 0.9 * t * Real(j) / 9.0;
            if (r > 0.0 && r < 2e-3) r = 2e-3;
            worst = std::max(worst, std::abs(cartesian_residual(sampler, t, r, d, 1e-3)));
        }
    }
    return worst;
}

Real free_decay_error(int d, int k) {
    const ModelParams params = ModelParams::free_flow(d, k);
    const RadialGrid grid(32, d);
    EvolutionState st;
    st.q1 = Vector::Ones(grid.nodes.size());
    st.q2 = Vector::Zero(grid.nodes.size());
    const Real ds = 0.5 / (32.0 * 32.0);
    const long n = std::lround(1.0 / ds);
    Real worst = 0.0;
    for (long i = 0; i < n; ++i) {
        st = rk4_step(grid, params, st, ds, false, false);
        const Real exact = std::exp(-Real(d - 2) * st.s);
        for (int j = 0; j < st.q1.size(); ++j)
            worst = std::max(worst, std::abs(st.q1(j) - exact));
    }
    return worst;
}

Real generator_eigenpair_error(int d, int k) {
    const ModelParams params = ModelParams::free_flow(d, k);
    const RadialGrid grid(32, d);
    const int n = int(grid.nodes.size());
    RadialField r1, r2;
    EvolutionState st;
    Real worst = 0.0;

    st.q1 = Vector::Ones(n);
    st.q2 = Vector::Zero(n);
    rhs(grid, params, st, false, false, r1, r2);
    worst = std::max(worst, (r1 + Real(d - 2) * st.q1).cwiseAbs().maxCoeff());
    worst = std::max(worst, r2.cwiseAbs().maxCoeff());

    st.q2 = Vector::Constant(n, -1.0);
    rhs(grid, params, st, false, false, r1, r2);
    worst = std::max(worst, (r1 + Real(d - 1) * st.q1).cwiseAbs().maxCoeff());
    worst = std::max(worst, (r2 + Real(d - 1) * st.q2).cwiseAbs().maxCoeff());
    return worst;
}

Real g0_residual_error(int d) {
    const ReducedCoefficients coeff(d);
    const Real a = Real(d - 1) / 2.0, b = Real(7 - d) / 4.0;
    Real sup_g0 = 0.0, sup_res = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const Real r = 1e-2 + (1.0 - 1e-3 - 1e-2) * Real(i) / 400.0;
        const Real u = 1.0 - r * r, m = Real(d - 4) + r * r;
        const Real L = a / r - 2.0 * b * r / u - 2.0 * r / m;
        const Real Lp = -a / (r * r) - 2.0 * b * (1.0 + r * r) / (u * u) -
                        2.0 * (Real(d - 4) - r * r) / (m * m);
        const Real g0 = g0_profile(r, d);
        sup_g0 = std::max(sup_g0, std::abs(g0));
        sup_res = std::max(sup_res, std::abs(u * u * (Lp + L * L + coeff.q(r)) * g0));
    }
    return sup_res / sup_g0;
}

int frobenius_table_mismatches(int d) {
    int bad = 0;
    for (long long lam : {0LL, -1LL, (long long)(4 - d)}) {
        const Rational lambda(lam);
        const auto s0 = frobenius_indices_exact(OdeForm::smooth, Endpoint::origin, lambda, d);
        if (!(s0.first == Rational(0) && s0.second == Rational(2 - d))) ++bad;
        const auto s1 = frobenius_indices_exact(OdeForm::smooth, Endpoint::boundary, lambda, d);
        if (!(s1.first == Rational(0) && s1.second == -lambda - Rational(d - 3, 2))) ++bad;
        const auto r0 = frobenius_indices_exact(OdeForm::reduced, Endpoint::origin, lambda, d);
        if (!(r0.first == Rational(d - 1, 2) && r0.second == Rational(3 - d, 2))) ++bad;
        const auto r1 = frobenius_indices_exact(OdeForm::reduced, Endpoint::boundary, lambda, d);
        const Rational s = rational_sqrt(Rational((d - 5) * (d - 5)) -
                                         Rational(4) * mu_of_lambda(lambda, d));
        if (!(r1.first == (Rational(2) + s) / Rational(4) &&
              r1.second == (Rational(2) - s) / Rational(4)))
            ++bad;
    }
    return bad;
}

Real shoot_g0_error(int d) {
    const auto res = shoot_reduced(ReducedProblem(0.0, d), 4000, 1e-4, 1e-12);
    Real cref = 0.0, worst = 0.0;
    for (const auto& [r, g] : res.samples) {
        if (r > 0.9) break;
        const Real ratio = g0_profile(r, d) / g;
        if (cref == 0.0) cref = ratio;
        worst = std::max(worst, std::abs(ratio / cref - 1.0));
    }
    if (res.zero_count != 0) worst = 1.0;
    return worst;
}

}  // namespace

std::vector<VerifyItem> run_verify(int d, int k, unsigned long long seed, Real tolerance_scale) {
    std::mt19937_64 rng(seed);
    std::vector<VerifyItem> items;
    auto add = [&](const std::string& name, Real measured, Real tol) {
        const Real scaled = tol * tolerance_scale;
        items.push_back({name, measured, scaled, measured <= scaled});
    };

    add("geometry.roundtrip", geometry_roundtrip_error(rng), 1e-10);
    add("geometry.factorization", geometry_factorization_error(rng), 1e-12);
    add("geometry.weight_product", weight_product_error(d, rng), 1e-14);
    add("embed.unit_norm", embed_unit_norm_error(d, rng), 1e-14);
    add("evolve.free_decay", free_decay_error(d, k), 1e-8);
    add("modes.generator_eigenpairs", generator_eigenpair_error(d, k), 1e-10);

    if (d >= 5) {
        add("model.linearization", linearization_error(d), 1e-6);
        add("model.explicit_residual", explicit_residual_error(d), 1e-8);
        add("modes.g0_residual", g0_residual_error(d), 1e-8);
        add("modes.frobenius_table", Real(frobenius_table_mismatches(d)), 0.0);
        add("modes.shoot_g0", shoot_g0_error(d), 1e-8);
    }
    return items;
}

}  // namespace wml
