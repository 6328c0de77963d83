#pragma once
#include "oneform.hpp"

// extension of a polynomial foliation on C^2 to F_delta or P^2

namespace folint {

namespace detail {

// numerator of f(X1/X0, X0^delta Y1 / Y0) over the common denominator
// X0^degx Y0^degy, made coprime to X0 and Y0; second component is the
// bidegree (lambda1, lambda2) of the reduced fraction
inline std::pair<MultiPoly, std::pair<long, long>> u00_lift(const MultiPoly& f, long delta) {
    internal_check(!f.is_zero(), "u00_lift: zero input");
    long dx = deg_in(f, 0), dy = deg_in(f, 1);
    MultiPoly N(4);
    for (const auto& [e, c] : f.terms) {
        Expv g{(uint16_t)(delta * e[1] + dx - e[0]), (uint16_t)e[0],
               (uint16_t)(dy - e[1]), (uint16_t)e[1]};
        N.add_term(g, c);
    }
    long a = min_deg_in(N, 0), b = min_deg_in(N, 2);
    if (a > 0) N = shift_down(N, 0, a);
    if (b > 0) N = shift_down(N, 2, b);
    return {N, {dx - a, dy - b}};
}

} // namespace detail

// extension of A dx + B dy from U00 to F_delta
inline OneForm extend_to_hirzebruch(const MultiPoly& A, const MultiPoly& B, long delta) {
    internal_check(delta >= 0, "delta must be non-negative");
    if (A.is_zero() && B.is_zero()) throw Error("zero 1-form");
    if (!mgcd(A, B).is_constant()) throw Error("input coefficients must be coprime");
    GradingContext ctx{Surf::Hirzebruch, delta};

    // (1) reduced fractions on U00; a vanishing coefficient is a section
    //     of O(-delta-1, -1) so that the result stays reduced
    MultiPoly A1(4), B1(4);
    std::pair<long, long> lam{-delta - 1, -1}, mu{-delta - 1, -1};
    if (!A.is_zero()) std::tie(A1, lam) = detail::u00_lift(A, delta);
    if (!B.is_zero()) std::tie(B1, mu) = detail::u00_lift(B, delta);

    MultiPoly X0 = var_poly(4, 0), X1 = var_poly(4, 1);
    MultiPoly Y0 = var_poly(4, 2), Y1 = var_poly(4, 3);

    // (2)
    long m1 = lam.first - mu.first + 1 + delta;
    if (m1 > 0) B1 = B1 * pow_poly(X0, m1);
    else A1 = A1 * pow_poly(X0, -m1);

    // (3)
    long m2 = lam.second - mu.second - 1;
    if (m2 > 0) B1 = B1 * pow_poly(Y0, m2);
    else A1 = A1 * pow_poly(Y0, -m2);

    // (4)
    int g2 = divides(Y0, B1) ? 0 : 1;
    if (g2) {
        B1 = B1 * Y0;
        A1 = A1 * Y0;
    }

    // (5)
    MultiPoly s = Y1 * B1 * Scalar(delta) - X1 * A1;
    int g1 = divides(X0, s) ? 0 : 1;
    if (g1) {
        A1 = A1 * X0;
        B1 = B1 * X0;
        s = s * X0;
    }

    // (6)
    MultiPoly A0 = exact_div(s, X0);
    MultiPoly B0 = -exact_div(Y1 * B1, Y0);

    OneForm out = OneForm::hirzebruch(delta, A0, A1, B0, B1);
    // the restriction to U00 must reproduce the input exactly
    auto u00 = chart_images(ctx, 0);
    internal_check(compose(out.w[1], u00) == A, "extension: U00 restriction (dx)");
    internal_check(compose(out.w[3], u00) == B, "extension: U00 restriction (dy)");
    return out;
}

// extension of A dx + B dy to P^2 via (x, y) = (X/Z, Y/Z)
inline OneForm extend_to_projective(const MultiPoly& A, const MultiPoly& B) {
    if (A.is_zero() && B.is_zero()) throw Error("zero 1-form");
    if (!mgcd(A, B).is_constant()) throw Error("input coefficients must be coprime");
    long m = std::max(std::max(total_degree(A), total_degree(B)), 0L);
    // homogenize to degree m with Z
    auto homog = [&](const MultiPoly& f) {
        MultiPoly h(3);
        for (const auto& [e, c] : f.terms) {
            Expv g{e[0], e[1], (uint16_t)(m - e[0] - e[1]), 0};
            h.add_term(g, c);
        }
        return h;
    };
    MultiPoly Ah = homog(A), Bh = homog(B);
    MultiPoly X = var_poly(3, 0), Y = var_poly(3, 1), Z = var_poly(3, 2);
    OneForm out = OneForm::projective(Z * Ah, Z * Bh, -(X * Ah + Y * Bh));
    auto uz = chart_images(out.ctx, 0);
    MultiPoly a0 = compose(out.w[0], uz), b0 = compose(out.w[1], uz);
    internal_check((a0 * B - b0 * A).is_zero(), "extension: U_Z restriction");
    return out;
}

} // namespace folint
