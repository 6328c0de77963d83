#pragma once
#include <vector>
#include "poly.hpp"

// differential 1-forms on C^2, P^2 and Hirzebruch surfaces

namespace folint {

struct OneForm {
    GradingContext ctx;
    std::vector<MultiPoly> w;  // one coefficient per variable of ctx

    static OneForm affine(const MultiPoly& a, const MultiPoly& b) {
        internal_check(a.nvars == 2 && b.nvars == 2, "affine form arity");
        if (a.is_zero() && b.is_zero()) throw Error("zero 1-form");
        return {GradingContext{Surf::Affine, 0}, {a, b}};
    }

    // A dX + B dY + C dZ, homogeneous of equal degree, X A + Y B + Z C = 0
    static OneForm projective(MultiPoly A, MultiPoly B, MultiPoly C) {
        GradingContext ctx{Surf::Projective, 0};
        if (A.is_zero() && B.is_zero() && C.is_zero()) throw Error("zero 1-form");
        MultiPoly g = mgcd_list({A, B, C});
        if (!g.is_constant()) {
            A = exact_div(A, g);
            B = exact_div(B, g);
            C = exact_div(C, g);
        }
        long d = -1;
        for (const MultiPoly* p : {&A, &B, &C}) {
            if (p->is_zero()) continue;
            if (!is_homogeneous(*p)) throw Error("projective 1-form: coefficient not homogeneous");
            if (d < 0) d = total_degree(*p);
            else if (total_degree(*p) != d) throw Error("projective 1-form: mixed degrees");
        }
        MultiPoly euler = var_poly(3, 0) * A + var_poly(3, 1) * B + var_poly(3, 2) * C;
        if (!euler.is_zero()) throw Error("projective 1-form: Euler condition fails");
        return {ctx, {A, B, C}};
    }

    // A0 dX0 + A1 dX1 + B0 dY0 + B1 dY1 with the two grading relations
    static OneForm hirzebruch(long delta, MultiPoly A0, MultiPoly A1, MultiPoly B0,
                              MultiPoly B1) {
        GradingContext ctx{Surf::Hirzebruch, delta};
        if (A0.is_zero() && A1.is_zero() && B0.is_zero() && B1.is_zero())
            throw Error("zero 1-form");
        MultiPoly g = mgcd_list({A0, A1, B0, B1});
        if (!g.is_constant()) {
            A0 = exact_div(A0, g);
            A1 = exact_div(A1, g);
            B0 = exact_div(B0, g);
            B1 = exact_div(B1, g);
        }
        for (const MultiPoly* p : {&A0, &A1, &B0, &B1})
            if (!is_bihomogeneous(*p, ctx))
                throw Error("hirzebruch 1-form: coefficient not bihomogeneous");
        MultiPoly r1 = var_poly(4, 0) * A0 + var_poly(4, 1) * A1 -
                       var_poly(4, 3) * B1 * Scalar(delta);
        MultiPoly r2 = var_poly(4, 2) * B0 + var_poly(4, 3) * B1;
        if (!r1.is_zero() || !r2.is_zero())
            throw Error("hirzebruch 1-form: grading relations fail");
        return {ctx, {A0, A1, B0, B1}};
    }
};

// (d1, d2) with K_F = O(d1, d2); from the bidegree of B1 (or A1 if B1 = 0)
inline std::pair<long, long> hirzebruch_degrees(const OneForm& f) {
    internal_check(f.ctx.kind == Surf::Hirzebruch, "hirzebruch_degrees: wrong surface");
    if (!f.w[3].is_zero()) {
        auto [b1, b2] = bidegree(f.w[3], f.ctx);
        return {b1 - 2, b2 - 1};
    }
    internal_check(!f.w[1].is_zero(), "degenerate 1-form");
    auto [a1, a2] = bidegree(f.w[1], f.ctx);
    return {a1 + f.ctx.delta - 1, a2 - 2};
}

// foliation degree r with coefficients of degree r + 1
inline long p2_degree(const OneForm& f) {
    internal_check(f.ctx.kind == Surf::Projective, "p2_degree: wrong surface");
    for (const auto& p : f.w)
        if (!p.is_zero()) return total_degree(p) - 1;
    internal_check(false, "degenerate 1-form");
    return -1;
}

inline bool wedge_is_zero(const OneForm& a, const OneForm& b) {
    internal_check(a.w.size() == b.w.size(), "wedge: arity");
    for (size_t i = 0; i < a.w.size(); ++i)
        for (size_t j = i + 1; j < a.w.size(); ++j)
            if (!(a.w[i] * b.w[j] - a.w[j] * b.w[i]).is_zero()) return false;
    return true;
}

// curve f = 0 is invariant iff f divides every coefficient of omega ^ df
inline bool is_invariant_curve(const OneForm& omega, const MultiPoly& f) {
    internal_check(!f.is_zero(), "invariance of zero curve");
    for (size_t i = 0; i < omega.w.size(); ++i)
        for (size_t j = i + 1; j < omega.w.size(); ++j)
            if (!divides(f, omega.w[i] * dvar(f, (int)j) - omega.w[j] * dvar(f, (int)i)))
                return false;
    return true;
}

// omega ^ (F dG - G dF) = 0, the pencil membership identity
inline bool pencil_wedge_vanishes(const OneForm& omega, const MultiPoly& F,
                                  const MultiPoly& G) {
    OneForm eta{omega.ctx, {}};
    for (int i = 0; i < (int)omega.w.size(); ++i)
        eta.w.push_back(F * dvar(G, i) - G * dvar(F, i));
    return wedge_is_zero(omega, eta);
}

// ---- affine charts ----

struct Chart {
    int id;                          // index within the surface atlas
    OneForm local;                   // reduced 2-variable form
    std::vector<MultiPoly> coords;   // images of the ambient variables
};

// substitution images for each chart, in ambient-variable order
inline std::vector<MultiPoly> chart_images(const GradingContext& ctx, int id) {
    MultiPoly one = const_poly(2, Scalar(1L));
    MultiPoly s = var_poly(2, 0), t = var_poly(2, 1);
    if (ctx.kind == Surf::Projective) {
        switch (id) {
            case 0: return {s, t, one};  // U_Z
            case 1: return {one, s, t};  // U_X
            default: return {s, one, t}; // U_Y
        }
    }
    internal_check(ctx.kind == Surf::Hirzebruch, "chart_images: wrong surface");
    switch (id) {
        case 0: return {one, s, one, t};  // U00: (1, x; 1, y)
        case 1: return {s, one, one, t};  // U10: (u, 1; 1, v)
        case 2: return {one, s, t, one};  // U01: (1, x'; y', 1)
        default: return {s, one, t, one}; // U11: (u, 1; w, 1)
    }
}

// which coefficient pair gives the local form in each chart
inline std::pair<int, int> chart_pair(const GradingContext& ctx, int id) {
    if (ctx.kind == Surf::Projective) {
        switch (id) {
            case 0: return {0, 1};  // A dx + B dy
            case 1: return {1, 2};  // B du + C dv
            default: return {0, 2}; // A ds + C dt
        }
    }
    switch (id) {
        case 0: return {1, 3};  // A1 dx + B1 dy
        case 1: return {0, 3};  // A0 du + B1 dv
        case 2: return {1, 2};  // A1 dx' + B0 dy'
        default: return {0, 2}; // A0 du + B0 dw
    }
}

inline int chart_count(const GradingContext& ctx) {
    return ctx.kind == Surf::Projective ? 3 : 4;
}

inline Chart restrict_to_chart(const OneForm& f, int id) {
    internal_check(f.ctx.kind != Surf::Affine, "restrict_to_chart: already affine");
    auto images = chart_images(f.ctx, id);
    auto [i, j] = chart_pair(f.ctx, id);
    MultiPoly a = compose(f.w[i], images);
    MultiPoly b = compose(f.w[j], images);
    MultiPoly g = mgcd(a, b);
    if (!g.is_constant()) {
        a = exact_div(a, g);
        b = exact_div(b, g);
    }
    return Chart{id, OneForm::affine(a, b), images};
}

// local equation of a global curve in a chart (no reduction)
inline MultiPoly restrict_curve(const MultiPoly& f, const GradingContext& ctx, int id) {
    return compose(f, chart_images(ctx, id));
}

} // namespace folint
