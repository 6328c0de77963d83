#pragma once

#include <functional>
#include <vector>

#include "folint/desingularize.hpp"
#include "folint/lattice.hpp"

namespace folint {

// curves of a fixed (bi)degree with prescribed multiplicities at the
// configuration points
struct CurveSystem {
    GradingContext ctx;
    long a = 0;  // F* coefficient; unused on P^2
    long b = 0;  // degree on P^2, M* coefficient on F_delta
    std::vector<long> m;
};

inline bool system_effective(const CurveSystem& sys) {
    if (sys.ctx.kind == Surf::Projective) return sys.b >= 0;
    return sys.b >= 0 && sys.a + sys.ctx.delta * sys.b >= 0;
}

inline Rat system_self_intersection(const CurveSystem& sys) {
    Rat d2 = sys.ctx.kind == Surf::Projective
                 ? Rat(sys.b) * Rat(sys.b)
                 : Rat(2 * sys.a * sys.b + sys.ctx.delta * sys.b * sys.b);
    for (long mi : sys.m) d2 -= Rat(mi) * Rat(mi);
    return d2;
}

// fixed enumeration of the ambient monomials of the class
inline std::vector<Expv> system_monomials(const CurveSystem& sys) {
    std::vector<Expv> out;
    if (sys.ctx.kind == Surf::Projective) {
        for (long i = sys.b; i >= 0; --i)
            for (long j = sys.b - i; j >= 0; --j)
                out.push_back({(uint16_t)i, (uint16_t)j, (uint16_t)(sys.b - i - j), 0});
        return out;
    }
    for (long t = 0; t <= sys.b; ++t) {
        long s = sys.a + sys.ctx.delta * t;
        if (s < 0) continue;
        for (long i = s; i >= 0; --i)
            out.push_back({(uint16_t)i, (uint16_t)(s - i), (uint16_t)(sys.b - t), (uint16_t)t});
    }
    return out;
}

namespace detail {

// rational coordinates in the absolute power basis of F, innermost factor fastest
inline void qcoords_into(const Scalar& s, const FieldPtr& F, std::vector<Rat>& out) {
    if (!F) {
        out.push_back(s.as_rat());
        return;
    }
    for (const Scalar& c : coords_at(s, F)) qcoords_into(c, F->parent, out);
}

// required multiplicity of a representative node; conjugate copies must agree
inline long required_mult(const std::vector<long>& m, const ReductionNode& n) {
    long r = m[n.ids.front() - 1];
    for (int id : n.ids)
        if (m[id - 1] != r) throw Error("multiplicity not constant on a Galois orbit");
    return r;
}

inline MultiPoly drop_below_degree(const MultiPoly& p, long d) {
    MultiPoly r(p.nvars);
    for (const auto& [e, c] : p.terms)
        if (expv_total(e) >= d) r.terms.emplace(e, c);
    return r;
}

}  // namespace detail

// linear conditions on the coefficient vector of the generic form of the class
// (columns follow system_monomials); each condition at a point of absolute
// field degree k is expanded into k rational rows
inline std::vector<std::vector<Rat>> conditions_matrix(const CurveSystem& sys,
                                                       const DicriticalConfig& cfg) {
    internal_check(system_effective(sys), "conditions_matrix: class not effective");
    internal_check(sys.m.size() == cfg.points.size(), "conditions_matrix: multiplicity count");
    for (long mi : sys.m) internal_check(mi >= 0, "conditions_matrix: negative multiplicity");

    std::vector<Expv> mons = system_monomials(sys);
    size_t N = mons.size();
    int nv = sys.ctx.kind == Surf::Projective ? 3 : 4;
    std::vector<std::vector<Rat>> rows;
    MultiPoly x = var_poly(2, 0), y = var_poly(2, 1);

    // carries the virtual transform of every generic monomial; terms of total
    // degree < m are exactly the constrained Taylor coefficients, so dropping
    // them before the blowup substitution makes the division exact
    std::function<void(int, std::vector<MultiPoly>)> walk = [&](int v,
                                                                std::vector<MultiPoly> g) {
        const ReductionNode& n = cfg.reps[v];
        for (auto& gi : g) {
            if (!n.x0.is_zero()) gi = translate(gi, 0, n.x0);
            if (!n.y0.is_zero()) gi = translate(gi, 1, n.y0);
        }
        long need = detail::required_mult(sys.m, n);
        long k = field_abs_deg(n.field);
        for (long t = 0; t < need; ++t)
            for (long i = 0; i <= t; ++i) {
                Expv e{(uint16_t)i, (uint16_t)(t - i), 0, 0};
                std::vector<std::vector<Rat>> block((size_t)k, std::vector<Rat>(N, Rat(0)));
                bool nonzero = false;
                for (size_t c = 0; c < N; ++c) {
                    Scalar s = coeff_of(g[c], e);
                    if (s.is_zero()) continue;
                    std::vector<Rat> co;
                    detail::qcoords_into(s, n.field, co);
                    internal_check((long)co.size() == k, "conditions: expansion width");
                    for (long r = 0; r < k; ++r)
                        if (co[r] != 0) {
                            block[r][c] = co[r];
                            nonzero = true;
                        }
                }
                if (nonzero)
                    for (auto& row : block) rows.push_back(std::move(row));
            }
        if (n.kids.empty()) return;
        bool want1 = false, want2 = false;
        for (int kid : n.kids) (cfg.reps[kid].chart == 1 ? want1 : want2) = true;
        std::vector<MultiPoly> g1(want1 ? N : 0), g2(want2 ? N : 0);
        for (size_t c = 0; c < N; ++c) {
            MultiPoly gc = need ? detail::drop_below_degree(g[c], need) : g[c];
            if (want1) {
                g1[c] = compose(gc, {x, x * y});
                if (need && !g1[c].is_zero()) g1[c] = shift_down(g1[c], 0, need);
            }
            if (want2) {
                g2[c] = compose(gc, {x * y, y});
                if (need && !g2[c].is_zero()) g2[c] = shift_down(g2[c], 1, need);
            }
        }
        for (int kid : n.kids) walk(kid, cfg.reps[kid].chart == 1 ? g1 : g2);
    };

    for (int r : cfg.roots) {
        std::vector<MultiPoly> g(N);
        auto images = chart_images(sys.ctx, cfg.reps[r].chart);
        for (size_t c = 0; c < N; ++c) g[c] = compose(mono(nv, mons[c], Scalar(1L)), images);
        walk(r, std::move(g));
    }
    return rows;
}

struct LinearSystemBasis {
    std::vector<MultiPoly> forms;
    int proj_dim = -1;
    MultiPoly fixed_part;
    bool base_point_free = false;
};

namespace detail {

inline MultiPoly primitive_form(const std::vector<Expv>& mons, const std::vector<Rat>& v,
                                int nv) {
    Int den(1), num(0);
    for (const Rat& xq : v) den = lcm(den, xq.get_den());
    for (const Rat& xq : v) num = gcd(num, Int(xq.get_num() * (den / xq.get_den())));
    internal_check(num != 0, "zero kernel vector");
    Rat scale = Rat(den) / Rat(num);
    for (const Rat& xq : v)
        if (xq != 0) {
            if (xq < 0) scale = -scale;
            break;
        }
    MultiPoly f(nv);
    for (size_t c = 0; c < v.size(); ++c)
        if (v[c] != 0) f.add_term(mons[c], Scalar(Rat(v[c] * scale)));
    return f;
}

// replace vf by a pencil member whose multiplicity is exactly m_i at every
// configuration point; each point excludes at most one member of the pencil,
// so when general members exist some c in the scanned range reaches one
inline bool make_general(std::vector<Rat>& vf, const std::vector<Rat>& vg,
                         const std::vector<Expv>& mons, int nv, const CurveSystem& sys,
                         const DicriticalConfig& cfg, MultiPoly& out) {
    for (long c = 0; c <= (long)cfg.points.size() + 1; ++c) {
        std::vector<Rat> v = vf;
        if (c)
            for (size_t i = 0; i < v.size(); ++i) v[i] += Rat(c) * vg[i];
        MultiPoly f = primitive_form(mons, v, nv);
        if (curve_multiplicities(f, cfg) == sys.m) {
            vf = std::move(v);
            out = std::move(f);
            return true;
        }
    }
    return false;
}

}  // namespace detail

inline LinearSystemBasis complete_linear_system(const CurveSystem& sys,
                                                const DicriticalConfig& cfg) {
    std::vector<Expv> mons = system_monomials(sys);
    size_t N = mons.size();
    int nv = sys.ctx.kind == Surf::Projective ? 3 : 4;
    LinearSystemBasis out;
    out.fixed_part = const_poly(nv, Scalar(1L));

    auto A = conditions_matrix(sys, cfg);
    std::vector<int> piv;
    if (!A.empty()) piv = detail::rref(A, (int)N);
    std::vector<bool> used(N, false);
    for (int c : piv) used[c] = true;
    std::vector<std::vector<Rat>> kernel;
    for (size_t j = 0; j < N; ++j) {
        if (used[j]) continue;
        std::vector<Rat> v(N, Rat(0));
        v[j] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -A[r][j];
        out.forms.push_back(detail::primitive_form(mons, v, nv));
        kernel.push_back(std::move(v));
    }
    out.proj_dim = (int)out.forms.size() - 1;
    if (!out.forms.empty()) out.fixed_part = mgcd_list(out.forms);
    if (out.proj_dim == 1 && out.fixed_part.is_constant() &&
        system_self_intersection(sys) == 0) {
        // both members exact at every point consumes the whole intersection
        // budget D^2 = sum m_i^2, leaving the strict transforms disjoint
        MultiPoly f0(nv), f1(nv);
        if (detail::make_general(kernel[0], kernel[1], mons, nv, sys, cfg, f0) &&
            detail::make_general(kernel[1], kernel[0], mons, nv, sys, cfg, f1)) {
            out.forms = {std::move(f0), std::move(f1)};
            out.base_point_free = true;
        }
    }
    return out;
}

// integral class -> multiplicity data; positive exceptional parts impose nothing
inline CurveSystem curve_system_of(const DivisorClass& D, const DicriticalConfig& cfg) {
    internal_check((size_t)D.model.n == cfg.points.size(), "curve_system_of: wrong model");
    for (const Rat& c : D.c) internal_check(c.get_den() == 1, "curve_system_of: fractional class");
    CurveSystem sys;
    sys.ctx = cfg.form.ctx;
    int base = D.model.bases();
    if (D.model.kind == Surf::Projective) {
        sys.b = D.c[0].get_num().get_si();
    } else {
        sys.a = D.c[0].get_num().get_si();
        sys.b = D.c[1].get_num().get_si();
    }
    for (int i = 0; i < D.model.n; ++i) {
        Int mi = -D.c[base + i].get_num();
        sys.m.push_back(mi < 0 ? 0L : (long)mi.get_si());
    }
    return sys;
}

// least m with mT integral and dim|mT| >= 1; the search is capped because no
// effective characterization of the empty case is available
inline long e_of(const DivisorClass& T, const DicriticalConfig& cfg, long m_max) {
    internal_check(m_max >= 1, "e_of: positive bound required");
    Int den(1);
    for (const Rat& c : T.c) den = lcm(den, c.get_den());
    for (Int m = den; m <= m_max; m += den) {
        CurveSystem sys = curve_system_of(Rat(m) * T, cfg);
        if (!system_effective(sys)) continue;
        if (complete_linear_system(sys, cfg).proj_dim >= 1) return m.get_si();
    }
    throw BoundExceeded(m_max);
}

}  // namespace folint
