#pragma once
#include <utility>
#include <vector>
#include "desingularize.hpp"
#include "oneform.hpp"

// Neron-Severi lattice of the surface obtained by the dicritical reduction:
// intersection theory, canonical classes, the orthogonal family T_alpha and
// its distinguished member T_{alpha_sigma}.

namespace folint {

struct NSModel {
    Surf kind = Surf::Projective;
    long delta = 0;
    int n = 0;  // configuration points, one per exceptional divisor

    int bases() const { return kind == Surf::Projective ? 1 : 2; }
    int dim() const { return bases() + n; }
    bool operator==(const NSModel&) const = default;
};

inline NSModel ns_model(const GradingContext& ctx, const DicriticalConfig& cfg) {
    internal_check(ctx.kind != Surf::Affine, "ns_model: ambient surface required");
    return {ctx.kind, ctx.delta, (int)cfg.points.size()};
}

// coordinates in the basis {L*, E_1*, ...} or {F*, M*, E_1*, ...}
struct DivisorClass {
    NSModel model;
    std::vector<Rat> c;

    bool operator==(const DivisorClass&) const = default;
};

inline DivisorClass zero_class(const NSModel& m) {
    return {m, std::vector<Rat>(m.dim(), Rat(0))};
}

inline DivisorClass base_class(const NSModel& m, int b) {
    internal_check(0 <= b && b < m.bases(), "base_class index");
    DivisorClass d = zero_class(m);
    d.c[b] = 1;
    return d;
}

// E_i*, i is the 1-based point id
inline DivisorClass exceptional_class(const NSModel& m, int i) {
    internal_check(1 <= i && i <= m.n, "exceptional index");
    DivisorClass d = zero_class(m);
    d.c[m.bases() + i - 1] = 1;
    return d;
}

inline DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    internal_check(a.model == b.model, "divisor sum: model mismatch");
    DivisorClass r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

inline DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    internal_check(a.model == b.model, "divisor difference: model mismatch");
    DivisorClass r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

inline DivisorClass operator*(const Rat& s, const DivisorClass& a) {
    DivisorClass r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

// L*^2 = 1; F*^2 = 0, F*.M* = 1, M*^2 = delta; E_i*.E_j* = -delta_ij
inline Rat intersect(const DivisorClass& a, const DivisorClass& b) {
    if (a.model != b.model) throw Error("intersection: classes from different models");
    const NSModel& m = a.model;
    Rat r(0);
    if (m.kind == Surf::Projective) {
        r = a.c[0] * b.c[0];
    } else {
        r = a.c[0] * b.c[1] + a.c[1] * b.c[0] + Rat(m.delta) * a.c[1] * b.c[1];
    }
    for (int i = m.bases(); i < m.dim(); ++i) r -= a.c[i] * b.c[i];
    return r;
}

// ---- exceptional combinatorics ----

// ~E_i = E_i* - sum of E_r* over points p_r proximate to p_i
inline DivisorClass strict_transform_exceptional(const NSModel& m, const DicriticalConfig& cfg,
                                                 int i) {
    DivisorClass d = exceptional_class(m, i);
    for (int r = 0; r < m.n; ++r)
        if (cfg.proximity_matrix[r][i - 1]) d.c[m.bases() + r] -= 1;
    return d;
}

// lambda[i][j] = a_{i, k_j}: a_rr = 1, a_ir = sum of a_lr over p_l proximate to p_i;
// one column per terminal dicritical point k_j, ascending id order
inline std::vector<std::vector<long>> lambda_matrix(const DicriticalConfig& cfg) {
    int n = (int)cfg.points.size(), d = (int)cfg.terminal_ids.size();
    std::vector<std::vector<long>> lam(n, std::vector<long>(d, 0));
    for (int j = 0; j < d; ++j) {
        int r = cfg.terminal_ids[j];
        std::vector<long> a(n + 1, 0);
        a[r] = 1;
        for (int i = r - 1; i >= 1; --i)
            for (int l = i + 1; l <= r; ++l)
                if (cfg.proximity_matrix[l - 1][i - 1]) a[i] += a[l];
        for (int i = 0; i < n; ++i) lam[i][j] = a[i + 1];
    }
    return lam;
}

struct HatBasis {
    std::vector<DivisorClass> hats;           // ^E_{k_j} = sum_i lambda[i][j] E_i*
    std::vector<std::vector<long>> lambda;
};

inline HatBasis hat_basis(const NSModel& m, const DicriticalConfig& cfg) {
    HatBasis hb;
    hb.lambda = lambda_matrix(cfg);
    for (size_t j = 0; j < cfg.terminal_ids.size(); ++j) {
        DivisorClass h = zero_class(m);
        for (int i = 0; i < m.n; ++i) h.c[m.bases() + i] = Rat(hb.lambda[i][j]);
        hb.hats.push_back(h);
    }
    return hb;
}

// ---- canonical classes ----

// (K_Z, K_tilde) with K_tilde - K_Z = (r+2)L* - sum(nu+eps)E* on P^2 and
// (d1-delta+2)F* + (d2+2)M* - sum(nu+eps)E* on F_delta
inline std::pair<DivisorClass, DivisorClass> canonical_classes(const NSModel& m,
                                                               const DicriticalConfig& cfg,
                                                               const OneForm& f) {
    internal_check(f.ctx.kind == m.kind && f.ctx.delta == m.delta, "canonical_classes: surface");
    DivisorClass kz = zero_class(m), diff = zero_class(m);
    if (m.kind == Surf::Projective) {
        kz.c[0] = -3;
        diff.c[0] = p2_degree(f) + 2;
    } else {
        auto [d1, d2] = hirzebruch_degrees(f);
        kz.c[0] = m.delta - 2;
        kz.c[1] = -2;
        diff.c[0] = d1 - m.delta + 2;
        diff.c[1] = d2 + 2;
    }
    for (int i = 0; i < m.n; ++i) {
        kz.c[m.bases() + i] = 1;
        diff.c[m.bases() + i] = -Rat(cfg.points[i].nu + cfg.points[i].eps);
    }
    return {kz, kz + diff};
}

// h_0, h_1, ..., h_d used to keep v(alpha) orthogonal to K_tilde - K_Z on F_delta
inline std::vector<Rat> h_values(const NSModel& m, const DicriticalConfig& cfg, const OneForm& f,
                                 const std::vector<std::vector<long>>& lam) {
    int d = (int)cfg.terminal_ids.size();
    std::vector<Rat> h(d + 1, Rat(0));
    if (m.kind == Surf::Projective) {
        h[0] = 1;
        return h;
    }
    auto [d1, d2] = hirzebruch_degrees(f);
    if (d2 == -2) throw Error("degenerate foliation: d2 = -2");
    Rat den(d2 + 2);
    h[0] = -Rat(d1 - m.delta + 2) / den - Rat(m.delta);
    for (int j = 0; j < d; ++j) {
        Rat s(0);
        for (int i = 0; i < m.n; ++i)
            s += Rat(cfg.points[i].nu + cfg.points[i].eps) * Rat(lam[i][j]);
        h[j + 1] = s / den;
    }
    return h;
}

// ---- curve classes ----

inline DivisorClass ambient_curve_class(const NSModel& m, const MultiPoly& f) {
    internal_check(!f.is_zero(), "class of the zero curve");
    DivisorClass d = zero_class(m);
    if (m.kind == Surf::Projective) {
        internal_check(is_homogeneous(f), "curve class: not homogeneous");
        d.c[0] = total_degree(f);
    } else {
        auto [b1, b2] = bidegree(f, GradingContext{Surf::Hirzebruch, m.delta});
        d.c[0] = b1;
        d.c[1] = b2;
    }
    return d;
}

inline DivisorClass strict_transform_curve(const NSModel& m, const DicriticalConfig& cfg,
                                           const MultiPoly& f) {
    DivisorClass d = ambient_curve_class(m, f);
    std::vector<long> mult = curve_multiplicities(f, cfg);
    for (int i = 0; i < m.n; ++i) d.c[m.bases() + i] -= Rat(mult[i]);
    return d;
}

// ---- exact linear algebra over Q ----

namespace detail {

using Mat = std::vector<std::vector<Rat>>;

// in-place reduced row echelon form; pivots chosen greedily left to right among
// the first main columns; returns the pivot column list
inline std::vector<int> rref(Mat& A, int main) {
    int rows = (int)A.size();
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < main && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (A[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(A[r], A[p]);
        Rat inv = A[r][c];
        for (auto& x : A[r]) x /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (size_t j = 0; j < A[i].size(); ++j) A[i][j] -= f * A[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

inline int rank_of(Mat A) {
    if (A.empty()) return 0;
    return (int)rref(A, (int)A[0].size()).size();
}

// solve the nonsingular square system S x = rhs
inline std::vector<Rat> solve_square(Mat S, std::vector<Rat> rhs) {
    int n = (int)S.size();
    for (int i = 0; i < n; ++i) S[i].push_back(rhs[i]);
    std::vector<int> piv = rref(S, n);
    internal_check((int)piv.size() == n, "singular square system");
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) x[i] = S[i][n];
    return x;
}

} // namespace detail

// ---- V(Sigma) ----

struct VSigma {
    int sigma = 0;
    // strict transforms of the sigma curves, then [K_tilde - K_Z], then the
    // ~E_i of the non-dicritical exceptional divisors (ascending id)
    std::vector<DivisorClass> classes;
    bool independent = false;
    bool restricted = false;
};

inline VSigma build_V_sigma(const OneForm& f, const DicriticalConfig& cfg,
                            const std::vector<MultiPoly>& curves) {
    NSModel m = ns_model(f.ctx, cfg);
    for (const MultiPoly& c : curves)
        if (!is_invariant_curve(f, c)) throw NotInvariantError("curve is not invariant");
    int d = (int)cfg.terminal_ids.size();
    int bound = m.kind == Surf::Projective ? d - 1 : d;
    if ((int)curves.size() > bound) throw TooManySolutions("too many algebraic solutions");

    VSigma vs;
    vs.sigma = (int)curves.size();
    for (const MultiPoly& c : curves) vs.classes.push_back(strict_transform_curve(m, cfg, c));
    auto [kz, kt] = canonical_classes(m, cfg, f);
    vs.classes.push_back(kt - kz);
    for (const auto& p : cfg.points)
        if (p.eps == 0) vs.classes.push_back(strict_transform_exceptional(m, cfg, p.id));

    detail::Mat rows;
    for (const auto& cl : vs.classes) rows.push_back(cl.c);
    int r = detail::rank_of(rows);
    vs.independent = r == (int)vs.classes.size();
    rows.push_back(base_class(m, 0).c);
    vs.restricted = vs.independent && detail::rank_of(rows) == (int)vs.classes.size() + 1;
    return vs;
}

// ---- the T_alpha family ----

// q(alpha) = -alpha' G alpha + 2 b' alpha + c with G positive definite
struct QuadForm {
    std::vector<std::vector<Rat>> G;
    std::vector<Rat> b;
    Rat c;
};

struct TAlphaFamily {
    NSModel model;
    int ell = 0;
    std::vector<int> order;               // terminal ids: ell free ones, then the pivots
    std::vector<std::vector<Rat>> mu;     // (ell+1) x (d-ell): dependent coordinates
    std::vector<std::vector<Rat>> L;      // n x (ell+1): column 0 holds Lambda_{i0}
    std::vector<Rat> H;                   // ell+1 values; (1, 0, ..., 0) on P^2
    QuadForm q;                           // T_alpha^2 as a quadratic in alpha
    std::vector<Rat> alpha_sigma;         // unique critical parameter of T_alpha^2
};

inline QuadForm t_sq_form(const TAlphaFamily& fam) {
    int ell = fam.ell, n = fam.model.n;
    QuadForm q;
    q.G.assign(ell, std::vector<Rat>(ell, Rat(0)));
    q.b.assign(ell, Rat(0));
    Rat s0(0);
    for (int i = 0; i < n; ++i) s0 += fam.L[i][0] * fam.L[i][0];
    for (int k = 0; k < ell; ++k) {
        for (int k2 = k; k2 < ell; ++k2) {
            Rat g(0);
            for (int i = 0; i < n; ++i) g += fam.L[i][k + 1] * fam.L[i][k2 + 1];
            q.G[k][k2] = q.G[k2][k] = g;
        }
        Rat dot(0);
        for (int i = 0; i < n; ++i) dot += fam.L[i][0] * fam.L[i][k + 1];
        q.b[k] = fam.H[k + 1] - dot;
    }
    if (fam.model.kind == Surf::Projective)
        q.c = Rat(1) - s0;
    else
        q.c = 2 * fam.H[0] + Rat(fam.model.delta) - s0;
    return q;
}

inline DivisorClass t_alpha(const TAlphaFamily& fam, const std::vector<Rat>& alpha) {
    internal_check((int)alpha.size() == fam.ell, "t_alpha: parameter arity");
    const NSModel& m = fam.model;
    DivisorClass t = zero_class(m);
    if (m.kind == Surf::Projective) {
        t.c[0] = 1;
    } else {
        Rat f = fam.H[0];
        for (int k = 0; k < fam.ell; ++k) f += fam.H[k + 1] * alpha[k];
        t.c[0] = f;
        t.c[1] = 1;
    }
    for (int i = 0; i < m.n; ++i) {
        Rat e = fam.L[i][0];
        for (int k = 0; k < fam.ell; ++k) e += fam.L[i][k + 1] * alpha[k];
        t.c[m.bases() + i] = -e;
    }
    return t;
}

inline Rat t_alpha_sq(const TAlphaFamily& fam, const std::vector<Rat>& alpha) {
    internal_check((int)alpha.size() == fam.ell, "t_alpha_sq: parameter arity");
    const QuadForm& q = fam.q;
    Rat v = q.c;
    for (int k = 0; k < fam.ell; ++k) {
        v += 2 * q.b[k] * alpha[k];
        for (int k2 = 0; k2 < fam.ell; ++k2) v -= q.G[k][k2] * alpha[k] * alpha[k2];
    }
    return v;
}

inline TAlphaFamily t_alpha_family(const OneForm& f, const DicriticalConfig& cfg,
                                   const VSigma& vs) {
    NSModel m = ns_model(f.ctx, cfg);
    internal_check(vs.restricted, "t_alpha_family needs a restricted set");
    const std::vector<int>& term = cfg.terminal_ids;
    int d = (int)term.size(), n = m.n;
    bool p2 = m.kind == Surf::Projective;
    int ell = d - vs.sigma - (p2 ? 1 : 0);
    internal_check(ell >= 0, "t_alpha_family: negative parameter count");

    std::vector<std::vector<long>> lam = lambda_matrix(cfg);
    std::vector<Rat> h = h_values(m, cfg, f, lam);

    // v(alpha) = v[0] + sum_j alpha_j v[j]
    std::vector<DivisorClass> v(d + 1, zero_class(m));
    if (p2) {
        v[0].c[0] = 1;
    } else {
        v[0].c[0] = h[0];
        v[0].c[1] = 1;
    }
    for (int j = 1; j <= d; ++j) {
        if (!p2) v[j].c[0] = h[j];
        for (int i = 0; i < n; ++i) v[j].c[m.bases() + i] = -Rat(lam[i][j - 1]);
    }

    // constraints: v(alpha).u = 0 for u = K_tilde - K_Z (P^2 only) and each ~C
    std::vector<DivisorClass> con;
    if (p2) {
        auto [kz, kt] = canonical_classes(m, cfg, f);
        con.push_back(kt - kz);
    }
    for (int i = 0; i < vs.sigma; ++i) con.push_back(vs.classes[i]);
    internal_check((int)con.size() == d - ell, "constraint count");

    detail::Mat M(con.size(), std::vector<Rat>(d + 1, Rat(0)));
    for (size_t t = 0; t < con.size(); ++t) {
        for (int j = 1; j <= d; ++j) M[t][j - 1] = intersect(v[j], con[t]);
        M[t][d] = -intersect(v[0], con[t]);
    }
    std::vector<int> piv = detail::rref(M, d);
    for (size_t t = piv.size(); t < M.size(); ++t)
        if (M[t][d] != 0) throw InconsistentSystem("parameter system has no solution");
    internal_check((int)piv.size() == d - ell, "parameter system rank");

    TAlphaFamily fam;
    fam.model = m;
    fam.ell = ell;
    std::vector<int> freev;
    {
        std::vector<bool> isp(d, false);
        for (int c : piv) isp[c] = true;
        for (int j = 0; j < d; ++j)
            if (!isp[j]) freev.push_back(j);
    }
    for (int j : freev) fam.order.push_back(term[j]);
    for (int c : piv) fam.order.push_back(term[c]);

    // alpha_{pivot t} = M[t][d] - sum_k M[t][free_k] alpha_k
    int dep = d - ell;
    fam.mu.assign(ell + 1, std::vector<Rat>(dep, Rat(0)));
    for (int t = 0; t < dep; ++t) {
        fam.mu[0][t] = M[t][d];
        for (int k = 0; k < ell; ++k) fam.mu[k + 1][t] = -M[t][freev[k]];
    }

    // reorder lambda columns and h entries, then contract the dependent block
    auto col = [&](int pos) { return pos < ell ? freev[pos] : piv[pos - ell]; };
    fam.L.assign(n, std::vector<Rat>(ell + 1, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t < dep; ++t) fam.L[i][0] += Rat(lam[i][col(ell + t)]) * fam.mu[0][t];
        for (int k = 0; k < ell; ++k) {
            fam.L[i][k + 1] = Rat(lam[i][col(k)]);
            for (int t = 0; t < dep; ++t)
                fam.L[i][k + 1] += Rat(lam[i][col(ell + t)]) * fam.mu[k + 1][t];
        }
    }
    fam.H.assign(ell + 1, Rat(0));
    fam.H[0] = h[0];
    for (int t = 0; t < dep; ++t) fam.H[0] += h[1 + col(ell + t)] * fam.mu[0][t];
    for (int k = 0; k < ell; ++k) {
        fam.H[k + 1] = h[1 + col(k)];
        for (int t = 0; t < dep; ++t) fam.H[k + 1] += h[1 + col(ell + t)] * fam.mu[k + 1][t];
    }

    fam.q = t_sq_form(fam);
    fam.alpha_sigma = ell ? detail::solve_square(fam.q.G, fam.q.b) : std::vector<Rat>{};
    return fam;
}

// ---- quadratic surds ----

// a + b*sqrt(s); normalized so a rational value has b = s = 0
struct Surd {
    Rat a, b, s;

    static Surd rational(const Rat& r) { return {r, Rat(0), Rat(0)}; }
    static Surd make(const Rat& a, const Rat& b, const Rat& s) {
        internal_check(s >= 0, "negative radicand");
        if (b == 0 || s == 0) return {a, Rat(0), Rat(0)};
        if (is_square(s)) return {a + b * sqrt_exact(s), Rat(0), Rat(0)};
        return {a, b, s};
    }
    bool is_rational() const { return b == 0; }
};

inline int rat_sign(const Rat& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

inline int surd_sign(const Surd& v) {
    if (v.b == 0) return rat_sign(v.a);
    if (v.a == 0) return rat_sign(v.b);
    int sa = rat_sign(v.a), sb = rat_sign(v.b);
    if (sa == sb) return sa;
    int c = cmp(v.a * v.a, v.b * v.b * v.s);
    internal_check(c != 0, "surd normalization");  // equality needs a square radicand
    return c > 0 ? sa : sb;
}

inline Surd surd_neg(const Surd& v) { return {-v.a, -v.b, v.s}; }

inline Surd surd_add(const Surd& v, const Rat& r) { return {v.a + r, v.b, v.s}; }

inline Surd surd_scale(const Surd& v, const Rat& r) {
    if (r == 0) return Surd::rational(Rat(0));
    return {v.a * r, v.b * r, v.b == 0 ? Rat(0) : v.s};
}

inline Surd surd_recip(const Surd& v) {
    internal_check(surd_sign(v) != 0, "reciprocal of zero");
    if (v.b == 0) return Surd::rational(Rat(1) / v.a);
    Rat d = v.a * v.a - v.b * v.b * v.s;  // nonzero: s is not a square
    return Surd::make(v.a / d, -v.b / d, v.s);
}

inline int surd_cmp(const Surd& v, const Rat& r) { return surd_sign({v.a - r, v.b, v.s}); }

// sign of (x - y); handles distinct radicands by isolating one radical at a time
inline int surd_cmp(const Surd& x, const Surd& y) {
    if (y.is_rational()) return surd_cmp(x, y.a);
    if (x.is_rational()) return -surd_cmp(y, x.a);
    if (x.s == y.s) return surd_sign(Surd::make(x.a - y.a, x.b - y.b, x.s));
    Rat A = x.a - y.a;
    const Rat &B = x.b, &u = x.s;
    Rat C = -y.b;
    const Rat& v = y.s;
    // w := B sqrt(u) + C sqrt(v)
    int sw;
    if (rat_sign(B) == rat_sign(C)) {
        sw = rat_sign(B);
    } else {
        int c = cmp(B * B * u, C * C * v);
        sw = c == 0 ? 0 : (c > 0 ? rat_sign(B) : rat_sign(C));
    }
    if (sw == 0) return rat_sign(A);
    if (A == 0) return sw;
    if (rat_sign(A) == sw) return sw;
    // |A| vs |w|: sign(w^2 - A^2) decides
    int mag = surd_sign(Surd::make(B * B * u + C * C * v - A * A, 2 * B * C, u * v));
    if (mag == 0) return 0;
    return mag > 0 ? sw : rat_sign(A);
}

// [lo, hi] containing sqrt(s) with width at most 2^-bits
inline std::pair<Rat, Rat> sqrt_enclosure(const Rat& s, int bits) {
    internal_check(s >= 0, "sqrt of negative");
    Int scale = Int(1) << bits;
    Int N = num(s) * den(s);
    Int r = isqrt(N * scale * scale);
    return {make_rat(r, scale * den(s)), make_rat(r + 1, scale * den(s))};
}

inline std::pair<Rat, Rat> surd_enclosure(const Surd& v, int bits) {
    if (v.b == 0) return {v.a, v.a};
    auto [lo, hi] = sqrt_enclosure(v.s, bits);
    if (v.b > 0) return {v.a + v.b * lo, v.a + v.b * hi};
    return {v.a + v.b * hi, v.a + v.b * lo};
}

inline Int surd_floor(const Surd& v) {
    if (v.b == 0) return floor_rat(v.a);
    Int n = floor_rat(surd_enclosure(v, 4).first);
    while (surd_cmp(v, Rat(n + 1)) >= 0) ++n;
    return n;
}

inline Int surd_ceil(const Surd& v) { return -surd_floor(surd_neg(v)); }

// ---- extrema over the null set of T_alpha^2 ----

struct EllipsoidExtrema {
    Surd inf, sup;
    std::pair<Rat, Rat> inf_enclosure, sup_enclosure;
};

// extrema of alpha -> functional . T_alpha over the real ellipsoid {T_alpha^2 = 0};
// requires T_{alpha_sigma}^2 > 0 so the set is a nonempty ellipsoid
inline EllipsoidExtrema ellipsoid_extrema(const TAlphaFamily& fam, const DivisorClass& functional,
                                          int bits = 64) {
    const QuadForm& q = fam.q;
    int ell = fam.ell;
    Rat qmax = q.c;
    for (int k = 0; k < ell; ++k) qmax += q.b[k] * fam.alpha_sigma[k];
    if (qmax <= 0) throw Error("ellipsoid_extrema: T^2 at alpha_sigma must be positive");

    std::vector<Rat> zero(ell, Rat(0));
    Rat c0 = intersect(functional, t_alpha(fam, zero));
    std::vector<Rat> cv(ell);
    for (int k = 0; k < ell; ++k) {
        std::vector<Rat> e = zero;
        e[k] = 1;
        cv[k] = intersect(functional, t_alpha(fam, e)) - c0;
    }

    Rat center = c0;
    for (int k = 0; k < ell; ++k) center += cv[k] * fam.alpha_sigma[k];
    Rat radic(0);
    if (ell) {
        std::vector<Rat> w = detail::solve_square(q.G, cv);
        for (int k = 0; k < ell; ++k) radic += cv[k] * w[k];
    }
    EllipsoidExtrema ex;
    ex.inf = Surd::make(center, Rat(-1), qmax * radic);
    ex.sup = Surd::make(center, Rat(1), qmax * radic);
    ex.inf_enclosure = surd_enclosure(ex.inf, bits);
    ex.sup_enclosure = surd_enclosure(ex.sup, bits);
    return ex;
}

// outward-rounded ranges of each coordinate over the ellipsoid, clipped at 0
inline std::vector<std::pair<Rat, Rat>> coordinate_bounds(const TAlphaFamily& fam, int bits = 64) {
    const QuadForm& q = fam.q;
    int ell = fam.ell;
    Rat qmax = q.c;
    for (int k = 0; k < ell; ++k) qmax += q.b[k] * fam.alpha_sigma[k];
    if (qmax <= 0) throw Error("coordinate_bounds: T^2 at alpha_sigma must be positive");

    std::vector<std::pair<Rat, Rat>> out;
    for (int k = 0; k < ell; ++k) {
        std::vector<Rat> e(ell, Rat(0));
        e[k] = 1;
        std::vector<Rat> w = detail::solve_square(q.G, e);
        Surd lo = Surd::make(fam.alpha_sigma[k], Rat(-1), qmax * w[k]);
        Surd hi = Surd::make(fam.alpha_sigma[k], Rat(1), qmax * w[k]);
        Rat l = surd_enclosure(lo, bits).first;
        Rat h = surd_enclosure(hi, bits).second;
        if (l < 0) l = 0;
        if (h < 0) h = 0;
        out.emplace_back(l, h);
    }
    return out;
}

} // namespace folint
