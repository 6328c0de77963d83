#pragma once
#include <array>
#include <map>
#include <optional>
#include "field.hpp"

// sparse multivariate polynomials over a scalar field, grevlex-ordered terms

namespace folint {

enum class Surf { Affine, Projective, Hirzebruch };

struct GradingContext {
    Surf kind = Surf::Affine;
    long delta = 0;

    int nvars() const {
        switch (kind) {
            case Surf::Affine: return 2;
            case Surf::Projective: return 3;
            default: return 4;
        }
    }
    const char* var_name(int i) const {
        static const char* aff[] = {"x", "y"};
        static const char* proj[] = {"X", "Y", "Z"};
        static const char* hirz[] = {"X0", "X1", "Y0", "Y1"};
        switch (kind) {
            case Surf::Affine: return aff[i];
            case Surf::Projective: return proj[i];
            default: return hirz[i];
        }
    }
};

using Expv = std::array<uint16_t, 4>;

inline long expv_total(const Expv& e) {
    return (long)e[0] + e[1] + e[2] + e[3];
}

// descending grevlex so that map iteration starts at the leading term
struct GrevlexGreater {
    bool operator()(const Expv& a, const Expv& b) const {
        long ta = expv_total(a), tb = expv_total(b);
        if (ta != tb) return ta > tb;
        for (int i = 4; i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

struct MultiPoly {
    int nvars = 2;
    std::map<Expv, Scalar, GrevlexGreater> terms;

    MultiPoly() = default;
    explicit MultiPoly(int n) : nvars(n) {}

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && expv_total(terms.begin()->first) == 0);
    }
    void add_term(const Expv& e, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(e, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    const Expv& lead_exp() const {
        internal_check(!terms.empty(), "lead_exp of zero");
        return terms.begin()->first;
    }
    const Scalar& lead_coeff() const {
        internal_check(!terms.empty(), "lead_coeff of zero");
        return terms.begin()->second;
    }
};

inline MultiPoly mono(int nvars, const Expv& e, const Scalar& c) {
    MultiPoly p(nvars);
    p.add_term(e, c);
    return p;
}

inline MultiPoly const_poly(int nvars, const Scalar& c) { return mono(nvars, {0, 0, 0, 0}, c); }

inline MultiPoly var_poly(int nvars, int i) {
    Expv e{0, 0, 0, 0};
    e[i] = 1;
    return mono(nvars, e, Scalar(1L));
}

inline MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    internal_check(a.nvars == b.nvars, "nvars mismatch");
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}

inline MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

inline MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    internal_check(a.nvars == b.nvars, "nvars mismatch");
    MultiPoly r(a.nvars);
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            Expv e{(uint16_t)(ea[0] + eb[0]), (uint16_t)(ea[1] + eb[1]),
                   (uint16_t)(ea[2] + eb[2]), (uint16_t)(ea[3] + eb[3])};
            r.add_term(e, ca * cb);
        }
    return r;
}

inline MultiPoly operator*(const MultiPoly& a, const Scalar& c) {
    MultiPoly r(a.nvars);
    if (c.is_zero()) return r;
    for (const auto& [e, co] : a.terms) r.add_term(e, co * c);
    return r;
}

inline bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars == b.nvars && (a - b).is_zero();
}
inline bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

inline MultiPoly pow_poly(const MultiPoly& a, long e) {
    MultiPoly r = const_poly(a.nvars, Scalar(1L));
    for (long i = 0; i < e; ++i) r = r * a;
    return r;
}

inline long deg_in(const MultiPoly& p, int v) {
    long d = -1;
    for (const auto& [e, c] : p.terms) d = std::max(d, (long)e[v]);
    return d;
}

inline long min_deg_in(const MultiPoly& p, int v) {
    internal_check(!p.is_zero(), "min_deg_in of zero");
    long d = -1;
    for (const auto& [e, c] : p.terms) d = (d < 0) ? e[v] : std::min(d, (long)e[v]);
    return d;
}

inline long total_degree(const MultiPoly& p) {
    long d = -1;
    for (const auto& [e, c] : p.terms) d = std::max(d, expv_total(e));
    return d;
}

inline long min_total_degree(const MultiPoly& p) {
    internal_check(!p.is_zero(), "min_total_degree of zero");
    long d = -1;
    for (const auto& [e, c] : p.terms) d = (d < 0) ? expv_total(e) : std::min(d, expv_total(e));
    return d;
}

inline MultiPoly homogeneous_part(const MultiPoly& p, long k) {
    MultiPoly r(p.nvars);
    for (const auto& [e, c] : p.terms)
        if (expv_total(e) == k) r.terms.emplace(e, c);
    return r;
}

inline Scalar coeff_of(const MultiPoly& p, const Expv& e) {
    auto it = p.terms.find(e);
    return it == p.terms.end() ? Scalar(0L) : it->second;
}

inline MultiPoly dvar(const MultiPoly& p, int v) {
    MultiPoly r(p.nvars);
    for (const auto& [e, c] : p.terms) {
        if (e[v] == 0) continue;
        Expv f = e;
        f[v] -= 1;
        r.add_term(f, c * Scalar((long)e[v]));
    }
    return r;
}

// divide by var^m; every term must have exponent >= m in var
inline MultiPoly shift_down(const MultiPoly& p, int v, long m) {
    MultiPoly r(p.nvars);
    for (const auto& [e, c] : p.terms) {
        internal_check(e[v] >= m, "shift_down: exponent too small");
        Expv f = e;
        f[v] = (uint16_t)(f[v] - m);
        r.terms.emplace(f, c);
    }
    return r;
}

// simultaneous substitution of every variable
inline MultiPoly compose(const MultiPoly& p, const std::vector<MultiPoly>& images) {
    internal_check((int)images.size() == p.nvars, "compose: image count");
    int out_n = images.empty() ? p.nvars : images[0].nvars;
    // power cache per variable
    std::vector<std::vector<MultiPoly>> pw(p.nvars);
    for (int v = 0; v < p.nvars; ++v) pw[v].push_back(const_poly(out_n, Scalar(1L)));
    auto power = [&](int v, int k) -> const MultiPoly& {
        while ((int)pw[v].size() <= k) pw[v].push_back(pw[v].back() * images[v]);
        return pw[v][k];
    };
    MultiPoly r(out_n);
    for (const auto& [e, c] : p.terms) {
        MultiPoly t = const_poly(out_n, c);
        for (int v = 0; v < p.nvars; ++v)
            if (e[v]) t = t * power(v, e[v]);
        r = r + t;
    }
    return r;
}

inline Scalar eval_point(const MultiPoly& p, const std::vector<Scalar>& pt) {
    internal_check((int)pt.size() == p.nvars, "eval_point: arity");
    Scalar acc(0L);
    for (const auto& [e, c] : p.terms) {
        Scalar t = c;
        for (int v = 0; v < p.nvars; ++v)
            for (int i = 0; i < e[v]; ++i) t = t * pt[v];
        acc = acc + t;
    }
    return acc;
}

// substitute var v := value, result keeps the variable slot (exponent 0)
inline MultiPoly subst_scalar(const MultiPoly& p, int v, const Scalar& value) {
    MultiPoly r(p.nvars);
    for (const auto& [e, c] : p.terms) {
        Scalar t = c;
        for (int i = 0; i < e[v]; ++i) t = t * value;
        Expv f = e;
        f[v] = 0;
        r.add_term(f, t);
    }
    return r;
}

// substitute var v := var v + c
inline MultiPoly translate(const MultiPoly& p, int v, const Scalar& c) {
    std::vector<MultiPoly> im;
    for (int i = 0; i < p.nvars; ++i) im.push_back(var_poly(p.nvars, i));
    im[v] = im[v] + const_poly(p.nvars, c);
    return compose(p, im);
}

inline UPoly to_upoly(const MultiPoly& p, int v) {
    UPoly u;
    for (const auto& [e, c] : p.terms) {
        for (int i = 0; i < p.nvars; ++i)
            internal_check(i == v || e[i] == 0, "to_upoly: extra variable present");
        if ((size_t)e[v] >= u.size()) u.resize(e[v] + 1, Scalar(0L));
        u[e[v]] = c;
    }
    unormalize(u);
    return u;
}

inline MultiPoly from_upoly(const UPoly& u, int nvars, int v) {
    MultiPoly p(nvars);
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        Expv e{0, 0, 0, 0};
        e[v] = (uint16_t)i;
        p.terms.emplace(e, u[i]);
    }
    return p;
}

// coefficients of p viewed as univariate in v (ascending), entries free of v
inline std::vector<MultiPoly> coeffs_in(const MultiPoly& p, int v) {
    std::vector<MultiPoly> out(std::max(deg_in(p, v) + 1, 1L), MultiPoly(p.nvars));
    for (const auto& [e, c] : p.terms) {
        Expv f = e;
        f[v] = 0;
        out[e[v]].add_term(f, c);
    }
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
}

// ---- exact division and gcd ----

inline std::optional<MultiPoly> try_exact_div(MultiPoly p, const MultiPoly& q) {
    internal_check(!q.is_zero(), "division by zero polynomial");
    MultiPoly quo(p.nvars);
    const Expv& lq = q.lead_exp();
    Scalar lqc = q.lead_coeff();
    while (!p.is_zero()) {
        const Expv& lp = p.lead_exp();
        Expv d{0, 0, 0, 0};
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
            if (lp[i] < lq[i]) { ok = false; break; }
            d[i] = (uint16_t)(lp[i] - lq[i]);
        }
        if (!ok) return std::nullopt;
        MultiPoly t = mono(p.nvars, d, p.lead_coeff() / lqc);
        quo = quo + t;
        p = p - t * q;
    }
    return quo;
}

inline MultiPoly exact_div(const MultiPoly& p, const MultiPoly& q) {
    auto r = try_exact_div(p, q);
    internal_check(r.has_value(), "exact_div: not divisible");
    return *r;
}

inline bool divides(const MultiPoly& q, const MultiPoly& p) {
    if (p.is_zero()) return true;
    return try_exact_div(p, q).has_value();
}

// canonical scaling: leading grevlex coefficient 1
inline MultiPoly normalize_lead(MultiPoly p) {
    if (p.is_zero()) return p;
    Scalar inv = p.lead_coeff().inv();
    for (auto& [e, c] : p.terms) c = c * inv;
    return p;
}

namespace detail {

inline int top_var(const MultiPoly& a, const MultiPoly& b) {
    for (int v = 4; v-- > 0;)
        if (deg_in(a, v) > 0 || deg_in(b, v) > 0) return v;
    return -1;
}

// pseudo-remainder of a by b in variable v (deg_v a >= deg_v b >= 1)
inline MultiPoly prem_v(MultiPoly a, const MultiPoly& b, int v) {
    long db = deg_in(b, v);
    auto bc = coeffs_in(b, v);
    MultiPoly lb = bc[db];
    while (!a.is_zero() && deg_in(a, v) >= db) {
        long da = deg_in(a, v);
        auto ac = coeffs_in(a, v);
        MultiPoly la = ac[da];
        Expv sh{0, 0, 0, 0};
        sh[v] = (uint16_t)(da - db);
        a = a * lb - mono(a.nvars, sh, Scalar(1L)) * la * b;
    }
    return a;
}

} // namespace detail

inline MultiPoly mgcd(const MultiPoly& a, const MultiPoly& b);

// content of p w.r.t. variable v: gcd of its v-coefficients
inline MultiPoly content_in(const MultiPoly& p, int v) {
    MultiPoly g(p.nvars);
    for (const auto& c : coeffs_in(p, v))
        if (!c.is_zero()) g = mgcd(g, c);
    return g;
}

inline MultiPoly mgcd(const MultiPoly& a, const MultiPoly& b) {
    internal_check(a.nvars == b.nvars, "mgcd: nvars mismatch");
    if (a.is_zero()) return normalize_lead(b);
    if (b.is_zero()) return normalize_lead(a);
    if (a.is_constant() || b.is_constant()) return const_poly(a.nvars, Scalar(1L));
    int v = detail::top_var(a, b);
    if (deg_in(a, v) == 0) return mgcd(content_in(b, v), a);
    if (deg_in(b, v) == 0) return mgcd(content_in(a, v), b);
    MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly g = mgcd(ca, cb);
    MultiPoly A = exact_div(a, ca), B = exact_div(b, cb);
    if (deg_in(A, v) < deg_in(B, v)) std::swap(A, B);
    // primitive PRS
    while (true) {
        MultiPoly R = detail::prem_v(A, B, v);
        if (R.is_zero()) return normalize_lead(g * B);
        if (deg_in(R, v) == 0) return normalize_lead(g);
        R = exact_div(R, content_in(R, v));
        A = std::move(B);
        B = std::move(R);
    }
}

// gcd of a list (used to strip common factors of coefficient tuples)
inline MultiPoly mgcd_list(const std::vector<MultiPoly>& ps) {
    internal_check(!ps.empty(), "mgcd_list: empty");
    MultiPoly g(ps[0].nvars);
    for (const auto& p : ps) {
        g = mgcd(g, p);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

// ---- grading ----

inline std::pair<long, long> mono_bidegree(const Expv& e, const GradingContext& ctx) {
    internal_check(ctx.kind == Surf::Hirzebruch, "mono_bidegree: wrong surface");
    return {(long)e[0] + e[1] - ctx.delta * e[3], (long)e[2] + e[3]};
}

inline bool is_bihomogeneous(const MultiPoly& p, const GradingContext& ctx) {
    if (p.is_zero()) return true;
    auto d0 = mono_bidegree(p.terms.begin()->first, ctx);
    for (const auto& [e, c] : p.terms)
        if (mono_bidegree(e, ctx) != d0) return false;
    return true;
}

// bidegree of a nonzero bihomogeneous polynomial
inline std::pair<long, long> bidegree(const MultiPoly& p, const GradingContext& ctx) {
    internal_check(!p.is_zero(), "bidegree of zero");
    internal_check(is_bihomogeneous(p, ctx), "bidegree: not bihomogeneous");
    return mono_bidegree(p.terms.begin()->first, ctx);
}

inline bool is_homogeneous(const MultiPoly& p) {
    if (p.is_zero()) return true;
    long d = expv_total(p.terms.begin()->first);
    for (const auto& [e, c] : p.terms)
        if (expv_total(e) != d) return false;
    return true;
}

// ---- printing ----

inline std::string poly_str(const MultiPoly& p, const GradingContext& ctx) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms) {
        std::string cs = c.str();
        bool neg = false;
        if (c.is_rational() && c.as_rat() < 0) {
            neg = true;
            cs = to_str(Rat(-c.as_rat()));
        }
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        std::string vars;
        for (int v = 0; v < p.nvars; ++v) {
            if (!e[v]) continue;
            if (!vars.empty()) vars += "*";
            vars += ctx.var_name(v);
            if (e[v] > 1) vars += "^" + std::to_string(e[v]);
        }
        bool unit = (cs == "1");
        if (vars.empty()) out += cs;
        else if (unit) out += vars;
        else out += cs + "*" + vars;
    }
    return out;
}

} // namespace folint
