#pragma once
#include <memory>
#include <string>
#include <vector>
#include "rational.hpp"

// number field towers: Q, Q[t]/(m), Q[t]/(m)[u]/(m'), ...
// a Scalar is stored at the lowest level that contains it (canonical representation)

namespace folint {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Scalar {
    FieldPtr f_;              // nullptr: rational
    Rat r_;                   // valid when f_ == nullptr
    std::vector<Scalar> co_;  // power-basis coords over f_->parent, size f_->deg

public:
    Scalar() : r_(0) {}
    Scalar(const Rat& r) : r_(r) {}
    Scalar(const Int& n) : r_(n) {}
    Scalar(long n) : r_(n) {}
    Scalar(int n) : r_((long)n) {}

    static Scalar make(const FieldPtr& f, std::vector<Scalar> coords);

    bool rational_repr() const { return !f_; }
    const FieldPtr& field() const { return f_; }
    const Rat& as_rat() const {
        internal_check(rational_repr(), "as_rat on algebraic scalar");
        return r_;
    }
    const std::vector<Scalar>& coords() const { return co_; }

    bool is_zero() const { return rational_repr() && r_ == 0; }
    bool is_one() const { return rational_repr() && r_ == 1; }
    bool is_rational() const { return rational_repr(); }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    Scalar inv() const;
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    std::string str() const;
};

class Field : public std::enable_shared_from_this<Field> {
public:
    FieldPtr parent;              // nullptr = Q
    std::vector<Scalar> minpoly;  // monic over parent, ascending, size deg+1
    int deg = 0;
    long abs_deg = 1;
    int depth = 0;
    std::string gen;
    // theta^deg .. theta^(2 deg - 2) in power-basis coords over parent
    std::vector<std::vector<Scalar>> pow_table;

    static FieldPtr extend(const FieldPtr& parent, std::vector<Scalar> minpoly_monic,
                           const std::string& gen_name);

    // reduce coords of length <= 2*deg-1 modulo the minimal polynomial
    std::vector<Scalar> reduce(std::vector<Scalar> c) const;

    Scalar generator() const {
        std::vector<Scalar> co(deg, Scalar(0L));
        if (deg > 1) co[1] = Scalar(1L);
        return Scalar::make(shared_from_this(), std::move(co));
    }
};

inline long field_abs_deg(const FieldPtr& f) { return f ? f->abs_deg : 1; }
inline int field_depth(const FieldPtr& f) { return f ? f->depth : 0; }

inline bool is_ancestor(const FieldPtr& anc, const FieldPtr& f) {
    if (!anc) return true;
    for (FieldPtr c = f; c; c = c->parent)
        if (c.get() == anc.get()) return true;
    return false;
}

inline FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
    if (is_ancestor(a, b)) return b;
    if (is_ancestor(b, a)) return a;
    throw Error("scalars from incompatible field towers");
}

inline Scalar Scalar::make(const FieldPtr& f, std::vector<Scalar> coords) {
    if (!f) {
        internal_check(coords.size() == 1, "make: base field coords size");
        return coords[0];
    }
    internal_check((int)coords.size() == f->deg, "make: coord count");
    bool high_zero = true;
    for (int i = 1; i < f->deg; ++i)
        if (!coords[i].is_zero()) { high_zero = false; break; }
    if (high_zero) return coords[0];  // collapse to parent level
    Scalar s;
    s.f_ = f;
    s.co_ = std::move(coords);
    return s;
}

// coords of s over F->parent (s must live at or below F)
inline std::vector<Scalar> coords_at(const Scalar& s, const FieldPtr& F) {
    internal_check(F != nullptr, "coords_at: base field");
    if (s.field().get() == F.get()) return s.coords();
    internal_check(is_ancestor(s.field(), F), "coords_at: not an ancestor");
    std::vector<Scalar> co(F->deg, Scalar(0L));
    co[0] = s;
    return co;
}

inline Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.rational_repr() && b.rational_repr()) return Scalar(Rat(a.r_ + b.r_));
    FieldPtr F = common_field(a.field(), b.field());
    auto ca = coords_at(a, F), cb = coords_at(b, F);
    for (int i = 0; i < F->deg; ++i) ca[i] = ca[i] + cb[i];
    return Scalar::make(F, std::move(ca));
}

inline Scalar operator-(const Scalar& a) {
    if (a.rational_repr()) return Scalar(Rat(-a.r_));
    auto co = a.coords();
    for (auto& c : co) c = -c;
    return Scalar::make(a.field(), std::move(co));
}

inline Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

inline Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.rational_repr() && b.rational_repr()) return Scalar(Rat(a.r_ * b.r_));
    if (a.is_zero() || b.is_zero()) return Scalar(0L);
    FieldPtr F = common_field(a.field(), b.field());
    auto ca = coords_at(a, F), cb = coords_at(b, F);
    std::vector<Scalar> prod(2 * F->deg - 1, Scalar(0L));
    for (int i = 0; i < F->deg; ++i) {
        if (ca[i].is_zero()) continue;
        for (int j = 0; j < F->deg; ++j) {
            if (cb[j].is_zero()) continue;
            prod[i + j] = prod[i + j] + ca[i] * cb[j];
        }
    }
    return Scalar::make(F, F->reduce(std::move(prod)));
}

inline bool operator==(const Scalar& a, const Scalar& b) {
    if (a.rational_repr() && b.rational_repr()) return a.r_ == b.r_;
    return (a - b).is_zero();
}

inline std::vector<Scalar> Field::reduce(std::vector<Scalar> c) const {
    internal_check((int)c.size() <= 2 * deg - 1, "reduce: input too long");
    c.resize(2 * deg - 1, Scalar(0L));
    std::vector<Scalar> out(c.begin(), c.begin() + deg);
    for (int i = deg; i < 2 * deg - 1; ++i) {
        if (c[i].is_zero()) continue;
        const auto& row = pow_table[i - deg];
        for (int j = 0; j < deg; ++j) out[j] = out[j] + c[i] * row[j];
    }
    return out;
}

inline FieldPtr Field::extend(const FieldPtr& parent, std::vector<Scalar> m,
                              const std::string& gen_name) {
    internal_check(m.size() >= 3, "extend: minpoly degree must be >= 2");
    internal_check(m.back().is_one(), "extend: minpoly must be monic");
    auto f = std::make_shared<Field>();
    f->parent = parent;
    f->minpoly = std::move(m);
    f->deg = (int)f->minpoly.size() - 1;
    f->abs_deg = f->deg * field_abs_deg(parent);
    f->depth = field_depth(parent) + 1;
    f->gen = gen_name;
    // theta^deg = -(m_0 + ... + m_{deg-1} theta^{deg-1})
    std::vector<Scalar> cur(f->deg);
    for (int i = 0; i < f->deg; ++i) cur[i] = -f->minpoly[i];
    f->pow_table.push_back(cur);
    for (int k = 1; k < f->deg - 1; ++k) {
        std::vector<Scalar> nxt(f->deg, Scalar(0L));
        // multiply by theta, fold the top coefficient back in
        Scalar top = cur[f->deg - 1];
        for (int i = f->deg - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        if (!top.is_zero())
            for (int i = 0; i < f->deg; ++i) nxt[i] = nxt[i] + top * f->pow_table[0][i];
        f->pow_table.push_back(nxt);
        cur = std::move(nxt);
    }
    return f;
}

// ---- dense univariate polynomials over Scalar (ascending coefficients) ----

using UPoly = std::vector<Scalar>;

inline void unormalize(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int udeg(const UPoly& p) { return (int)p.size() - 1; }  // -1 for zero

inline bool uis_zero(const UPoly& p) { return p.empty(); }

inline UPoly uadd(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Scalar(0L));
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    unormalize(r);
    return r;
}

inline UPoly uneg(UPoly a) {
    for (auto& c : a) c = -c;
    return a;
}

inline UPoly usub(const UPoly& a, const UPoly& b) { return uadd(a, uneg(b)); }

inline UPoly umul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Scalar(0L));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    }
    unormalize(r);
    return r;
}

inline UPoly uscale(UPoly a, const Scalar& c) {
    for (auto& x : a) x = x * c;
    unormalize(a);
    return a;
}

inline std::pair<UPoly, UPoly> udivrem(UPoly a, const UPoly& b) {
    internal_check(!b.empty(), "udivrem: division by zero polynomial");
    Scalar lcinv = b.back().inv();
    UPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Scalar(0L));
    while (a.size() >= b.size()) {
        Scalar coef = a.back() * lcinv;
        size_t shift = a.size() - b.size();
        q[shift] = coef;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = a[shift + i] - coef * b[i];
        internal_check(a.back().is_zero(), "udivrem: cancellation failed");
        a.pop_back();
        unormalize(a);
        if (a.empty()) break;
    }
    unormalize(q);
    return {q, a};
}

inline UPoly umod(const UPoly& a, const UPoly& b) { return udivrem(a, b).second; }

inline UPoly umonic(UPoly a) {
    if (a.empty()) return a;
    Scalar inv = a.back().inv();
    for (auto& c : a) c = c * inv;
    return a;
}

inline UPoly ugcd(UPoly a, UPoly b) {
    unormalize(a);
    unormalize(b);
    while (!b.empty()) {
        UPoly r = umod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return umonic(a);
}

// extended gcd: returns (g, s, t) with s a + t b = g, g monic (or zero)
inline std::tuple<UPoly, UPoly, UPoly> uext_gcd(UPoly a, UPoly b) {
    UPoly s0{Scalar(1L)}, s1{}, t0{}, t1{Scalar(1L)};
    unormalize(a);
    unormalize(b);
    while (!b.empty()) {
        auto [q, r] = udivrem(a, b);
        a = std::move(b);
        b = std::move(r);
        UPoly s2 = usub(s0, umul(q, s1));
        UPoly t2 = usub(t0, umul(q, t1));
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!a.empty()) {
        Scalar inv = a.back().inv();
        a = uscale(a, inv);
        s0 = uscale(s0, inv);
        t0 = uscale(t0, inv);
    }
    return {a, s0, t0};
}

inline UPoly uderiv(const UPoly& p) {
    if (p.size() <= 1) return {};
    UPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Scalar((long)i);
    unormalize(r);
    return r;
}

inline Scalar ueval(const UPoly& p, const Scalar& x) {
    Scalar v(0L);
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

// f(x + c)
inline UPoly ushift(const UPoly& p, const Scalar& c) {
    UPoly r;
    UPoly lin{c, Scalar(1L)};
    for (size_t i = p.size(); i-- > 0;) {
        r = umul(r, lin);
        if (!p[i].is_zero()) {
            if (r.empty()) r.push_back(p[i]);
            else r[0] = r[0] + p[i];
        }
    }
    unormalize(r);
    return r;
}

inline UPoly usquarefree_part(const UPoly& p) {
    if (udeg(p) <= 1) return umonic(p);
    UPoly g = ugcd(p, uderiv(p));
    if (udeg(g) <= 0) return umonic(p);
    return umonic(udivrem(p, g).first);
}

// resultant over a field via the Euclidean recursion
inline Scalar uresultant(UPoly a, UPoly b) {
    unormalize(a);
    unormalize(b);
    if (a.empty() || b.empty()) return Scalar(0L);
    Scalar acc(1L);
    bool neg = false;
    while (true) {
        int da = udeg(a), db = udeg(b);
        if (db == 0) {
            Scalar r = b[0];
            Scalar powv(1L);
            for (int i = 0; i < da; ++i) powv = powv * r;
            return neg ? -(acc * powv) : acc * powv;
        }
        if (da < db) {
            if ((da & 1) && (db & 1)) neg = !neg;
            std::swap(a, b);
            continue;
        }
        UPoly r = umod(a, b);
        if (r.empty()) return Scalar(0L);
        int dr = udeg(r);
        // res(a,b) = (-1)^{da db} lc(b)^{da-dr} res(b,r)
        Scalar lb = b.back(), powv(1L);
        for (int i = 0; i < da - dr; ++i) powv = powv * lb;
        acc = acc * powv;
        if ((da & 1) && (db & 1)) neg = !neg;
        a = std::move(b);
        b = std::move(r);
    }
}

// Newton interpolation through (nodes[i], values[i]); nodes pairwise distinct
inline UPoly uinterpolate(const std::vector<Scalar>& nodes, const std::vector<Scalar>& values) {
    internal_check(!nodes.empty() && nodes.size() == values.size(), "uinterpolate: size mismatch");
    long n = (long)nodes.size();
    std::vector<Scalar> dd = values;
    for (long j = 1; j < n; ++j)
        for (long i = n - 1; i >= j; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
    UPoly r{dd[n - 1]};
    for (long i = n - 2; i >= 0; --i)
        r = uadd(umul(r, UPoly{-nodes[i], Scalar(1L)}), UPoly{dd[i]});
    return r;
}

inline Scalar Scalar::inv() const {
    internal_check(!is_zero(), "inverse of zero");
    if (rational_repr()) return Scalar(Rat(1 / r_));
    UPoly a(co_.begin(), co_.end());
    unormalize(a);
    auto [g, s, t] = uext_gcd(a, f_->minpoly);
    internal_check(udeg(g) == 0, "inverse: element not invertible (reducible minpoly?)");
    (void)t;
    UPoly r = uscale(s, g[0].inv());
    r.resize(f_->deg, Scalar(0L));
    return Scalar::make(f_, std::move(r));
}

// ---- flattening to Q-coordinates and deterministic ordering ----

inline void flatten_into(const Scalar& s, const FieldPtr& F, std::vector<Rat>& out) {
    if (!F) {
        out.push_back(s.as_rat());
        return;
    }
    auto co = coords_at(s, F);
    for (const auto& c : co) flatten_into(c, F->parent, out);
}

inline std::vector<Rat> flatten_abs(const Scalar& s, const FieldPtr& F) {
    std::vector<Rat> out;
    out.reserve(field_abs_deg(F));
    flatten_into(s, F, out);
    return out;
}

inline int cmp_vec(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c) return c;
    }
    return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

// numeric key identifying a field tower: per level [deg, flattened minpoly coeffs...]
inline std::vector<Rat> field_key(const FieldPtr& f) {
    if (!f) return {};
    auto key = field_key(f->parent);
    key.push_back(Rat(f->deg));
    for (const auto& c : f->minpoly) {
        auto fl = flatten_abs(c, f->parent);
        key.insert(key.end(), fl.begin(), fl.end());
    }
    return key;
}

inline int scalar_order_cmp(const Scalar& a, const Scalar& b) {
    int c = cmp_vec(field_key(a.field()), field_key(b.field()));
    if (c) return c;
    return cmp_vec(flatten_abs(a, a.field()), flatten_abs(b, b.field()));
}

inline std::string Scalar::str() const {
    if (rational_repr()) return to_str(r_);
    std::string out = "(";
    for (int i = 0; i < f_->deg; ++i) {
        if (i) out += " + ";
        out += "(" + co_[i].str() + ")";
        if (i == 1) out += "*" + f_->gen;
        else if (i > 1) out += "*" + f_->gen + "^" + std::to_string(i);
    }
    return out + ")";
}

} // namespace folint
