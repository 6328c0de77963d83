#pragma once
#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>
#include "field.hpp"

// univariate factorization: Zassenhaus over Q, Trager over number field towers

namespace folint {

using ZPoly = std::vector<Int>;  // ascending coefficients

inline int zdeg(const ZPoly& p) { return (int)p.size() - 1; }

inline void znormalize(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Int zcontent(const ZPoly& p) {
    Int g = 0;
    for (const auto& c : p) g = gcd(g, c);
    return g;
}

// ---- arithmetic mod a word-sized prime ----

namespace modp {

using MP = std::vector<uint64_t>;  // ascending, entries in [0, p)

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return (uint64_t)((__uint128_t)a * b % p);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline uint64_t invmod(uint64_t a, uint64_t p) { return powmod(a % p, p - 2, p); }

inline void normalize(MP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const MP& f) { return (int)f.size() - 1; }

inline MP add(const MP& a, const MP& b, uint64_t p) {
    MP r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    normalize(r);
    return r;
}

inline MP sub(const MP& a, const MP& b, uint64_t p) {
    MP r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
    normalize(r);
    return r;
}

inline MP mul(const MP& a, const MP& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    MP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (__uint128_t)a[i] * b[j]) % p;
    }
    normalize(r);
    return r;
}

inline std::pair<MP, MP> divrem(MP a, const MP& b, uint64_t p) {
    internal_check(!b.empty(), "modp divrem by zero");
    uint64_t lcinv = invmod(b.back(), p);
    MP q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size()) {
        uint64_t c = mulmod(a.back(), lcinv, p);
        size_t sh = a.size() - b.size();
        q[sh] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[sh + i] = (a[sh + i] + p - mulmod(c, b[i], p)) % p;
        a.pop_back();
        normalize(a);
        if (a.empty()) break;
    }
    normalize(q);
    return {q, a};
}

inline MP monic(MP f, uint64_t p) {
    if (f.empty()) return f;
    uint64_t inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    return f;
}

inline MP gcd(MP a, MP b, uint64_t p) {
    while (!b.empty()) {
        MP r = divrem(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

inline MP deriv(const MP& f, uint64_t p) {
    if (f.size() <= 1) return {};
    MP r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = mulmod(f[i], i % p, p);
    normalize(r);
    return r;
}

// a^e mod f, with big exponent
inline MP poly_powmod(MP a, const Int& e, const MP& f, uint64_t p) {
    MP r{1};
    a = divrem(std::move(a), f, p).second;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = divrem(mul(r, r, p), f, p).second;
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = divrem(mul(r, a, p), f, p).second;
    }
    return r;
}

// equal-degree splitting of a product of degree-d irreducibles (p odd)
inline void edf(const MP& g, int d, uint64_t p, std::mt19937_64& rng, std::vector<MP>& out) {
    if (deg(g) == d) {
        out.push_back(g);
        return;
    }
    Int expo = (Int(pow_int(Int(p), d)) - 1) / 2;
    while (true) {
        MP a(deg(g), 0);
        bool nz = false;
        for (auto& c : a) { c = rng() % p; nz = nz || c; }
        if (!nz) continue;
        normalize(a);
        MP b = poly_powmod(a, expo, g, p);
        if (b.empty()) b = MP{p - 1};
        else b[0] = (b[0] + p - 1) % p;
        normalize(b);
        MP t = gcd(g, b, p);
        if (deg(t) > 0 && deg(t) < deg(g)) {
            edf(t, d, p, rng, out);
            edf(divrem(g, t, p).first, d, p, rng, out);
            return;
        }
    }
}

// full factorization of a squarefree monic polynomial mod p
inline std::vector<MP> factor_squarefree(MP f, uint64_t p, std::mt19937_64& rng) {
    std::vector<MP> out;
    MP x{0, 1};
    MP h = x;
    int d = 0;
    while (2 * (d + 1) <= deg(f)) {
        ++d;
        h = poly_powmod(h, Int((unsigned long)p), f, p);
        MP g = gcd(f, sub(h, x, p), p);
        if (deg(g) > 0) {
            edf(g, d, p, rng, out);
            f = divrem(f, g, p).first;
            h = divrem(h, f, p).second;
        }
    }
    if (deg(f) > 0) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace modp

// ---- arithmetic mod p^k (Int coefficients in [0, M)) ----

namespace modm {

using MPoly = std::vector<Int>;

inline void normalize(MPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline MPoly reduce(const ZPoly& f, const Int& M) {
    MPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        mpz_mod(r[i].get_mpz_t(), f[i].get_mpz_t(), M.get_mpz_t());
    }
    normalize(r);
    return r;
}

inline MPoly add(const MPoly& a, const MPoly& b, const Int& M) {
    MPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % M;
    normalize(r);
    return r;
}

inline MPoly sub(const MPoly& a, const MPoly& b, const Int& M) {
    MPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
        if (r[i] < 0) r[i] += M;
    }
    normalize(r);
    return r;
}

inline MPoly mul(const MPoly& a, const MPoly& b, const Int& M) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % M;
    }
    normalize(r);
    return r;
}

inline MPoly scale(MPoly a, const Int& c, const Int& M) {
    for (auto& x : a) x = x * c % M;
    normalize(a);
    return a;
}

// division by a monic divisor; exact long division mod M
inline std::pair<MPoly, MPoly> divrem_monic(MPoly a, const MPoly& b, const Int& M) {
    internal_check(!b.empty() && b.back() == 1, "divrem_monic: divisor not monic");
    MPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size()) {
        Int c = a.back();
        size_t sh = a.size() - b.size();
        q[sh] = c;
        for (size_t i = 0; i < b.size(); ++i) {
            a[sh + i] = (a[sh + i] - c * b[i]) % M;
            if (a[sh + i] < 0) a[sh + i] += M;
        }
        a.pop_back();
        normalize(a);
        if (a.empty()) break;
    }
    normalize(q);
    return {q, a};
}

} // namespace modm

// ---- Hensel lifting ----

struct HenselPair {
    modm::MPoly g, h, s, t;  // f = g h, s g + t h = 1, h monic
};

// one quadratic step: data valid mod m, f given mod m^2; returns data mod m^2
inline HenselPair hensel_step(const modm::MPoly& f, const HenselPair& in, const Int& m2) {
    using namespace modm;
    MPoly e = sub(f, mul(in.g, in.h, m2), m2);
    auto [q, r] = divrem_monic(mul(in.s, e, m2), in.h, m2);
    MPoly g1 = add(add(in.g, mul(in.t, e, m2), m2), mul(q, in.g, m2), m2);
    MPoly h1 = add(in.h, r, m2);
    MPoly b = sub(add(mul(in.s, g1, m2), mul(in.t, h1, m2), m2), MPoly{1}, m2);
    auto [c, d] = divrem_monic(mul(in.s, b, m2), h1, m2);
    MPoly s1 = sub(in.s, d, m2);
    MPoly t1 = sub(sub(in.t, mul(in.t, b, m2), m2), mul(c, g1, m2), m2);
    return {g1, h1, s1, t1};
}

namespace detail {

// lift the factorization of f (given mod M) whose image mod p splits across
// fac[lo..hi); appends the lifted image of each fac[i] (monic mod M) to out
inline void lift_tree(const modm::MPoly& f, const std::vector<modp::MP>& fac,
                      size_t lo, size_t hi, uint64_t p, const Int& M,
                      std::vector<modm::MPoly>& out) {
    using namespace modp;
    if (hi - lo == 1) {
        // make monic mod M; leading coefficient is invertible (prime to p)
        Int lc = f.back(), inv, junk;
        mpz_gcdext(junk.get_mpz_t(), inv.get_mpz_t(), nullptr, lc.get_mpz_t(), M.get_mpz_t());
        internal_check(junk == 1, "lift_tree: leading coefficient not invertible");
        inv %= M;
        if (inv < 0) inv += M;
        out.push_back(modm::scale(f, inv, M));
        return;
    }
    size_t mid = lo + (hi - lo) / 2;
    // g carries lc(f); h is the monic product of the right half
    MP gp{(uint64_t)mpz_fdiv_ui(f.back().get_mpz_t(), p)};
    for (size_t i = lo; i < mid; ++i) gp = mul(gp, fac[i], p);
    MP hp{1};
    for (size_t i = mid; i < hi; ++i) hp = mul(hp, fac[i], p);
    // Bezout mod p
    MP a = gp, b = hp, s0{1}, s1{}, t0{}, t1{1};
    while (!b.empty()) {
        auto [q, r] = divrem(a, b, p);
        a = std::move(b);
        b = std::move(r);
        MP s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    internal_check(deg(a) == 0, "lift_tree: halves not coprime mod p");
    uint64_t ainv = invmod(a[0], p);
    for (auto& c : s0) c = mulmod(c, ainv, p);
    for (auto& c : t0) c = mulmod(c, ainv, p);
    auto toM = [](const MP& u) {
        modm::MPoly r(u.size());
        for (size_t i = 0; i < u.size(); ++i) r[i] = Int((unsigned long)u[i]);
        return r;
    };
    HenselPair hp2{toM(gp), toM(hp), toM(s0), toM(t0)};
    // quadratic lifting; all moduli are powers of p, so overshooting M is harmless
    Int m = Int((unsigned long)p);
    while (m < M) {
        Int m2 = m * m;
        modm::MPoly fm = f;
        for (auto& c : fm) c %= m2;
        modm::normalize(fm);
        hp2 = hensel_step(fm, hp2, m2);
        m = m2;
    }
    // reduce to mod M exactly
    auto redM = [&](modm::MPoly u) {
        for (auto& c : u) { c %= M; if (c < 0) c += M; }
        modm::normalize(u);
        return u;
    };
    modm::MPoly gM = redM(hp2.g), hM = redM(hp2.h);
    lift_tree(gM, fac, lo, mid, p, M, out);
    lift_tree(hM, fac, mid, hi, p, M, out);
}

} // namespace detail

// ---- Zassenhaus: factor a primitive squarefree ZPoly, lc > 0 ----

inline std::vector<ZPoly> zassenhaus_squarefree(ZPoly f) {
    znormalize(f);
    internal_check(zdeg(f) >= 1, "zassenhaus: degree < 1");
    if (zdeg(f) == 1) return {f};
    std::mt19937_64 rng(0x0F01D57EEDULL);

    // prime selection: smallest odd primes with p coprime to lc and f squarefree mod p
    Int lc = f.back();
    uint64_t best_p = 0;
    std::vector<modp::MP> best_fac;
    unsigned long cand = 3;
    int tried = 0;
    while (tried < 3) {
        mpz_class pz(cand);
        if (mpz_probab_prime_p(pz.get_mpz_t(), 30)) {
            uint64_t p = cand;
            if (mpz_fdiv_ui(lc.get_mpz_t(), p) != 0) {
                modp::MP fp(f.size());
                for (size_t i = 0; i < f.size(); ++i)
                    fp[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
                modp::normalize(fp);
                if (modp::deg(fp) == zdeg(f)) {
                    modp::MP fpm = modp::monic(fp, p);
                    if (modp::deg(modp::gcd(fpm, modp::deriv(fpm, p), p)) == 0) {
                        auto fac = modp::factor_squarefree(fpm, p, rng);
                        if (best_p == 0 || fac.size() < best_fac.size()) {
                            best_p = p;
                            best_fac = std::move(fac);
                        }
                        ++tried;
                    }
                }
            }
        }
        cand += 2;
        internal_check(cand < (1UL << 30), "zassenhaus: prime search exhausted");
    }
    if (best_fac.size() == 1) return {f};
    uint64_t p = best_p;

    // lift bound: M = p^k > 2 * 2^n (n+1) |f|_inf |lc|
    int n = zdeg(f);
    Int fmax = 0;
    for (const auto& c : f) fmax = std::max(fmax, Int(abs(c)));
    Int B = (Int(1) << n) * Int(n + 1) * fmax * abs(lc) * 2;
    Int M(1);
    while (M <= B) M *= Int((unsigned long)p);

    std::vector<modm::MPoly> lifted;
    detail::lift_tree(modm::reduce(f, M), best_fac, 0, best_fac.size(), p, M, lifted);
    internal_check(lifted.size() == best_fac.size(), "zassenhaus: lift count");

    // recombination over subsets of ascending cardinality
    auto sym = [&](Int v) {
        if (2 * v > M) v -= M;
        return v;
    };
    std::vector<ZPoly> result;
    std::vector<size_t> live(lifted.size());
    for (size_t i = 0; i < live.size(); ++i) live[i] = i;
    ZPoly z = f;
    size_t card = 1;
    while (2 * card <= live.size()) {
        std::vector<size_t> idx(card);
        for (size_t i = 0; i < card; ++i) idx[i] = i;
        bool hit = false;
        while (true) {
            modm::MPoly prod = modm::reduce(ZPoly{z.back()}, M);
            for (size_t i : idx) prod = modm::mul(prod, lifted[live[i]], M);
            ZPoly cand2(prod.size());
            for (size_t i = 0; i < prod.size(); ++i) cand2[i] = sym(prod[i]);
            znormalize(cand2);
            Int ct = zcontent(cand2);
            if (ct != 0) {
                for (auto& c : cand2) c /= ct;
                if (cand2.back() < 0)
                    for (auto& c : cand2) c = -c;
                // trial division z / cand2 over Q
                bool ok = zdeg(cand2) >= 1 && zdeg(cand2) <= zdeg(z);
                if (ok) {
                    std::vector<Rat> rem(z.begin(), z.end()), q(zdeg(z) - zdeg(cand2) + 1, Rat(0));
                    for (int dpos = zdeg(z); dpos >= zdeg(cand2); --dpos) {
                        Rat c = rem[dpos] / Rat(cand2.back());
                        q[dpos - zdeg(cand2)] = c;
                        if (c != 0)
                            for (int i = 0; i <= zdeg(cand2); ++i)
                                rem[dpos - zdeg(cand2) + i] -= c * Rat(cand2[i]);
                    }
                    for (const auto& r : rem)
                        if (r != 0) { ok = false; break; }
                    if (ok)
                        for (const auto& c : q)
                            if (!is_int(c)) { ok = false; break; }
                    if (ok) {
                        result.push_back(cand2);
                        ZPoly nz(q.size());
                        for (size_t i = 0; i < q.size(); ++i) nz[i] = num(q[i]);
                        z = std::move(nz);
                        std::vector<size_t> nl;
                        for (size_t i = 0, j = 0; i < live.size(); ++i) {
                            if (j < idx.size() && idx[j] == i) { ++j; continue; }
                            nl.push_back(live[i]);
                        }
                        live = std::move(nl);
                        hit = true;
                        break;
                    }
                }
            }
            // next combination
            int pos = (int)card - 1;
            while (pos >= 0 && idx[pos] == live.size() - card + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t i = pos + 1; i < card; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!hit) ++card;
    }
    if (zdeg(z) >= 1) {
        if (z.back() < 0)
            for (auto& c : z) c = -c;
        result.push_back(z);
    }
    std::sort(result.begin(), result.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return result;
}

// ---- factorization over Q and over towers ----

inline UPoly upoly_from_z(const ZPoly& z) {
    UPoly r(z.size());
    for (size_t i = 0; i < z.size(); ++i) r[i] = Scalar(Rat(z[i]));
    return r;
}

// monic irreducible factors of a squarefree monic polynomial over F (or Q if F null)
inline std::vector<UPoly> factor_squarefree_field(const UPoly& f, const FieldPtr& F);

inline std::vector<UPoly> factor_squarefree_rational(const UPoly& f) {
    internal_check(udeg(f) >= 1, "factor_squarefree_rational: degree < 1");
    if (udeg(f) == 1) return {umonic(f)};
    Int den(1);
    for (const auto& c : f) den = lcm_int(den, folint::den(c.as_rat()));
    ZPoly z(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        Rat v = f[i].as_rat() * Rat(den);
        internal_check(is_int(v), "clear denominators");
        z[i] = num(v);
    }
    Int ct = zcontent(z);
    for (auto& c : z) c /= ct;
    if (z.back() < 0)
        for (auto& c : z) c = -c;
    auto zf = zassenhaus_squarefree(z);
    std::vector<UPoly> out;
    for (const auto& g : zf) out.push_back(umonic(upoly_from_z(g)));
    return out;
}

inline std::vector<UPoly> factor_squarefree_field(const UPoly& f, const FieldPtr& F) {
    if (!F) return factor_squarefree_rational(f);
    UPoly g = umonic(f);
    if (udeg(g) == 1) return {g};
    Scalar theta = F->generator();
    // shifts 0, 1, -1, 2, -2, ... until the norm is squarefree
    for (long step = 0;; ++step) {
        long k = (step % 2 == 0) ? step / 2 : -(step / 2 + 1);
        internal_check(step < 200, "trager: no squarefree shift found");
        UPoly h = (k == 0) ? g : ushift(g, Scalar(-k) * theta);
        // norm via evaluate/interpolate at rational nodes
        int dn = udeg(h) * F->deg;
        std::vector<Scalar> xs, ys;
        long node = 0;
        for (int e = 0; e <= dn; ++e) {
            Scalar xe(node);
            node = (node > 0) ? -node : -node + 1;
            Scalar val = ueval(h, xe);
            UPoly ct(coords_at(val, F));
            unormalize(ct);
            ys.push_back(uresultant(F->minpoly, ct));
            xs.push_back(xe);
        }
        // Newton interpolation over the parent field
        std::vector<Scalar> dd = ys;
        for (size_t j = 1; j < dd.size(); ++j)
            for (size_t i = dd.size(); i-- > j;)
                dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
        UPoly N;
        for (size_t i = dd.size(); i-- > 0;) {
            N = umul(N, UPoly{-xs[i], Scalar(1L)});
            if (!dd[i].is_zero()) {
                if (N.empty()) N.push_back(dd[i]);
                else N[0] = N[0] + dd[i];
            }
        }
        unormalize(N);
        internal_check(udeg(N) == dn, "trager: norm degree");
        if (udeg(ugcd(N, uderiv(N))) != 0) continue;
        auto nf = factor_squarefree_field(umonic(N), F->parent);
        std::vector<UPoly> out;
        for (const auto& Nj : nf) {
            UPoly gj = ugcd(h, Nj);
            if (udeg(gj) >= 1)
                out.push_back(k == 0 ? gj : ushift(gj, Scalar(k) * theta));
        }
        int total = 0;
        for (const auto& q : out) total += udeg(q);
        internal_check(total == udeg(g), "trager: factor degrees");
        return out;
    }
}

inline int upoly_order_cmp(const UPoly& a, const UPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        int c = scalar_order_cmp(a[i], b[i]);
        if (c) return c;
    }
    return 0;
}

// full factorization over F: monic irreducible factors with multiplicities,
// deterministic order; the leading coefficient is dropped
inline std::vector<std::pair<UPoly, int>> factor_field(const UPoly& f0, const FieldPtr& F) {
    UPoly f = f0;
    unormalize(f);
    internal_check(!f.empty(), "factor_field: zero polynomial");
    f = umonic(f);
    std::vector<std::pair<UPoly, int>> out;
    if (udeg(f) == 0) return out;
    // Yun squarefree decomposition (characteristic 0)
    UPoly fp = uderiv(f);
    UPoly g = ugcd(f, fp);
    UPoly b = udivrem(f, g).first;
    UPoly c = udivrem(fp, g).first;
    UPoly d = usub(c, uderiv(b));
    int i = 1;
    while (udeg(b) > 0) {
        UPoly a = ugcd(b, d);
        if (udeg(a) > 0)
            for (auto& irr : factor_squarefree_field(a, F))
                out.emplace_back(std::move(irr), i);
        b = udivrem(b, a).first;
        c = udivrem(d, a).first;
        d = usub(c, uderiv(b));
        ++i;
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second < y.second;
        return upoly_order_cmp(x.first, y.first) < 0;
    });
    return out;
}

// roots of f lying in F itself (from linear factors), deterministic order
inline std::vector<Scalar> roots_in_field(const UPoly& f, const FieldPtr& F) {
    std::vector<Scalar> out;
    for (const auto& [g, m] : factor_field(f, F))
        if (udeg(g) == 1) out.push_back(-g[0]);
    return out;
}

} // namespace folint
