#pragma once
#include <gmpxx.h>
#include <string>
#include <vector>
#include "error.hpp"

namespace folint {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    internal_check(den != 0, "rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_of(long n) { return Rat(n); }

inline const Int& num(const Rat& r) { return r.get_num(); }
inline const Int& den(const Rat& r) { return r.get_den(); }

inline bool is_int(const Rat& r) { return r.get_den() == 1; }

inline Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline bool is_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// r is the square of a rational number
inline bool is_square(const Rat& r) {
    return r >= 0 && is_square(num(r)) && is_square(den(r));
}

inline Int isqrt(const Int& n) {
    internal_check(n >= 0, "isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Rat sqrt_exact(const Rat& r) {
    internal_check(is_square(r), "sqrt_exact of non-square");
    return make_rat(isqrt(num(r)), isqrt(den(r)));
}

inline int cmp(const Rat& a, const Rat& b) {
    int c = mpq_cmp(a.get_mpq_t(), b.get_mpq_t());
    return c < 0 ? -1 : c > 0 ? 1 : 0;
}

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int den_lcm(const std::vector<Rat>& v) {
    Int l = 1;
    for (auto& r : v) l = lcm_int(l, den(r));
    return l;
}

inline std::string to_str(const Rat& r) { return r.get_str(); }
inline std::string to_str(const Int& n) { return n.get_str(); }

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw Error("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

} // namespace folint
