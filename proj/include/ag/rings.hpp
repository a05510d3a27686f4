#pragma once
// Base coefficient rings: arbitrary-precision integers and rationals (GMP),
// plus the "field handle" conventions used by the generic containers.
//
// A field handle F is a small value type providing:
//   typename F::Elt
//   F::zero(), F::one()
//   add, sub, neg, mul, inv, div
//   is_zero, eq
// Containers (Poly, Mat, Series) are templated on the handle and carry a
// copy of it, so contexts with runtime data (a prime, a modulus polynomial)
// work the same way as stateless fields like Q.

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <vector>
#include <stdexcept>

namespace ag {

using Int = mpz_class;
using Rat = mpq_class;

inline Int pow_int(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Floor-positive remainder in [0, m).
inline Int mod_int(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int invmod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("invmod: not invertible");
    return r;
}

inline Int powmod(const Int& a, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Parse "a" or "a/b".
inline Rat parse_rat(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

// The rationals as a field handle.
struct QField {
    using Elt = Rat;
    static Elt zero() { return Rat(0); }
    static Elt one() { return Rat(1); }
    static Elt add(const Elt& a, const Elt& b) { return a + b; }
    static Elt sub(const Elt& a, const Elt& b) { return a - b; }
    static Elt neg(const Elt& a) { return -a; }
    static Elt mul(const Elt& a, const Elt& b) { return a * b; }
    static Elt inv(const Elt& a) {
        if (a == 0) throw std::domain_error("QField: division by zero");
        return Rat(1) / a;
    }
    static Elt div(const Elt& a, const Elt& b) { return mul(a, inv(b)); }
    static bool is_zero(const Elt& a) { return a == 0; }
    static bool eq(const Elt& a, const Elt& b) { return a == b; }
    static Elt from_int(long n) { return Rat(n); }
    static Elt from_rat(const Rat& r) { return r; }
    static std::string to_string(const Elt& a) { return a.get_str(); }
};

// Trial-division primality, adequate for the word-sized inputs we use.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Factor a positive integer by trial division (inputs here stay modest).
inline std::vector<std::pair<Int, unsigned>> factor_int(Int n) {
    std::vector<std::pair<Int, unsigned>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Int d = 2; d * d <= n; d += 1) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.push_back({d, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

} // namespace ag
