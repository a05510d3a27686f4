#pragma once
// Prime field F_p for word-sized p, as a field handle (see rings.hpp).

#include "ag/rings.hpp"
#include <cstdint>

namespace ag {

struct FpField {
    using Elt = std::uint64_t;
    std::uint64_t p = 2;

    FpField() = default;
    explicit FpField(std::uint64_t prime) : p(prime) {
        if (!is_prime_u64(prime)) throw std::invalid_argument("FpField: p not prime");
        if (prime >= (1ull << 62)) throw std::invalid_argument("FpField: p too large");
    }

    Elt zero() const { return 0; }
    Elt one() const { return p == 1 ? 0 : 1; }
    Elt add(Elt a, Elt b) const { Elt s = a + b; return s >= p ? s - p : s; }
    Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p - b; }
    Elt neg(Elt a) const { return a == 0 ? 0 : p - a; }
    Elt mul(Elt a, Elt b) const {
        return (Elt)(((__uint128_t)a * b) % p);
    }
    Elt inv(Elt a) const {
        if (a == 0) throw std::domain_error("FpField: division by zero");
        // extended Euclid on (a, p)
        std::int64_t t = 0, newt = 1;
        std::uint64_t r = p, newr = a;
        while (newr != 0) {
            std::uint64_t q = r / newr;
            std::int64_t tt = t - (std::int64_t)q * newt;
            t = newt; newt = tt;
            std::uint64_t rr = r - q * newr;
            r = newr; newr = rr;
        }
        return t < 0 ? (Elt)(t + (std::int64_t)p) : (Elt)t;
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    bool is_zero(Elt a) const { return a == 0; }
    bool eq(Elt a, Elt b) const { return a == b; }

    Elt from_int(long n) const {
        long r = n % (long)p;
        if (r < 0) r += (long)p;
        return (Elt)r;
    }
    Elt from_mpz(const Int& n) const {
        Int r = mod_int(n, Int((unsigned long)p));
        return (Elt)r.get_ui();
    }
    Elt from_rat(const Rat& q) const {
        return div(from_mpz(q.get_num()), from_mpz(q.get_den()));
    }
    std::string to_string(Elt a) const { return std::to_string(a); }

    Elt pow(Elt a, Int e) const {
        if (e < 0) { a = inv(a); e = -e; }
        Elt r = one(), base = a;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    // Legendre symbol: 1 square, p-1 non-square, 0 zero.
    Elt legendre(Elt a) const {
        if (a == 0) return 0;
        return pow(a, Int((unsigned long)((p - 1) / 2)));
    }
    bool is_square(Elt a) const { return a == 0 || legendre(a) == 1; }
    // Tonelli-Shanks square root; throws if no root exists.
    Elt sqrt(Elt a) const {
        if (a == 0) return 0;
        if (!is_square(a)) throw std::domain_error("FpField::sqrt: non-residue");
        if (p == 2) return a;
        if (p % 4 == 3) return pow(a, Int((unsigned long)((p + 1) / 4)));
        // write p-1 = q * 2^s with q odd
        std::uint64_t q = p - 1, s = 0;
        while (q % 2 == 0) { q /= 2; ++s; }
        Elt z = 2;
        while (is_square(z)) ++z;
        Elt m = (Elt)s;
        Elt c = pow(z, Int((unsigned long)q));
        Elt t = pow(a, Int((unsigned long)q));
        Elt r = pow(a, Int((unsigned long)((q + 1) / 2)));
        while (t != 1) {
            Elt t2 = t; std::uint64_t i = 0;
            while (t2 != 1) { t2 = mul(t2, t2); ++i; }
            Elt b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
            m = (Elt)i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
        return r;
    }
};

} // namespace ag
