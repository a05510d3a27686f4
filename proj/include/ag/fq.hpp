#pragma once
// Finite extension fields F_{p^d} = F_p[t]/(m(t)) as field handles.
// Elements are residue polynomials over F_p. Base field is always prime;
// embeddings between extensions are provided via root finding.

#include "ag/fp.hpp"
#include "ag/poly.hpp"
#include <random>
#include <memory>
#include <map>

namespace ag {

struct FqField {
    using Elt = Poly<FpField>;
    FpField base;
    Poly<FpField> modulus; // monic irreducible over F_p
    int d = 1;

    FqField() = default;
    FqField(FpField fp, Poly<FpField> mod)
        : base(fp), modulus(std::move(mod)), d(modulus.deg()) {
        if (d < 1) throw std::invalid_argument("FqField: bad modulus");
        if (!base.eq(modulus.c.back(), base.one()))
            modulus = poly_monic(base, modulus);
    }

    Int order() const { return pow_int(Int((unsigned long)base.p), (unsigned long)d); }

    Elt zero() const { return Elt(); }
    Elt one() const { return poly_one(base); }
    Elt gen() const { return poly_mod(base, poly_x(base), modulus); }
    Elt add(const Elt& a, const Elt& b) const { return poly_add(base, a, b); }
    Elt sub(const Elt& a, const Elt& b) const { return poly_sub(base, a, b); }
    Elt neg(const Elt& a) const { return poly_neg(base, a); }
    Elt mul(const Elt& a, const Elt& b) const {
        // fused schoolbook multiply + reduction by the monic modulus;
        // avoids the temporaries of poly_mul/poly_divrem in this hot path
        if (a.c.empty() || b.c.empty()) return Elt();
        std::vector<FpField::Elt> t(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (!a.c[i]) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                if (b.c[j]) t[i + j] = base.add(t[i + j], base.mul(a.c[i], b.c[j]));
        }
        for (int i = (int)t.size() - 1; i >= d; --i) {
            FpField::Elt lead = t[i];
            if (!lead) continue;
            t[i] = 0;
            for (int j = 0; j < d; ++j)
                if (modulus.c[j])
                    t[i - d + j] = base.sub(t[i - d + j], base.mul(lead, modulus.c[j]));
        }
        Elt r;
        r.c.assign(t.begin(), t.begin() + std::min<std::size_t>(t.size(), (std::size_t)d));
        r.trim(base);
        return r;
    }
    Elt inv(const Elt& a) const {
        if (a.is_zero()) throw std::domain_error("FqField: division by zero");
        auto [g, u, v] = poly_xgcd(base, a, modulus);
        (void)v;
        if (g.deg() != 0) throw std::domain_error("FqField: modulus not irreducible?");
        return poly_mod(base, u, modulus);
    }
    Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }
    bool is_zero(const Elt& a) const { return a.is_zero(); }
    bool eq(const Elt& a, const Elt& b) const { return poly_eq(base, a, b); }

    Elt from_int(long n) const { return poly_const(base, base.from_int(n)); }
    Elt from_base(FpField::Elt a) const { return poly_const(base, a); }
    Elt from_mpz(const Int& n) const { return poly_const(base, base.from_mpz(n)); }
    Elt from_rat(const Rat& q) const { return poly_const(base, base.from_rat(q)); }

    std::string to_string(const Elt& a) const { return poly_to_string(base, a); }

    Elt pow(Elt a, Int e) const {
        if (e < 0) { a = inv(a); e = -e; }
        Elt r = one();
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Elt frobenius(const Elt& a) const { return pow(a, Int((unsigned long)base.p)); }

    // Trace and norm to F_p.
    FpField::Elt trace(const Elt& a) const {
        Elt s = a, f = a;
        for (int i = 1; i < d; ++i) { f = frobenius(f); s = add(s, f); }
        return s.coeff(base, 0);
    }
    FpField::Elt norm(const Elt& a) const {
        Elt n = one(), f = a;
        for (int i = 0; i < d; ++i) { n = mul(n, f); f = frobenius(f); }
        if (n.deg() > 0) throw std::logic_error("FqField::norm: not in base field");
        return n.coeff(base, 0);
    }

    bool is_square(const Elt& a) const {
        if (a.is_zero()) return true;
        if (base.p == 2) return true;
        Elt l = pow(a, (order() - 1) / 2);
        return eq(l, one());
    }

    // Tonelli-Shanks over F_q.
    Elt sqrt(const Elt& a) const {
        if (a.is_zero()) return a;
        if (!is_square(a)) throw std::domain_error("FqField::sqrt: non-residue");
        Int q = order();
        if (mod_int(q, 4) == 3) return pow(a, (q + 1) / 4);
        Int m = q - 1;
        unsigned long s = 0;
        while (mpz_even_p(m.get_mpz_t())) { m >>= 1; ++s; }
        // find a non-residue deterministically
        Elt z = gen();
        std::mt19937_64 rng(12345);
        while (is_square(z)) z = random_elt(rng);
        unsigned long e = s;
        Elt c = pow(z, m);
        Elt t = pow(a, m);
        Elt r = pow(a, (m + 1) / 2);
        while (!eq(t, one())) {
            Elt t2 = t;
            unsigned long i = 0;
            while (!eq(t2, one())) { t2 = mul(t2, t2); ++i; }
            Elt b = c;
            for (unsigned long j = 0; j + i + 1 < e; ++j) b = mul(b, b);
            e = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
        return r;
    }

    template <class RNG> Elt random_elt(RNG& rng) const {
        Elt r;
        r.c.resize(d);
        for (int i = 0; i < d; ++i) r.c[i] = rng() % base.p;
        r.trim(base);
        return r;
    }
};

// Deterministic irreducible monic polynomial of degree d over F_p
// (smallest in a fixed coefficient enumeration).
inline bool fp_poly_irreducible(const FpField& K, const Poly<FpField>& f) {
    int n = f.deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    // x^(p^k) mod f for k = 1..n; irreducible iff x^(p^n) == x and
    // gcd(x^(p^(n/q)) - x, f) == 1 for prime divisors q of n.
    Poly<FpField> x = poly_x(K);
    Poly<FpField> xp = x;
    std::vector<Poly<FpField>> powers(n + 1); // powers[k] = x^(p^k) mod f
    powers[0] = poly_mod(K, x, f);
    for (int k = 1; k <= n; ++k)
        powers[k] = poly_pow_mod(K, powers[k - 1], Int((unsigned long)K.p), f);
    if (!poly_eq(K, powers[n], powers[0])) return false;
    for (auto [q, e] : factor_int(Int(n))) {
        (void)e;
        int k = n / (int)q.get_ui();
        auto g = poly_gcd(K, poly_sub(K, powers[k], powers[0]), f);
        if (g.deg() != 0) return false;
    }
    return true;
}

inline Poly<FpField> find_irreducible(const FpField& K, int d) {
    if (d == 1) return poly_x(K);
    // enumerate monic polys x^d + c_{d-1} x^{d-1} + ... + c_0 in base-p order
    std::vector<std::uint64_t> cs(d, 0);
    for (;;) {
        Poly<FpField> f;
        f.c.resize(d + 1, 0);
        for (int i = 0; i < d; ++i) f.c[i] = cs[i];
        f.c[d] = 1;
        f.trim(K); // no-op (monic), keeps invariants
        if (fp_poly_irreducible(K, f)) return f;
        int i = 0;
        while (i < d && ++cs[i] == K.p) { cs[i] = 0; ++i; }
        if (i == d) throw std::logic_error("find_irreducible: exhausted");
    }
}

inline FqField make_fq(std::uint64_t p, int d) {
    // irreducible search is costly and callers build the same fields repeatedly
    static std::map<std::pair<std::uint64_t, int>, FqField> cache;
    auto it = cache.find({p, d});
    if (it != cache.end()) return it->second;
    FpField fp(p);
    FqField F(fp, find_irreducible(fp, d));
    cache.emplace(std::make_pair(p, d), F);
    return F;
}

} // namespace ag
