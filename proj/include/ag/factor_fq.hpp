#pragma once
// Univariate factorization over finite fields: squarefree decomposition,
// distinct-degree splitting, and Cantor-Zassenhaus equal-degree splitting.
// Works over FpField and FqField through small overloaded helpers.

#include "ag/fq.hpp"
#include <map>
#include <random>

namespace ag {

inline Int field_order(const FpField& K) { return Int((unsigned long)K.p); }
inline Int field_order(const FqField& K) { return K.order(); }

template <class RNG>
FpField::Elt field_random(const FpField& K, RNG& rng) { return rng() % K.p; }
template <class RNG>
FqField::Elt field_random(const FqField& K, RNG& rng) { return K.random_elt(rng); }

inline std::uint64_t field_char(const FpField& K) { return K.p; }
inline std::uint64_t field_char(const FqField& K) { return K.base.p; }

// p-th root of a coefficient (for squarefree decomposition in char p).
inline FpField::Elt coeff_pth_root(const FpField& K, FpField::Elt a) {
    (void)K;
    return a; // x^p = x in F_p
}
inline FqField::Elt coeff_pth_root(const FqField& K, const FqField::Elt& a) {
    // a^(q/p) is the p-th root in F_q
    Int e = K.order() / Int((unsigned long)K.base.p);
    // q/p exponent: a^(p^(d-1))
    return K.pow(a, pow_int(Int((unsigned long)K.base.p), (unsigned long)(K.d - 1)));
}

// Squarefree decomposition: returns list of (g_i, i) with f = lc * prod g_i^i.
template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree_decomposition(const F& K, Poly<F> f) {
    std::vector<std::pair<Poly<F>, int>> out;
    f = poly_monic(K, f);
    if (f.deg() <= 0) return out;
    std::uint64_t p = field_char(K);
    int mult = 1;
    while (f.deg() > 0) {
        auto df = poly_derivative(K, f);
        if (df.is_zero()) {
            // f is a p-th power: take p-th root and scale multiplicity
            Poly<F> g;
            g.c.resize(f.deg() / (int)p + 1, K.zero());
            for (int i = 0; i <= f.deg(); i += (int)p)
                g.c[i / (int)p] = coeff_pth_root(K, f.c[i]);
            g.trim(K);
            f = g;
            mult *= (int)p;
            continue;
        }
        auto c = poly_gcd(K, f, df);
        auto w = poly_divrem(K, f, c).first; // product of squarefree factors
        int i = 1;
        while (w.deg() > 0) {
            auto y = poly_gcd(K, w, c);
            auto fac = poly_divrem(K, w, y).first;
            if (fac.deg() > 0) out.push_back({fac, i * mult});
            w = y;
            c = poly_divrem(K, c, y).first;
            ++i;
        }
        if (c.deg() == 0) break;
        f = c; // remaining part is a p-th power; loop handles it
    }
    return out;
}

// Distinct-degree: f squarefree monic; returns (product of irreducibles of degree d, d).
template <class F>
std::vector<std::pair<Poly<F>, int>> distinct_degree(const F& K, Poly<F> f) {
    std::vector<std::pair<Poly<F>, int>> out;
    Int q = field_order(K);
    Poly<F> x = poly_x(K);
    Poly<F> h = poly_mod(K, x, f);
    int d = 0;
    while (f.deg() > 0 && f.deg() >= 2 * (d + 1)) {
        ++d;
        h = poly_pow_mod(K, h, q, f);
        auto g = poly_gcd(K, poly_sub(K, h, x), f);
        if (g.deg() > 0) {
            out.push_back({g, d});
            f = poly_divrem(K, f, g).first;
            h = poly_mod(K, h, f);
        }
    }
    if (f.deg() > 0) out.push_back({f, f.deg()});
    return out;
}

// Equal-degree (Cantor-Zassenhaus): f = product of irreducibles of degree d.
template <class F>
void equal_degree_split(const F& K, const Poly<F>& f, int d,
                        std::vector<Poly<F>>& out, std::mt19937_64& rng) {
    if (f.deg() == d) { out.push_back(poly_monic(K, f)); return; }
    Int q = field_order(K);
    for (;;) {
        // random poly of degree < deg f
        Poly<F> a;
        a.c.resize(f.deg());
        for (int i = 0; i < f.deg(); ++i) a.c[i] = field_random(K, rng);
        a.trim(K);
        if (a.deg() < 1) continue;
        auto g = poly_gcd(K, a, f);
        if (g.deg() == 0) {
            if (field_char(K) == 2) {
                // trace map: a + a^2 + a^4 + ... (d*log2(q) terms)
                Poly<F> t, b = poly_mod(K, a, f);
                unsigned long bits = mpz_sizeinbase(q.get_mpz_t(), 2) - 1;
                for (unsigned long i = 0; i < (unsigned long)d * bits; ++i) {
                    t = poly_add(K, t, b);
                    b = poly_mod(K, poly_mul(K, b, b), f);
                }
                g = poly_gcd(K, t, f);
            } else {
                Int e = (pow_int(q, (unsigned long)d) - 1) / 2;
                auto b = poly_pow_mod(K, a, e, f);
                g = poly_gcd(K, poly_sub(K, b, poly_one(K)), f);
            }
        }
        if (g.deg() > 0 && g.deg() < f.deg()) {
            equal_degree_split(K, g, d, out, rng);
            equal_degree_split(K, poly_divrem(K, f, g).first, d, out, rng);
            return;
        }
    }
}

// Full factorization: returns (irreducible monic factor, multiplicity), sorted
// deterministically. Seeded internally so results are reproducible.
template <class F>
std::vector<std::pair<Poly<F>, int>> poly_factor(const F& K, const Poly<F>& f) {
    std::vector<std::pair<Poly<F>, int>> out;
    if (f.deg() <= 0) return out;
    if (f.deg() == 1) {
        out.push_back({poly_monic(K, f), 1});
        return out;
    }
    std::mt19937_64 rng(0);
    for (auto& [sf, mult] : squarefree_decomposition(K, f)) {
        for (auto& [dd, d] : distinct_degree(K, sf)) {
            std::vector<Poly<F>> irr;
            equal_degree_split(K, dd, d, irr, rng);
            for (auto& g : irr) out.push_back({g, mult});
        }
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        return poly_to_string(K, a.first) < poly_to_string(K, b.first);
    });
    return out;
}

// Irreducibility over any finite field handle.
template <class F>
bool poly_irreducible(const F& K, const Poly<F>& f) {
    int n = f.deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    Int q = field_order(K);
    Poly<F> x = poly_x(K);
    std::vector<Poly<F>> powers(n + 1);
    powers[0] = poly_mod(K, x, f);
    for (int k = 1; k <= n; ++k)
        powers[k] = poly_pow_mod(K, powers[k - 1], q, f);
    if (!poly_eq(K, powers[n], powers[0])) return false;
    for (auto [p, e] : factor_int(Int(n))) {
        (void)e;
        int k = n / (int)p.get_ui();
        auto g = poly_gcd(K, poly_sub(K, powers[k], powers[0]), f);
        if (g.deg() != 0) return false;
    }
    return true;
}

// Roots of f in K (each listed once, with multiplicity).
template <class F>
std::vector<std::pair<typename F::Elt, int>> poly_roots(const F& K, const Poly<F>& f) {
    std::vector<std::pair<typename F::Elt, int>> out;
    for (auto& [g, m] : poly_factor(K, f))
        if (g.deg() == 1)
            out.push_back({K.neg(g.c[0]), m});
    return out;
}

} // namespace ag
