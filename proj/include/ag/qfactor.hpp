#pragma once
// Factorization in Q[x] via Zassenhaus: factor modulo a good prime, lift by
// Hensel's lemma, then recombine modular factors by subset search. The
// degrees occurring in this project are tiny (<= 10), so the exponential
// recombination step is never a concern.

#include "ag/rings.hpp"
#include "ag/poly.hpp"
#include "ag/fp.hpp"
#include "ag/factor_fq.hpp"
#include <algorithm>

namespace ag {

using QPoly = Poly<QField>;
using ZPolyV = std::vector<Int>; // integer coefficient vector, low to high

inline QPoly qpoly_from_int(const ZPolyV& v) {
    QPoly r;
    for (auto& x : v) r.c.push_back(Rat(x));
    QField K;
    r.trim(K);
    return r;
}

// Primitive integer form: f = content * prim with prim in Z[x], positive lc.
inline std::pair<Rat, ZPolyV> qpoly_primitive(const QPoly& f) {
    if (f.is_zero()) return {Rat(0), {}};
    Int den = 1;
    for (auto& q : f.c) den = lcm_int(den, q.get_den());
    ZPolyV v;
    Int g = 0;
    for (auto& q : f.c) {
        Rat s = q * Rat(den);
        v.push_back(s.get_num());
        g = gcd_int(g, s.get_num());
    }
    if (g == 0) g = 1;
    if (v.back() < 0) g = -g;
    for (auto& x : v) x /= g;
    return {Rat(g) / Rat(den), v};
}

inline Int zpoly_maxnorm(const ZPolyV& v) {
    Int m = 0;
    for (auto& x : v) {
        Int a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

// Hensel lift a factorization f = g*h (mod p) to mod p^k, f,g,h in Z[x],
// g monic mod-p-wise, gcd(g,h)=1 mod p. Returns lifted (g, h) mod p^e >= bound.
namespace detail {

inline ZPolyV zpoly_mod(const ZPolyV& a, const Int& m) {
    ZPolyV r = a;
    for (auto& x : r) x = mod_int(x, m);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}
inline ZPolyV zpoly_mul(const ZPolyV& a, const ZPolyV& b) {
    if (a.empty() || b.empty()) return {};
    ZPolyV r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}
inline ZPolyV zpoly_sub(const ZPolyV& a, const ZPolyV& b) {
    ZPolyV r = a;
    if (b.size() > r.size()) r.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}
inline ZPolyV zpoly_add(const ZPolyV& a, const ZPolyV& b) {
    ZPolyV r = a;
    if (b.size() > r.size()) r.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}
// divrem mod m by a monic divisor
inline std::pair<ZPolyV, ZPolyV> zpoly_divrem_monic(ZPolyV a, const ZPolyV& b, const Int& m) {
    ZPolyV q;
    int db = (int)b.size() - 1;
    a = zpoly_mod(a, m);
    if ((int)a.size() - 1 < db) return {q, a};
    q.assign(a.size() - db, Int(0));
    while ((int)a.size() - 1 >= db && !a.empty()) {
        int k = (int)a.size() - 1 - db;
        Int t = a.back();
        q[k] = t;
        for (int i = 0; i <= db; ++i)
            a[i + k] = mod_int(a[i + k] - t * b[i], m);
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    return {q, a};
}

// Quadratic Hensel step: F == G*H mod m with G,H monic and
// s*G + t*H == 1 mod m; updates everything to hold mod m^2.
inline void hensel_step(const ZPolyV& F, ZPolyV& G, ZPolyV& H,
                        ZPolyV& s, ZPolyV& t, const Int& m) {
    Int m2 = m * m;
    auto md = [&](const ZPolyV& v) { return zpoly_mod(v, m2); };
    ZPolyV e = md(zpoly_sub(F, zpoly_mul(G, H)));
    auto [Q, R] = zpoly_divrem_monic(md(zpoly_mul(s, e)), H, m2);
    ZPolyV Gn = md(zpoly_add(zpoly_add(G, zpoly_mul(t, e)), zpoly_mul(Q, G)));
    ZPolyV Hn = md(zpoly_add(H, R));
    ZPolyV b = md(zpoly_sub(zpoly_add(zpoly_mul(s, Gn), zpoly_mul(t, Hn)), {Int(1)}));
    auto [c, d] = zpoly_divrem_monic(md(zpoly_mul(s, b)), Hn, m2);
    ZPolyV sn = md(zpoly_sub(s, d));
    ZPolyV tn = md(zpoly_sub(t, zpoly_add(zpoly_mul(t, b), zpoly_mul(c, Gn))));
    G = Gn; H = Hn; s = sn; t = tn;
}

// Lift the factorization F == prod(factors) mod p (all monic, F monic mod pk)
// to mod pk, recursively pairing the list into halves.
inline void hensel_lift_list(const ZPolyV& F, std::vector<ZPolyV>& factors,
                             size_t lo, size_t hi, std::uint64_t p, const Int& pk) {
    if (hi - lo <= 1) {
        factors[lo] = zpoly_mod(F, pk);
        return;
    }
    size_t mid = (lo + hi) / 2;
    Int P((unsigned long)p);
    ZPolyV G = {Int(1)}, H = {Int(1)};
    for (size_t i = lo; i < mid; ++i) G = zpoly_mod(zpoly_mul(G, factors[i]), P);
    for (size_t i = mid; i < hi; ++i) H = zpoly_mod(zpoly_mul(H, factors[i]), P);
    // Bezout for (G, H) mod p
    FpField Kp(p);
    Poly<FpField> Gp, Hp;
    for (auto& x : G) Gp.c.push_back(Kp.from_mpz(x));
    Gp.trim(Kp);
    for (auto& x : H) Hp.c.push_back(Kp.from_mpz(x));
    Hp.trim(Kp);
    auto [g0, u, v] = poly_xgcd(Kp, Gp, Hp);
    if (g0.deg() != 0) throw std::logic_error("hensel_lift_list: factors not coprime");
    ZPolyV s, t;
    for (auto& c : u.c) s.push_back(Int((unsigned long)c));
    for (auto& c : v.c) t.push_back(Int((unsigned long)c));
    Int m = P;
    while (m < pk) {
        hensel_step(zpoly_mod(F, m * m), G, H, s, t, m);
        m = m * m;
    }
    G = zpoly_mod(G, pk);
    H = zpoly_mod(H, pk);
    hensel_lift_list(G, factors, lo, mid, p, pk);
    hensel_lift_list(H, factors, mid, hi, p, pk);
}

} // namespace detail

// Factor a squarefree primitive integer polynomial (lc > 0). Returns the
// irreducible integer factors (primitive, lc > 0).
inline std::vector<ZPolyV> zpoly_factor_squarefree(const ZPolyV& f) {
    using namespace detail;
    int n = (int)f.size() - 1;
    std::vector<ZPolyV> out;
    if (n <= 0) return out;
    if (n == 1) { out.push_back(f); return out; }

    // choose a prime not dividing lc(f) with f squarefree mod p
    std::uint64_t p = 3;
    FpField K(2);
    std::vector<std::pair<Poly<FpField>, int>> fac;
    for (;; p += 2) {
        if (!is_prime_u64(p)) continue;
        if (mod_int(f.back(), Int((unsigned long)p)) == 0) continue;
        K = FpField(p);
        Poly<FpField> fp;
        for (auto& x : f) fp.c.push_back(K.from_mpz(x));
        fp.trim(K);
        auto d = poly_derivative(K, fp);
        if (d.is_zero()) continue;
        if (poly_gcd(K, fp, d).deg() != 0) continue;
        fac = poly_factor(K, fp);
        break;
    }
    if (fac.size() == 1) { out.push_back(f); return out; }

    // Mignotte-style bound on factor coefficients, times lc
    Int B = zpoly_maxnorm(f);
    Int bound = (Int(1) << (unsigned)(n + 1)) * B * abs(f.back()) * 2 + 1;
    Int pk = Int((unsigned long)p);
    unsigned e = 1;
    while (pk < bound) { pk *= Int((unsigned long)p); ++e; }

    // Hensel lift all modular factors to mod pk against the monic image of f.
    std::vector<ZPolyV> lifted;
    for (auto& [g, m] : fac) {
        (void)m;
        ZPolyV v;
        for (auto& c : g.c) v.push_back(Int((unsigned long)c));
        lifted.push_back(v);
    }
    {
        Int lcinv = invmod(f.back(), pk);
        ZPolyV F = f;
        for (auto& x : F) x = mod_int(x * lcinv, pk);
        detail::hensel_lift_list(F, lifted, 0, lifted.size(), p, pk);
    }

    // recombination by subsets
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) alive[i] = (int)i;
    ZPolyV rem = f;
    auto centered = [&](Int x) {
        x = mod_int(x, pk);
        if (2 * x > pk) x -= pk;
        return x;
    };
    int setsize = 1;
    while ((int)alive.size() > 0 && setsize <= (int)alive.size()) {
        bool found = false;
        // iterate over subsets of size setsize (indices into alive)
        std::vector<int> idx(setsize);
        for (int i = 0; i < setsize; ++i) idx[i] = i;
        for (;;) {
            // candidate = lc(rem) * prod of chosen factors, centered mod pk
            ZPolyV cand = {rem.back()};
            for (int i : idx) cand = detail::zpoly_mod(detail::zpoly_mul(cand, lifted[alive[i]]), pk);
            for (auto& x : cand) x = centered(x);
            // primitive part
            Int g = 0;
            for (auto& x : cand) g = gcd_int(g, x);
            if (g == 0) g = 1;
            if (!cand.empty() && cand.back() < 0) g = -g;
            for (auto& x : cand) x /= g;
            // trial divide rem by cand over Q
            QField Q;
            auto qc = qpoly_from_int(cand), qr = qpoly_from_int(rem);
            if (qc.deg() >= 1) {
                auto [quo, r2] = poly_divrem(Q, qr, qc);
                if (r2.is_zero()) {
                    out.push_back(cand);
                    auto [cc, prim] = qpoly_primitive(quo);
                    (void)cc;
                    rem = prim;
                    // remove used indices
                    std::vector<int> keep;
                    for (size_t i = 0, k = 0; i < alive.size(); ++i) {
                        if (k < idx.size() && (int)i == idx[k]) { ++k; continue; }
                        keep.push_back(alive[i]);
                    }
                    alive = keep;
                    found = true;
                    break;
                }
            }
            // next subset
            int i = setsize - 1;
            while (i >= 0 && idx[i] == (int)alive.size() - setsize + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < setsize; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++setsize;
        if ((int)rem.size() - 1 == 0) break;
    }
    if ((int)rem.size() - 1 > 0) out.push_back(rem);
    return out;
}

// Full factorization over Q: returns (monic irreducible QPoly, multiplicity)
// and the leading content is discarded (callers only need the factors).
inline std::vector<std::pair<QPoly, int>> qpoly_factor(const QPoly& f) {
    QField Q;
    std::vector<std::pair<QPoly, int>> out;
    if (f.deg() <= 0) return out;
    // squarefree decomposition over Q (char 0: simple Yun)
    QPoly a = f;
    auto da = poly_derivative(Q, a);
    auto g = poly_gcd(Q, a, da);
    auto w = poly_divrem(Q, a, g).first;
    int mult = 1;
    std::vector<std::pair<QPoly, int>> sqf;
    while (w.deg() > 0) {
        auto y = poly_gcd(Q, w, g);
        auto fac = poly_divrem(Q, w, y).first;
        if (fac.deg() > 0) sqf.push_back({fac, mult});
        w = y;
        g = poly_divrem(Q, g, y).first;
        ++mult;
    }
    for (auto& [sf, m] : sqf) {
        auto [c, prim] = qpoly_primitive(sf);
        (void)c;
        for (auto& zf : zpoly_factor_squarefree(prim))
            out.push_back({poly_monic(Q, qpoly_from_int(zf)), m});
    }
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        if (x.first.deg() != y.first.deg()) return x.first.deg() < y.first.deg();
        return poly_to_string(Q, x.first) < poly_to_string(Q, y.first);
    });
    return out;
}

inline std::vector<std::pair<Rat, int>> qpoly_roots(const QPoly& f) {
    std::vector<std::pair<Rat, int>> out;
    for (auto& [g, m] : qpoly_factor(f))
        if (g.deg() == 1)
            out.push_back({-g.c[0], m});
    return out;
}

} // namespace ag
