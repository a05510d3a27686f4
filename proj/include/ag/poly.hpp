#pragma once
// Dense univariate polynomials over a field handle.

#include <vector>
#include <stdexcept>
#include <string>

#include "ag/rings.hpp"

namespace ag {

template <class F>
struct Poly {
    using Elt = typename F::Elt;
    std::vector<Elt> c; // c[i] is the coefficient of x^i; no trailing zeros

    Poly() = default;
    explicit Poly(std::vector<Elt> cc) : c(std::move(cc)) {}

    int deg() const { return (int)c.size() - 1; } // deg(0) == -1
    bool is_zero() const { return c.empty(); }

    static Poly zero() { return Poly(); }

    void trim(const F& K) {
        while (!c.empty() && K.is_zero(c.back())) c.pop_back();
    }
    Elt coeff(const F& K, int i) const {
        return (i >= 0 && i < (int)c.size()) ? c[i] : K.zero();
    }
    Elt lc(const F& K) const {
        if (c.empty()) throw std::domain_error("Poly::lc of zero");
        (void)K;
        return c.back();
    }
};

template <class F> Poly<F> poly_const(const F& K, typename F::Elt a) {
    Poly<F> r;
    if (!K.is_zero(a)) r.c.push_back(a);
    return r;
}
template <class F> Poly<F> poly_x(const F& K) {
    Poly<F> r; r.c = {K.zero(), K.one()}; return r;
}
template <class F> Poly<F> poly_one(const F& K) { return poly_const(K, K.one()); }

template <class F> bool poly_eq(const F& K, const Poly<F>& a, const Poly<F>& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!K.eq(a.c[i], b.c[i])) return false;
    return true;
}

template <class F> Poly<F> poly_add(const F& K, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    size_t n = std::max(a.c.size(), b.c.size());
    r.c.resize(n, K.zero());
    for (size_t i = 0; i < n; ++i)
        r.c[i] = K.add(a.coeff(K, (int)i), b.coeff(K, (int)i));
    r.trim(K);
    return r;
}

template <class F> Poly<F> poly_neg(const F& K, const Poly<F>& a) {
    Poly<F> r = a;
    for (auto& x : r.c) x = K.neg(x);
    return r;
}

template <class F> Poly<F> poly_sub(const F& K, const Poly<F>& a, const Poly<F>& b) {
    return poly_add(K, a, poly_neg(K, b));
}

template <class F> Poly<F> poly_mul(const F& K, const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<F>();
    Poly<F> r;
    r.c.assign(a.c.size() + b.c.size() - 1, K.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (K.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = K.add(r.c[i + j], K.mul(a.c[i], b.c[j]));
    }
    r.trim(K);
    return r;
}

template <class F> Poly<F> poly_scale(const F& K, const Poly<F>& a, typename F::Elt s) {
    Poly<F> r = a;
    for (auto& x : r.c) x = K.mul(x, s);
    r.trim(K);
    return r;
}

// Multiply by x^k.
template <class F> Poly<F> poly_shift(const F& K, const Poly<F>& a, int k) {
    (void)K;
    if (a.is_zero() || k == 0) return a;
    Poly<F> r;
    r.c.assign(a.c.size() + k, a.c[0]);
    for (int i = 0; i < k; ++i) r.c[i] = K.zero();
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i + k] = a.c[i];
    return r;
}

template <class F>
std::pair<Poly<F>, Poly<F>> poly_divrem(const F& K, Poly<F> a, const Poly<F>& b) {
    if (b.is_zero()) throw std::domain_error("poly_divrem: division by zero poly");
    Poly<F> q;
    int db = b.deg();
    if (a.deg() < db) return {q, a};
    q.c.assign(a.deg() - db + 1, K.zero());
    auto binv = K.inv(b.c.back());
    while (a.deg() >= db) {
        int k = a.deg() - db;
        auto t = K.mul(a.c.back(), binv);
        q.c[k] = t;
        for (int i = 0; i <= db; ++i)
            a.c[i + k] = K.sub(a.c[i + k], K.mul(t, b.c[i]));
        a.trim(K);
        if (a.is_zero()) break;
    }
    q.trim(K);
    return {q, a};
}

template <class F> Poly<F> poly_mod(const F& K, const Poly<F>& a, const Poly<F>& b) {
    return poly_divrem(K, a, b).second;
}

template <class F> Poly<F> poly_monic(const F& K, const Poly<F>& a) {
    if (a.is_zero()) return a;
    return poly_scale(K, a, K.inv(a.c.back()));
}

template <class F> Poly<F> poly_gcd(const F& K, Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        auto r = poly_mod(K, a, b);
        a = b; b = r;
    }
    return poly_monic(K, a);
}

// Returns (g, u, v) with u*a + v*b = g, g monic (or zero).
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> poly_xgcd(const F& K, Poly<F> a, Poly<F> b) {
    Poly<F> u0 = poly_one(K), v0, u1, v1 = poly_one(K);
    while (!b.is_zero()) {
        auto [q, r] = poly_divrem(K, a, b);
        a = b; b = r;
        auto u2 = poly_sub(K, u0, poly_mul(K, q, u1));
        auto v2 = poly_sub(K, v0, poly_mul(K, q, v1));
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    if (!a.is_zero()) {
        auto s = K.inv(a.c.back());
        a = poly_scale(K, a, s);
        u0 = poly_scale(K, u0, s);
        v0 = poly_scale(K, v0, s);
    }
    return {a, u0, v0};
}

template <class F> typename F::Elt poly_eval(const F& K, const Poly<F>& a, typename F::Elt x) {
    auto r = K.zero();
    for (int i = a.deg(); i >= 0; --i)
        r = K.add(K.mul(r, x), a.c[i]);
    return r;
}

// Evaluate with coefficients mapped into another field via `map`.
template <class F, class G, class MapFn>
typename G::Elt poly_eval_map(const F& K, const G& L, const Poly<F>& a,
                              typename G::Elt x, MapFn map) {
    (void)K;
    auto r = L.zero();
    for (int i = a.deg(); i >= 0; --i)
        r = L.add(L.mul(r, x), map(a.c[i]));
    return r;
}

template <class F> Poly<F> poly_derivative(const F& K, const Poly<F>& a) {
    Poly<F> r;
    if (a.deg() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) {
        auto m = K.zero();
        for (size_t j = 0; j < i; ++j) m = K.add(m, a.c[i]); // i * c[i] without from_int
        r.c[i - 1] = m;
    }
    r.trim(K);
    return r;
}

template <class F> Poly<F> poly_pow_mod(const F& K, Poly<F> a, Int e, const Poly<F>& m) {
    Poly<F> r = poly_one(K);
    a = poly_mod(K, a, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mod(K, poly_mul(K, r, a), m);
        a = poly_mod(K, poly_mul(K, a, a), m);
        e >>= 1;
    }
    return r;
}

// Compose a(b(x)).
template <class F> Poly<F> poly_compose(const F& K, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    for (int i = a.deg(); i >= 0; --i)
        r = poly_add(K, poly_mul(K, r, b), poly_const(K, a.c[i]));
    return r;
}

template <class F> std::string poly_to_string(const F& K, const Poly<F>& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (int i = 0; i <= a.deg(); ++i) {
        if (K.is_zero(a.c[i])) continue;
        if (!s.empty()) s += " + ";
        s += K.to_string(a.c[i]);
        if (i > 0) s += "*x^" + std::to_string(i);
    }
    return s;
}

} // namespace ag
