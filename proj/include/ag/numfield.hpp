#pragma once
// Simple number fields Q(theta) = Q[x]/(m), as field handles. Enough for
// verifying points with algebraic coordinates and reducing them modulo
// primes via a chosen root of the minimal polynomial in F_{p^d}.

#include "ag/rings.hpp"
#include "ag/poly.hpp"
#include "ag/qfactor.hpp"
#include "ag/fq.hpp"

namespace ag {

struct NumberField {
    using Elt = Poly<QField>;
    QField Q;
    Poly<QField> minpoly; // monic irreducible over Q
    int d = 1;

    NumberField() = default;
    explicit NumberField(Poly<QField> m) : minpoly(std::move(m)) {
        minpoly = poly_monic(Q, minpoly);
        d = minpoly.deg();
        if (d < 1) throw std::invalid_argument("NumberField: bad minimal polynomial");
    }

    Elt zero() const { return Elt(); }
    Elt one() const { return poly_one(Q); }
    Elt gen() const { return poly_mod(Q, poly_x(Q), minpoly); }
    Elt add(const Elt& a, const Elt& b) const { return poly_add(Q, a, b); }
    Elt sub(const Elt& a, const Elt& b) const { return poly_sub(Q, a, b); }
    Elt neg(const Elt& a) const { return poly_neg(Q, a); }
    Elt mul(const Elt& a, const Elt& b) const {
        return poly_mod(Q, poly_mul(Q, a, b), minpoly);
    }
    Elt inv(const Elt& a) const {
        if (a.is_zero()) throw std::domain_error("NumberField: division by zero");
        auto [g, u, v] = poly_xgcd(Q, a, minpoly);
        (void)v;
        if (g.deg() != 0) throw std::domain_error("NumberField: reducible modulus");
        return poly_mod(Q, u, minpoly);
    }
    Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }
    bool is_zero(const Elt& a) const { return a.is_zero(); }
    bool eq(const Elt& a, const Elt& b) const { return poly_eq(Q, a, b); }
    Elt from_int(long n) const { return poly_const(Q, Rat(n)); }
    Elt from_rat(const Rat& r) const { return poly_const(Q, r); }
    std::string to_string(const Elt& a) const { return poly_to_string(Q, a); }

    // Element from coefficient list c0 + c1*theta + ...
    Elt from_coords(const std::vector<Rat>& cs) const {
        Elt r;
        r.c = cs;
        r.trim(Q);
        return poly_mod(Q, r, minpoly);
    }

    // Reduce into F_{p^d'} given the image of theta there. Denominators must
    // be prime to p.
    FqField::Elt reduce(const FqField& K, const FqField::Elt& theta_bar,
                        const Elt& a) const {
        return poly_eval_map(Q, K, a, theta_bar,
                             [&](const Rat& r) { return K.from_rat(r); });
    }
};

// All roots of a rational polynomial in F_{p^d} (coefficients reduced mod p).
inline std::vector<FqField::Elt> qpoly_roots_in_fq(const FqField& K, const Poly<QField>& f) {
    Poly<FqField> g;
    for (auto& c : f.c) g.c.push_back(K.from_rat(c));
    g.trim(K);
    std::vector<FqField::Elt> out;
    for (auto& [r, m] : poly_roots(K, g)) {
        (void)m;
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        return K.to_string(a) < K.to_string(b);
    });
    return out;
}

} // namespace ag
