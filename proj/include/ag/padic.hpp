#pragma once
// Truncated p-adic arithmetic: Z_q for q = p^d, the unramified extension
// Z_p[t]/(m(t)) with m irreducible mod p, computed modulo p^N with honest
// per-element absolute precision tracking. Elements are integral (no
// negative valuations); dividing by p^k lowers the known precision.

#include "ag/rings.hpp"
#include "ag/poly.hpp"
#include "ag/fq.hpp"
#include "ag/factor_fq.hpp"

namespace ag {

struct ZqElt {
    std::vector<Int> c; // length d, coefficients in [0, p^prec)
    int prec = 0;       // element is known modulo p^prec
};

struct ZqRing {
    std::uint64_t p = 2;
    int d = 1; // residue degree
    int N = 1; // capacity: no element carries more precision than this
    Poly<FpField> modp; // modulus mod p (monic irreducible)
    std::vector<Int> modulus; // monic lift of modp to Z, length d+1
    FqField residue;          // F_{p^d} with the same modulus

    ZqRing() = default;
    ZqRing(std::uint64_t prime, int deg, int cap)
        : p(prime), d(deg), N(cap) {
        FpField fp(prime);
        modp = find_irreducible(fp, deg);
        residue = FqField(fp, modp);
        modulus.assign(d + 1, Int(0));
        for (int i = 0; i <= modp.deg(); ++i)
            modulus[i] = Int((unsigned long)modp.c[i]);
        modulus[d] = 1;
    }

    Int pk(int k) const { return pow_int(Int((unsigned long)p), (unsigned long)std::max(k, 0)); }

    using Elt = ZqElt;

    Elt make(std::vector<Int> cs, int prec) const {
        prec = std::min(prec, N);
        Elt e;
        e.prec = prec;
        e.c.assign(d, Int(0));
        Int m = pk(prec);
        for (int i = 0; i < d && i < (int)cs.size(); ++i) e.c[i] = mod_int(cs[i], m);
        return e;
    }
    Elt zero() const { return make({}, N); }
    Elt one() const { return make({Int(1)}, N); }
    Elt from_int(long n) const { return make({Int(n)}, N); }
    Elt from_mpz(const Int& n) const { return make({n}, N); }
    Elt from_rat(const Rat& r) const {
        Elt num = from_mpz(r.get_num());
        Elt den = from_mpz(r.get_den());
        return mul(num, inv(den));
    }
    // t-adic generator of the extension
    Elt gen() const { return make({Int(0), Int(1)}, N); }

    bool is_zero(const Elt& a) const {
        for (auto& x : a.c) if (x != 0) return false;
        return true; // zero to known precision
    }
    bool eq(const Elt& a, const Elt& b) const { return is_zero(sub(a, b)); }

    Elt add(const Elt& a, const Elt& b) const {
        int prec = std::min(a.prec, b.prec);
        Elt r;
        r.prec = prec;
        r.c.assign(d, Int(0));
        Int m = pk(prec);
        for (int i = 0; i < d; ++i) r.c[i] = mod_int(a.c[i] + b.c[i], m);
        return r;
    }
    Elt neg(const Elt& a) const {
        Elt r = a;
        Int m = pk(a.prec);
        for (auto& x : r.c) x = mod_int(-x, m);
        return r;
    }
    Elt sub(const Elt& a, const Elt& b) const { return add(a, neg(b)); }

    Elt mul(const Elt& a, const Elt& b) const {
        int prec = std::min(a.prec, b.prec);
        Int m = pk(prec);
        std::vector<Int> t(2 * d - 1, Int(0));
        for (int i = 0; i < d; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; j < d; ++j)
                t[i + j] += a.c[i] * b.c[j];
        }
        // reduce modulo the monic modulus
        for (int k = 2 * d - 2; k >= d; --k) {
            if (t[k] == 0) continue;
            Int q = t[k];
            for (int i = 0; i < d; ++i) t[k - d + i] -= q * modulus[i];
            t[k] = 0;
        }
        Elt r;
        r.prec = prec;
        r.c.assign(d, Int(0));
        for (int i = 0; i < d; ++i) r.c[i] = mod_int(t[i], m);
        return r;
    }

    // p-adic valuation (capped at the precision of the element).
    int val(const Elt& a) const {
        int v = a.prec;
        for (auto& x : a.c) {
            if (x == 0) continue;
            Int y = x;
            int w = 0;
            while (w < v && mpz_divisible_ui_p(y.get_mpz_t(), (unsigned long)p)) {
                y /= Int((unsigned long)p);
                ++w;
            }
            v = std::min(v, w);
            if (v == 0) break;
        }
        return v;
    }

    // Exact division by p^k. Valuation of a must be >= k; precision drops by k.
    Elt div_pow_p(const Elt& a, int k) const {
        if (k == 0) return a;
        if (val(a) < k) throw std::domain_error("ZqRing: division by p^k of a unit part");
        Elt r;
        r.prec = a.prec - k;
        if (r.prec <= 0) throw std::domain_error("ZqRing: precision exhausted");
        Int q = pk(k), m = pk(r.prec);
        r.c.assign(d, Int(0));
        for (int i = 0; i < d; ++i) r.c[i] = mod_int(a.c[i] / q, m);
        return r;
    }

    FqField::Elt residue_of(const Elt& a) const {
        Poly<FpField> r;
        r.c.resize(d);
        for (int i = 0; i < d; ++i)
            r.c[i] = (FpField::Elt)mod_int(a.c[i], Int((unsigned long)p)).get_ui();
        r.trim(residue.base);
        return r;
    }

    Elt lift_residue(const FqField::Elt& a) const {
        std::vector<Int> cs;
        for (auto& x : a.c) cs.push_back(Int((unsigned long)x));
        return make(cs, N);
    }

    // Inverse of a unit via Newton iteration x -> x(2 - ax).
    Elt inv(const Elt& a) const {
        if (val(a) != 0) throw std::domain_error("ZqRing::inv: not a unit");
        Elt x = lift_residue(residue.inv(residue_of(a)));
        x.prec = a.prec;
        // re-truncate x to full target precision as starting point
        x = make(x.c, a.prec);
        int have = 1;
        while (have < a.prec) {
            x = sub(add(x, x), mul(a, mul(x, x)));
            have *= 2;
        }
        return x;
    }
    Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }

    // Square root of a unit whose residue is a square (p odd).
    Elt sqrt_unit(const Elt& a) const {
        if (p == 2) throw std::domain_error("ZqRing::sqrt_unit: p=2 unsupported");
        if (val(a) != 0) throw std::domain_error("ZqRing::sqrt_unit: not a unit");
        Elt x = lift_residue(residue.sqrt(residue_of(a)));
        x = make(x.c, a.prec);
        Elt half = inv(from_int(2));
        int have = 1;
        while (have < a.prec) {
            x = mul(half, add(x, div(a, x)));
            have *= 2;
        }
        return x;
    }

    std::string to_string(const Elt& a) const {
        std::string s = "(";
        for (int i = 0; i < d; ++i) {
            if (i) s += ", ";
            s += a.c[i].get_str();
        }
        s += ") + O(p^" + std::to_string(a.prec) + ")";
        return s;
    }
};

} // namespace ag
