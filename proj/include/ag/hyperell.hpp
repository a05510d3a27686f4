#pragma once
// Function-field machinery for hyperelliptic curves y^2 = f(x) over an exact
// field, with deg f = 2g+1 (one ramified place at infinity) or 2g+2 with
// square leading coefficient (two rational places at infinity).
//
// Places are closed points: finite ones sit above a monic irreducible u(x)
// and are split (y = v mod u), ramified (u | f), or inert (f a non-square
// mod u); infinite ones are inf+, inf-, or the ramified infinite place.
//
// On top of places we provide exact valuations of functions (a + b*y)/c,
// Riemann-Roch spaces L(D) by linear algebra on valuation conditions, and
// principal divisors via norm factorization. These are the primitives the
// divisor class group engine builds on.

#include "ag/poly.hpp"
#include "ag/series.hpp"
#include "ag/rings.hpp"
#include "ag/fp.hpp"
#include "ag/fq.hpp"
#include "ag/factor_fq.hpp"
#include "ag/qfactor.hpp"
#include "ag/linalg.hpp"
#include <map>
#include <sstream>

namespace ag {

// Inverse of a modulo m in F[x] (requires gcd(a, m) = 1).
template <class F>
Poly<F> poly_invmod(const F& K, const Poly<F>& a, const Poly<F>& m) {
    auto [g, u, v] = poly_xgcd(K, poly_mod(K, a, m), m);
    (void)v;
    if (g.deg() != 0) throw std::domain_error("poly_invmod: not invertible");
    return poly_mod(K, u, m);
}

// u-adic valuation of a polynomial (number of times u divides it).
template <class F>
int poly_val_u(const F& K, Poly<F> a, const Poly<F>& u, int cap = 1 << 20) {
    if (a.is_zero()) return cap;
    int v = 0;
    while (v < cap) {
        auto [q, r] = poly_divrem(K, a, u);
        if (!r.is_zero()) break;
        a = q;
        ++v;
        if (a.is_zero()) break;
    }
    return v;
}

enum class HK { FinSplit, FinRam, FinInert, InfPlus, InfMinus, InfRam };

template <class F>
struct HPlace {
    HK kind = HK::FinSplit;
    Poly<F> u; // finite places: monic irreducible
    Poly<F> v; // FinSplit only: y = v (mod u), deg v < deg u

    int degree() const {
        switch (kind) {
            case HK::FinSplit: return u.deg();
            case HK::FinRam: return u.deg();
            case HK::FinInert: return 2 * u.deg();
            default: return 1;
        }
    }
    bool finite() const {
        return kind == HK::FinSplit || kind == HK::FinRam || kind == HK::FinInert;
    }
    // ramification index of u (or of 1/x at infinity) at this place
    int e() const {
        switch (kind) {
            case HK::FinRam: return 2;
            case HK::InfRam: return 2;
            default: return 1;
        }
    }
    std::string key(const F& K) const {
        std::ostringstream os;
        switch (kind) {
            case HK::FinSplit: os << "S[" << poly_to_string(K, u) << ";" << poly_to_string(K, v) << "]"; break;
            case HK::FinRam: os << "R[" << poly_to_string(K, u) << "]"; break;
            case HK::FinInert: os << "I[" << poly_to_string(K, u) << "]"; break;
            case HK::InfPlus: os << "inf+"; break;
            case HK::InfMinus: os << "inf-"; break;
            case HK::InfRam: os << "inf"; break;
        }
        return os.str();
    }
};

template <class F>
struct HDivisor {
    // key -> (place, multiplicity)
    std::map<std::string, std::pair<HPlace<F>, int>> m;

    void add(const F& K, const HPlace<F>& p, int mult) {
        if (mult == 0) return;
        auto k = p.key(K);
        auto it = m.find(k);
        if (it == m.end()) m.emplace(k, std::make_pair(p, mult));
        else {
            it->second.second += mult;
            if (it->second.second == 0) m.erase(it);
        }
    }
    void add_divisor(const F& K, const HDivisor& d, int scale = 1) {
        for (auto& [k, pm] : d.m) add(K, pm.first, pm.second * scale);
    }
    int degree() const {
        int d = 0;
        for (auto& [k, pm] : m) d += pm.first.degree() * pm.second;
        return d;
    }
    bool effective() const {
        for (auto& [k, pm] : m)
            if (pm.second < 0) return false;
        return true;
    }
    bool empty() const { return m.empty(); }
    std::string key(const F& K) const {
        (void)K;
        std::ostringstream os;
        for (auto& [k, pm] : m) os << k << "*" << pm.second << "|";
        return os.str();
    }
};

// Function (a(x) + b(x) y) / c(x).
template <class F>
struct HFun {
    Poly<F> a, b, c;
};

template <class F>
struct HypCurve {
    F K;
    Poly<F> f;
    int genus = 0;
    bool even = false; // deg f == 2g + 2
    typename F::Elt lc_sqrt{}; // even case: sqrt of leading coefficient

    HypCurve() = default;
    HypCurve(F k, Poly<F> ff) : K(k), f(std::move(ff)) {
        int d = f.deg();
        if (d < 3) throw std::invalid_argument("HypCurve: degree too small");
        even = (d % 2 == 0);
        genus = even ? (d - 2) / 2 : (d - 1) / 2;
        if (even) lc_sqrt = field_sqrt(K, f.c.back());
    }

    static typename F::Elt field_sqrt(const F& K, const typename F::Elt& a);

    HPlace<F> inf_plus() const {
        HPlace<F> p;
        p.kind = even ? HK::InfPlus : HK::InfRam;
        return p;
    }
    HPlace<F> inf_minus() const {
        HPlace<F> p;
        p.kind = even ? HK::InfMinus : HK::InfRam;
        return p;
    }
    // degree-2 divisor above infinity (inf+ + inf- or 2*inf)
    HDivisor<F> inf_divisor() const {
        HDivisor<F> d;
        if (even) {
            d.add(K, inf_plus(), 1);
            d.add(K, inf_minus(), 1);
        } else {
            d.add(K, inf_plus(), 2);
        }
        return d;
    }

    HPlace<F> place_of_point(const typename F::Elt& x0, const typename F::Elt& y0) const {
        HPlace<F> p;
        p.u = poly_sub(K, poly_x(K), poly_const(K, x0));
        if (K.is_zero(y0)) {
            p.kind = HK::FinRam;
        } else {
            p.kind = HK::FinSplit;
            p.v = poly_const(K, y0);
        }
        return p;
    }

    // Split place from (u, v) data, v^2 = f mod u (validated).
    HPlace<F> place_split(const Poly<F>& u, const Poly<F>& v) const {
        auto chk = poly_mod(K, poly_sub(K, poly_mul(K, v, v), f), u);
        if (!chk.is_zero()) throw std::invalid_argument("place_split: v^2 != f mod u");
        HPlace<F> p;
        p.kind = HK::FinSplit;
        p.u = poly_monic(K, u);
        p.v = poly_mod(K, v, p.u);
        if (p.v.is_zero()) p.kind = HK::FinRam;
        return p;
    }
    HPlace<F> place_ramified(const Poly<F>& u) const {
        auto r = poly_mod(K, f, u);
        if (!r.is_zero()) throw std::invalid_argument("place_ramified: u does not divide f");
        HPlace<F> p;
        p.kind = HK::FinRam;
        p.u = poly_monic(K, u);
        return p;
    }
    HPlace<F> conjugate(const HPlace<F>& p) const {
        HPlace<F> q = p;
        if (p.kind == HK::FinSplit) q.v = poly_neg(K, p.v);
        else if (p.kind == HK::InfPlus) q.kind = HK::InfMinus;
        else if (p.kind == HK::InfMinus) q.kind = HK::InfPlus;
        return q;
    }

    // Lift v to V with V^2 = f (mod u^k), assuming unramified split data.
    Poly<F> lift_y(const Poly<F>& u, const Poly<F>& v, int k) const {
        Poly<F> V = v;
        int have = 1;
        Poly<F> ucur = u;
        while (have < k) {
            have = std::min(2 * have, k);
            Poly<F> um = poly_one(K);
            for (int i = 0; i < have; ++i) um = poly_mul(K, um, u);
            ucur = um;
            // V -= (V^2 - f) / (2V) mod u^have
            auto num = poly_mod(K, poly_sub(K, poly_mul(K, V, V), f), um);
            auto den = poly_invmod(K, poly_add(K, V, V), um);
            V = poly_mod(K, poly_sub(K, V, poly_mul(K, num, den)), um);
        }
        return V;
    }

    // Valuation of a + b*y at a finite place.
    int ord_finite(const HPlace<F>& P, const Poly<F>& a, const Poly<F>& b) const {
        if (a.is_zero() && b.is_zero())
            throw std::domain_error("ord of zero function");
        const int CAP = 1 << 20;
        switch (P.kind) {
            case HK::FinRam: {
                int va = a.is_zero() ? CAP : 2 * poly_val_u(K, a, P.u);
                int vb = b.is_zero() ? CAP : 2 * poly_val_u(K, b, P.u) + 1;
                return std::min(va, vb);
            }
            case HK::FinInert: {
                int va = a.is_zero() ? CAP : poly_val_u(K, a, P.u);
                int vb = b.is_zero() ? CAP : poly_val_u(K, b, P.u);
                return std::min(va, vb);
            }
            case HK::FinSplit: {
                if (b.is_zero()) return poly_val_u(K, a, P.u);
                // bound: val_P + val_Pbar = val_u(norm)
                auto norm = poly_sub(K, poly_mul(K, a, a),
                                     poly_mul(K, poly_mul(K, b, b), f));
                if (norm.is_zero()) {
                    // a = +-b*y impossible unless y rational; treat via direct cap
                    throw std::domain_error("ord_finite: degenerate norm");
                }
                int m = poly_val_u(K, norm, P.u);
                if (m == 0) return 0;
                auto V = lift_y(P.u, P.v, m + 1);
                Poly<F> um = poly_one(K);
                for (int i = 0; i < m + 1; ++i) um = poly_mul(K, um, P.u);
                auto g = poly_mod(K, poly_add(K, a, poly_mul(K, b, V)), um);
                int w = g.is_zero() ? m : std::min(poly_val_u(K, g, P.u, m + 1), m);
                return w;
            }
            default:
                throw std::logic_error("ord_finite: infinite place");
        }
    }

    // Expansion data at a split infinite place: series in t = 1/x of
    // a(1/t) + b(1/t) * (+-) S(t) / t^(g+1), where S = sqrt(t^(2g+2) f(1/t)).
    Series<F> expand_at_infinity(const Poly<F>& a, const Poly<F>& b, bool plus,
                                 int prec) const {
        // f*(t) = t^(2g+2) f(1/t): coefficients reversed into degree 2g+2
        int D = 2 * genus + 2;
        int extra = std::max({a.deg(), b.deg(), 0});
        std::vector<typename F::Elt> fs(D + 1, K.zero());
        for (int i = 0; i <= f.deg(); ++i) fs[D - i] = f.c[i];
        auto fstar = series_make(K, 0, fs, prec + D + 2 + extra);
        auto S = series_sqrt(K, fstar, plus ? lc_sqrt : K.neg(lc_sqrt));
        Series<F> res = series_zero(K, prec);
        if (!a.is_zero()) {
            std::vector<typename F::Elt> cs(a.c.rbegin(), a.c.rend());
            res = series_add(K, res, series_make(K, -a.deg(), cs, prec));
        }
        if (!b.is_zero()) {
            std::vector<typename F::Elt> cs(b.c.rbegin(), b.c.rend());
            auto B = series_make(K, -b.deg(), cs, prec + genus + 1 + b.deg() + extra + 2);
            auto By = series_mul(K, B, series_shift(K, S, -(genus + 1)));
            res = series_add(K, res, series_truncate(K, By, prec));
        }
        return res;
    }

    int ord_infinite(const HPlace<F>& P, const Poly<F>& a, const Poly<F>& b) const {
        if (a.is_zero() && b.is_zero())
            throw std::domain_error("ord of zero function");
        const int CAP = 1 << 20;
        if (P.kind == HK::InfRam) {
            int va = a.is_zero() ? CAP : -2 * a.deg();
            int vb = b.is_zero() ? CAP : -2 * b.deg() - (2 * genus + 1);
            return std::min(va, vb);
        }
        // split infinity: series expansion; valuations of the two parts can
        // cancel, so expand far enough that the result is provably correct:
        // ord <= deg(norm at infinity) bound
        int bound = 2 * (std::max(a.deg(), 0) + std::max(b.deg(), 0) + 2 * genus + 4);
        auto s = expand_at_infinity(a, b, P.kind == HK::InfPlus, bound);
        if (s.is_zero())
            throw std::logic_error("ord_infinite: expansion vanished to precision");
        return s.val;
    }

    int ord(const HPlace<F>& P, const HFun<F>& h) const {
        int w = P.finite() ? ord_finite(P, h.a, h.b) : ord_infinite(P, h.a, h.b);
        if (!h.c.is_zero() && h.c.deg() >= 0) {
            if (P.finite()) {
                int vc = poly_val_u(K, h.c, P.u);
                w -= vc * P.e();
            } else {
                w += P.e() * h.c.deg();
            }
        }
        return w;
    }

    // ---- Riemann-Roch ----
    // Basis of L(D) = { h : div(h) >= -D }, as functions (a + b y)/c.
    std::vector<HFun<F>> rr_basis(const HDivisor<F>& D) const {
        // denominator clearing finite poles
        std::map<std::string, std::pair<Poly<F>, int>> upow; // u-key -> (u, k)
        for (auto& [k, pm] : D.m) {
            auto& P = pm.first;
            int n = pm.second;
            if (!P.finite() || n <= 0) continue;
            int need = (n + P.e() - 1) / P.e();
            auto uk = poly_to_string(K, P.u);
            auto it = upow.find(uk);
            if (it == upow.end()) upow.emplace(uk, std::make_pair(P.u, need));
            else it->second.second = std::max(it->second.second, need);
        }
        Poly<F> c = poly_one(K);
        for (auto& [k, un] : upow)
            for (int i = 0; i < un.second; ++i) c = poly_mul(K, c, un.first);

        int n_plus = 0, n_minus = 0; // allowed pole orders at infinity
        for (auto& [k, pm] : D.m) {
            if (pm.first.kind == HK::InfPlus) n_plus = pm.second;
            if (pm.first.kind == HK::InfMinus) n_minus = pm.second;
            if (pm.first.kind == HK::InfRam) n_plus = pm.second;
        }

        int A, B;
        if (even) {
            int M = std::max({n_plus, n_minus, 0});
            A = c.deg() + M;
            B = A - (genus + 1);
        } else {
            // deg a <= deg c + M/2, deg b <= (2 deg c + M - (2g+1)) / 2
            int M = std::max(n_plus, 0);
            A = c.deg() + M / 2;
            int num = 2 * c.deg() + M - (2 * genus + 1);
            B = num >= 0 ? num / 2 : -((-num + 1) / 2);
        }
        if (A < 0 && B < 0) return {};
        int na = std::max(A + 1, 0), nb = std::max(B + 1, 0);
        int nvars = na + nb;
        if (nvars == 0) return {};

        // collect all constraint places: supp(D) plus every place above u | c
        std::map<std::string, std::pair<HPlace<F>, int>> constraints; // place -> required min val of a+by
        auto add_constraint = [&](const HPlace<F>& P) {
            int n = 0;
            auto it = D.m.find(P.key(K));
            if (it != D.m.end()) n = it->second.second;
            int valc = 0;
            if (P.finite() && !c.is_zero())
                valc = poly_val_u(K, c, P.u) * P.e();
            if (P.finite()) {
                int need = valc - n;
                if (need > 0) constraints[P.key(K)] = {P, need};
            } else {
                // at infinity c contributes poles of order e*deg c
                constraints[P.key(K)] = {P, -P.e() * c.deg() - n};
            }
        };
        // every place above each u | c is either in supp(D) or the conjugate
        // of a split place in supp(D), so no factorization is needed here
        for (auto& [k, pm] : D.m) {
            add_constraint(pm.first);
            if (pm.first.kind == HK::FinSplit) add_constraint(conjugate(pm.first));
        }
        // infinite places always constrained (degree bounds are generous)
        add_constraint(inf_plus());
        if (even) add_constraint(inf_minus());

        // build the linear system over K
        std::vector<std::vector<typename F::Elt>> rows;
        auto add_row = [&](std::vector<typename F::Elt> r) { rows.push_back(std::move(r)); };

        for (auto& [key, pn] : constraints) {
            auto& P = pn.first;
            int m = pn.second;
            if (P.finite()) {
                if (m <= 0) continue;
                if (P.kind == HK::FinSplit) {
                    // (a + b V) = 0 mod u^m
                    Poly<F> um = poly_one(K);
                    for (int i = 0; i < m; ++i) um = poly_mul(K, um, P.u);
                    auto V = lift_y(P.u, P.v, m);
                    int ncond = um.deg();
                    std::vector<std::vector<typename F::Elt>> cols(nvars);
                    Poly<F> xi = poly_one(K);
                    for (int i = 0; i < na; ++i) {
                        auto r = poly_mod(K, xi, um);
                        std::vector<typename F::Elt> col(ncond, K.zero());
                        for (int j = 0; j <= r.deg(); ++j) col[j] = r.c[j];
                        cols[i] = col;
                        xi = poly_mul(K, xi, poly_x(K));
                    }
                    Poly<F> xjv = poly_mod(K, V, um);
                    for (int j = 0; j < nb; ++j) {
                        auto r = xjv;
                        std::vector<typename F::Elt> col(ncond, K.zero());
                        for (int t = 0; t <= r.deg(); ++t) col[t] = r.c[t];
                        cols[na + j] = col;
                        xjv = poly_mod(K, poly_mul(K, xjv, poly_x(K)), um);
                    }
                    for (int cnd = 0; cnd < ncond; ++cnd) {
                        std::vector<typename F::Elt> row(nvars, K.zero());
                        for (int vidx = 0; vidx < nvars; ++vidx) row[vidx] = cols[vidx][cnd];
                        add_row(std::move(row));
                    }
                } else {
                    // ramified: u^ceil(m/2) | a, u^ceil((m-1)/2) | b
                    // inert: u^m | a, u^m | b
                    int ka, kb;
                    if (P.kind == HK::FinRam) {
                        ka = (m + 1) / 2;
                        kb = m > 0 ? m / 2 : 0;
                    } else {
                        ka = m;
                        kb = m;
                    }
                    auto mod_cols = [&](int k, int offset, int count) {
                        if (k <= 0) return;
                        Poly<F> um = poly_one(K);
                        for (int i = 0; i < k; ++i) um = poly_mul(K, um, P.u);
                        int ncond = um.deg();
                        Poly<F> xi = poly_one(K);
                        std::vector<std::vector<typename F::Elt>> cols(count);
                        for (int i = 0; i < count; ++i) {
                            auto r = poly_mod(K, xi, um);
                            std::vector<typename F::Elt> col(ncond, K.zero());
                            for (int j = 0; j <= r.deg(); ++j) col[j] = r.c[j];
                            cols[i] = col;
                            xi = poly_mul(K, xi, poly_x(K));
                        }
                        for (int cnd = 0; cnd < ncond; ++cnd) {
                            std::vector<typename F::Elt> row(nvars, K.zero());
                            for (int i = 0; i < count; ++i) row[offset + i] = cols[i][cnd];
                            add_row(std::move(row));
                        }
                    };
                    mod_cols(ka, 0, na);
                    mod_cols(kb, na, nb);
                }
            } else if (P.kind == HK::InfRam) {
                // -2 deg a >= m and -2 deg b - (2g+1) >= m: kill high coefficients
                for (int i = 0; i < na; ++i)
                    if (-2 * i < m) {
                        std::vector<typename F::Elt> row(nvars, K.zero());
                        row[i] = K.one();
                        add_row(std::move(row));
                    }
                for (int j = 0; j < nb; ++j)
                    if (-2 * j - (2 * genus + 1) < m) {
                        std::vector<typename F::Elt> row(nvars, K.zero());
                        row[na + j] = K.one();
                        add_row(std::move(row));
                    }
            } else {
                // split infinity: series conditions
                int emin = -std::max(A, B + genus + 1);
                if (m <= emin) continue;
                bool plus = P.kind == HK::InfPlus;
                // column series for each basis monomial
                std::vector<Series<F>> colseries;
                for (int i = 0; i < na; ++i) {
                    Poly<F> xi;
                    xi.c.assign(i + 1, K.zero());
                    xi.c[i] = K.one();
                    colseries.push_back(expand_at_infinity(xi, Poly<F>(), plus, m));
                }
                for (int j = 0; j < nb; ++j) {
                    Poly<F> xj;
                    xj.c.assign(j + 1, K.zero());
                    xj.c[j] = K.one();
                    colseries.push_back(expand_at_infinity(Poly<F>(), xj, plus, m));
                }
                for (int e = emin; e < m; ++e) {
                    std::vector<typename F::Elt> row(nvars, K.zero());
                    bool nonzero = false;
                    for (int vidx = 0; vidx < nvars; ++vidx) {
                        auto cc = series_coeff(K, colseries[vidx], e);
                        if (!K.is_zero(cc)) nonzero = true;
                        row[vidx] = cc;
                    }
                    if (nonzero) add_row(std::move(row));
                }
            }
        }

        Mat<F> M(K, std::max((int)rows.size(), 1), nvars);
        for (int i = 0; i < (int)rows.size(); ++i)
            for (int j = 0; j < nvars; ++j) M.at(i, j) = rows[i][j];
        auto ker = kernel_basis(K, M);

        std::vector<HFun<F>> out;
        for (auto& vec : ker) {
            HFun<F> h;
            h.a.c.assign(vec.begin(), vec.begin() + na);
            h.a.trim(K);
            h.b.c.assign(vec.begin() + na, vec.end());
            h.b.trim(K);
            h.c = c;
            out.push_back(std::move(h));
        }
        return out;
    }

    int ell(const HDivisor<F>& D) const { return (int)rr_basis(D).size(); }

    // places above a monic irreducible u — needs residue field machinery,
    // specialized below for prime fields.
    std::vector<HPlace<F>> places_above(const Poly<F>& u) const;
};

// For exact square roots of field constants.
template <>
inline FpField::Elt HypCurve<FpField>::field_sqrt(const FpField& K, const FpField::Elt& a) {
    return K.sqrt(a);
}
template <>
inline FqField::Elt HypCurve<FqField>::field_sqrt(const FqField& K, const FqField::Elt& a) {
    return K.sqrt(a);
}
template <>
inline Rat HypCurve<QField>::field_sqrt(const QField& K, const Rat& a) {
    (void)K;
    Int nr, dr;
    if (!mpz_perfect_square_p(a.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(a.get_den().get_mpz_t()))
        throw std::domain_error("field_sqrt: rational is not a square");
    mpz_sqrt(nr.get_mpz_t(), a.get_num().get_mpz_t());
    mpz_sqrt(dr.get_mpz_t(), a.get_den().get_mpz_t());
    return Rat(nr) / Rat(dr);
}

// Places above u over a prime field: use F_{p^deg u} to decide splitting.
template <>
inline std::vector<HPlace<FpField>> HypCurve<FpField>::places_above(
    const Poly<FpField>& u0) const {
    auto u = poly_monic(K, u0);
    std::vector<HPlace<FpField>> out;
    auto fmod = poly_mod(K, f, u);
    if (fmod.is_zero()) {
        HPlace<FpField> p;
        p.kind = HK::FinRam;
        p.u = u;
        out.push_back(p);
        return out;
    }
    // residue field F_p[x]/u; test if fmod is a square there
    FqField R(K, u);
    if (!R.is_square(fmod)) {
        HPlace<FpField> p;
        p.kind = HK::FinInert;
        p.u = u;
        out.push_back(p);
        return out;
    }
    auto v = R.sqrt(fmod);
    HPlace<FpField> p;
    p.kind = HK::FinSplit;
    p.u = u;
    p.v = v;
    out.push_back(p);
    out.push_back(conjugate(p));
    return out;
}

// Principal divisor of (a + b y)/c over a prime field.
inline HDivisor<FpField> hyp_div(const HypCurve<FpField>& C, const HFun<FpField>& h) {
    const auto& K = C.K;
    HDivisor<FpField> D;
    if (h.a.is_zero() && h.b.is_zero())
        throw std::domain_error("hyp_div: zero function");
    // finite zeros/poles of a + b y via the norm a^2 - b^2 f
    auto norm = poly_sub(K, poly_mul(K, h.a, h.a),
                         poly_mul(K, poly_mul(K, h.b, h.b), C.f));
    if (norm.is_zero()) throw std::domain_error("hyp_div: zero norm");
    for (auto& [u, m] : poly_factor(K, norm)) {
        for (auto& P : C.places_above(u)) {
            int w = C.ord_finite(P, h.a, h.b);
            if (w != 0) D.add(K, P, w);
        }
    }
    // denominator contributions
    if (!h.c.is_zero() && h.c.deg() > 0) {
        for (auto& [u, m] : poly_factor(K, h.c))
            for (auto& P : C.places_above(u)) D.add(K, P, -m * P.e());
    }
    // infinity
    {
        auto Pp = C.inf_plus();
        D.add(K, Pp, C.ord(Pp, h));
        if (C.even) {
            auto Pm = C.inf_minus();
            D.add(K, Pm, C.ord(Pm, h));
        }
    }
    if (D.degree() != 0) throw std::logic_error("hyp_div: nonzero degree");
    return D;
}

// ---- point counting / zeta ----

// Number of points of y^2 = f over F_{p^k}, including points at infinity.
inline Int hyp_count_points(const HypCurve<FpField>& C, int k) {
    const auto& Kp = C.K;
    Int total = 0;
    if (k == 1) {
        for (std::uint64_t x = 0; x < Kp.p; ++x) {
            auto fx = poly_eval(Kp, C.f, x);
            if (fx == 0) total += 1;
            else if (Kp.is_square(fx)) total += 2;
        }
        if (C.even) {
            if (Kp.is_square(C.f.c.back())) total += 2;
            // non-square leading coefficient: no rational points at infinity
        } else {
            total += 1;
        }
    } else {
        auto Fq = make_fq(Kp.p, k);
        Poly<FqField> fq;
        for (auto& c : C.f.c) fq.c.push_back(Fq.from_base(c));
        fq.trim(Fq);
        // enumerate all of F_{p^k}
        std::vector<FqField::Elt> elems;
        std::vector<std::uint64_t> digits(k, 0);
        for (;;) {
            Poly<FpField> e;
            e.c.assign(digits.begin(), digits.end());
            e.trim(Kp);
            auto fx = poly_eval(Fq, fq, e);
            if (Fq.is_zero(fx)) total += 1;
            else if (Fq.is_square(fx)) total += 2;
            int i = 0;
            while (i < k && ++digits[i] == Kp.p) { digits[i] = 0; ++i; }
            if (i == k) break;
        }
        if (C.even) {
            if (Fq.is_square(Fq.from_base(C.f.c.back()))) total += 2;
        } else {
            total += 1;
        }
    }
    return total;
}

// L-polynomial coefficients (length 2g+1) from counts N_1..N_g, using the
// functional equation for the top half. Returns ascending coefficients.
inline std::vector<Int> l_polynomial_from_counts(const std::vector<Int>& N, int g, const Int& q) {
    // power sums S_k = q^k + 1 - N_k of the Frobenius eigenvalues
    std::vector<Int> S(g + 1);
    for (int k = 1; k <= g; ++k) S[k] = pow_int(q, k) + 1 - N[k - 1];
    // Newton: e_k = (1/k) sum_{i=1}^{k} (-1)^(i-1) e_{k-i} S_i
    std::vector<Int> e(g + 1);
    e[0] = 1;
    for (int k = 1; k <= g; ++k) {
        Int acc = 0;
        for (int i = 1; i <= k; ++i) {
            Int term = e[k - i] * S[i];
            if (i % 2 == 0) acc -= term;
            else acc += term;
        }
        if (acc % k != 0) throw std::logic_error("l_polynomial: non-integral Newton step");
        e[k] = acc / k;
    }
    std::vector<Int> a(2 * g + 1);
    for (int k = 0; k <= g; ++k) a[k] = (k % 2 == 0) ? e[k] : -e[k];
    for (int k = 0; k < g; ++k) a[2 * g - k] = pow_int(q, g - k) * a[k];
    return a;
}

inline Int jacobian_order_from_l(const std::vector<Int>& a) {
    Int s = 0;
    for (auto& c : a) s += c;
    return s;
}

inline Int hyp_jacobian_order(const HypCurve<FpField>& C) {
    std::vector<Int> N;
    for (int k = 1; k <= C.genus; ++k) N.push_back(hyp_count_points(C, k));
    auto a = l_polynomial_from_counts(N, C.genus, Int((unsigned long)C.K.p));
    return jacobian_order_from_l(a);
}

} // namespace ag
