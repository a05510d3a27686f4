#pragma once
// Function-field machinery for smooth plane quartics over prime fields:
// closed points, local power-series parametrizations, intersection divisors
// of forms, Riemann-Roch spaces, and the divisor class group.
//
// L(D) is computed Brill-Noether style: choose a form G0 of degree m
// vanishing on the positive part of D, set A = div(G0) - D, and then
// L(D) = { G1/G0 : G1 of degree m, div(G1) >= A }. Smooth plane curves are
// projectively normal, so every candidate function arises this way.
//
// The models of interest pass through (0:1:0), so the x1^4 coefficient of
// the defining form vanishes. The backend therefore applies an internal
// shear x0 -> x0 + a*x1, x2 -> x2 + b*x1 (with Q(a,1,b) != 0) once at
// construction and maps all incoming points accordingly; divisor class
// groups are invariant under this change of coordinates.

#include "ag/fp.hpp"
#include "ag/fq.hpp"
#include "ag/factor_fq.hpp"
#include "ag/series.hpp"
#include "ag/linalg.hpp"
#include "ag/curves.hpp"
#include "ag/hyperell.hpp" // zeta helpers (l_polynomial_from_counts)
#include <array>
#include <map>
#include <unordered_map>
#include <sstream>
#include <random>

namespace ag {

// homogeneous trivariate form over F_p, keyed by (e0, e1); e2 = m - e0 - e1
struct TriForm {
    int m = 0;
    std::map<std::pair<int, int>, std::uint64_t> c;

    void set(const FpField& K, int i, int j, std::uint64_t v) {
        if (v % K.p == 0) c.erase({i, j});
        else c[{i, j}] = v % K.p;
    }
    bool is_zero() const { return c.empty(); }
    std::string to_string() const {
        std::ostringstream os;
        os << m << ":";
        for (auto& [e, v] : c) os << e.first << "," << e.second << "=" << v << ";";
        return os.str();
    }
};

// number of distinct roots of f in F_q, as deg gcd(Y^q - Y, f); Y^q mod f is
// built by composing the p-power Frobenius rather than one big exponentiation
inline int count_roots(const FqField& F, const Poly<FqField>& f) {
    if (f.deg() <= 0) return 0;
    int k = F.d;
    auto h = poly_pow_mod(F, poly_x(F), Int((unsigned long)F.base.p), f);
    auto h1 = h;
    for (int i = 1; i < k; ++i) {
        // h <- h^(phi)(h1) mod f, phi the coefficientwise p-power
        Poly<FqField> r;
        for (int j = h.deg(); j >= 0; --j) {
            r = poly_mod(F, poly_mul(F, r, h1), f);
            r = poly_add(F, r, poly_const(F, F.frobenius(h.c[j])));
        }
        h = r;
    }
    auto g = poly_gcd(F, poly_sub(F, h, poly_x(F)), f);
    return std::max(g.deg(), 0);
}

// bivariate polynomial over F_p: c[i][j] is the coefficient of u^i v^j
struct BiPoly {
    std::vector<std::vector<std::uint64_t>> c;
    int du() const { return (int)c.size() - 1; }
    int dv() const {
        int d = -1;
        for (auto& row : c) d = std::max(d, (int)row.size() - 1);
        return d;
    }
};

// dehomogenize a form in the given chart:
//   chart 2: (u,v) = (x0/x2, x1/x2); chart 0: (u,v) = (x1/x0, x2/x0);
//   chart 1: (u,v) = (x0/x1, x2/x1)
inline BiPoly triform_chart(const TriForm& G, int chart) {
    BiPoly b;
    auto put = [&](int i, int j, std::uint64_t v) {
        if ((int)b.c.size() <= i) b.c.resize(i + 1);
        if ((int)b.c[i].size() <= j) b.c[i].resize(j + 1, 0);
        b.c[i][j] = v;
    };
    for (auto& [e, v] : G.c) {
        int e0 = e.first, e1 = e.second, e2 = G.m - e0 - e1;
        if (chart == 2) put(e0, e1, v);
        else if (chart == 0) put(e1, e2, v);
        else put(e0, e2, v);
    }
    return b;
}

// v-degree coefficient view: poly in u for each power of v
inline std::vector<Poly<FpField>> bipoly_by_v(const FpField& K, const BiPoly& b) {
    std::vector<Poly<FpField>> out(std::max(b.dv() + 1, 1));
    for (int i = 0; i <= b.du(); ++i)
        for (int j = 0; j < (int)b.c[i].size(); ++j)
            if (b.c[i][j]) {
                auto& pj = out[j];
                if (pj.deg() < i) pj.c.resize(i + 1, 0);
                pj.c[i] = b.c[i][j];
            }
    for (auto& pj : out) pj.trim(K);
    return out;
}

template <class E>
Poly<E> bipoly_at_u(const E& F, const FpField& K, const BiPoly& b, const typename E::Elt& u0) {
    (void)K;
    Poly<E> out;
    out.c.assign(std::max(b.dv() + 1, 1), F.zero());
    auto up = F.one();
    for (int i = 0; i <= b.du(); ++i) {
        for (int j = 0; j < (int)b.c[i].size(); ++j)
            if (b.c[i][j]) out.c[j] = F.add(out.c[j], F.mul(F.from_base(b.c[i][j]), up));
        up = F.mul(up, u0);
    }
    out.trim(F);
    return out;
}

inline BiPoly bipoly_derivative_v(const FpField& K, const BiPoly& b) {
    BiPoly d;
    d.c.resize(b.c.size());
    for (size_t i = 0; i < b.c.size(); ++i) {
        if (b.c[i].size() <= 1) continue;
        d.c[i].assign(b.c[i].size() - 1, 0);
        for (size_t j = 1; j < b.c[i].size(); ++j)
            d.c[i][j - 1] = K.mul(K.from_int((long)j), b.c[i][j]);
    }
    return d;
}

template <class E>
Series<E> bipoly_eval_series(const E& F, const BiPoly& b, const Series<E>& U,
                             const Series<E>& V) {
    int prec = std::min(U.prec, V.prec);
    auto res = series_zero(F, prec);
    // powers of U and V
    std::vector<Series<E>> up = {series_const(F, F.one(), prec)};
    for (int i = 1; i <= b.du(); ++i) up.push_back(series_truncate(F, series_mul(F, up.back(), U), prec));
    int dv = b.dv();
    std::vector<Series<E>> vp = {series_const(F, F.one(), prec)};
    for (int j = 1; j <= dv; ++j) vp.push_back(series_truncate(F, series_mul(F, vp.back(), V), prec));
    for (int i = 0; i <= b.du(); ++i)
        for (int j = 0; j < (int)b.c[i].size(); ++j)
            if (b.c[i][j]) {
                auto t = series_mul(F, up[i], vp[j]);
                t = series_scale(F, t, F.from_base(b.c[i][j]));
                res = series_add(F, res, series_truncate(F, t, prec));
            }
    return res;
}

// resultant of two univariate polynomials over a field handle
template <class F>
typename F::Elt resultant(const F& K, Poly<F> f, Poly<F> g) {
    if (f.is_zero() || g.is_zero()) return K.zero();
    auto res = K.one();
    bool neg = false;
    while (g.deg() > 0) {
        auto r = poly_mod(K, f, g);
        if (r.is_zero()) return K.zero();
        if ((f.deg() % 2) && (g.deg() % 2)) neg = !neg;
        res = K.mul(res, K.pow(g.c.back(), Int(f.deg() - r.deg())));
        f = g;
        g = r;
    }
    res = K.mul(res, K.pow(g.c.back(), Int(f.deg())));
    return neg ? K.neg(res) : res;
}

// closed point on the curve: Frobenius-orbit-canonical coordinates in the
// deterministic standard field F_{p^d}
struct PPlace {
    int d = 1;
    FqField F;
    std::array<FqField::Elt, 3> x; // normalized: first nonzero coordinate is 1
    std::string key;

    int degree() const { return d; }
};

struct PDivisor {
    std::map<std::string, std::pair<PPlace, int>> m;

    void add(const PPlace& p, int mult) {
        if (mult == 0) return;
        auto it = m.find(p.key);
        if (it == m.end()) m.emplace(p.key, std::make_pair(p, mult));
        else {
            it->second.second += mult;
            if (it->second.second == 0) m.erase(it);
        }
    }
    void add_divisor(const PDivisor& d, int scale = 1) {
        for (auto& [k, pm] : d.m) add(pm.first, pm.second * scale);
    }
    int degree() const {
        int s = 0;
        for (auto& [k, pm] : m) s += pm.first.degree() * pm.second;
        return s;
    }
    bool effective() const {
        for (auto& [k, pm] : m)
            if (pm.second < 0) return false;
        return true;
    }
    bool empty() const { return m.empty(); }
    std::string key() const {
        std::ostringstream os;
        for (auto& [k, pm] : m) os << k << "*" << pm.second << "|";
        return os.str();
    }
};

// function G1/G0 on the curve (forms of equal degree)
struct PFun {
    TriForm g1, g0;
};

class PlaneQuarticFp {
public:
    FpField K;
    TriForm Q;                   // sheared quartic
    std::uint64_t sh_a = 0, sh_b = 0; // x0 -> x0 + a x1, x2 -> x2 + b x1
    std::array<BiPoly, 3> Qchart;
    std::array<BiPoly, 3> Qchart_dv;
    std::array<BiPoly, 3> Qchart_du;
    std::vector<PPlace> inf_points; // points with x2 = 0 (in sheared coords)

    PlaneQuarticFp(FpField k, const MonomialPoly& model) : K(k) {
        TriForm raw = triform_from(model);
        // find a shear making the x1^4 coefficient nonzero
        bool found = false;
        for (std::uint64_t a = 0; a < K.p && !found; ++a)
            for (std::uint64_t b = 0; b < K.p && !found; ++b) {
                auto g = triform_shear(raw, a, b);
                auto it = g.c.find({0, 4});
                if (it != g.c.end()) {
                    Q = g;
                    sh_a = a;
                    sh_b = b;
                    found = true;
                }
            }
        if (!found) throw std::logic_error("PlaneQuarticFp: no shear works");
        for (int ch = 0; ch < 3; ++ch) {
            Qchart[ch] = triform_chart(Q, ch);
            Qchart_dv[ch] = bipoly_derivative_v(K, Qchart[ch]);
            Qchart_du[ch] = bipoly_derivative_u(K, Qchart[ch]);
        }
        build_inf_points();
    }

    TriForm triform_from(const MonomialPoly& model) const {
        TriForm g;
        g.m = 4;
        for (auto& [e, r] : model.terms) {
            auto v = K.from_rat(r);
            if (v == 0) continue;
            auto key = std::make_pair(e[0], e[1]);
            auto it = g.c.find(key);
            std::uint64_t cur = it == g.c.end() ? 0 : it->second;
            cur = K.add(cur, v);
            if (cur == 0) g.c.erase(key);
            else g.c[key] = cur;
        }
        return g;
    }

    TriForm triform_shear(const TriForm& G, std::uint64_t a, std::uint64_t b) const {
        // substitute x0 -> x0 + a x1, x2 -> x2 + b x1
        TriForm out;
        out.m = G.m;
        for (auto& [e, v] : G.c) {
            int e0 = e.first, e1 = e.second, e2 = G.m - e0 - e1;
            // (x0 + a x1)^e0 (x1)^e1 (x2 + b x1)^e2
            for (int i = 0; i <= e0; ++i)
                for (int j = 0; j <= e2; ++j) {
                    std::uint64_t coef = K.mul(v, K.mul(binom(e0, i), binom(e2, j)));
                    coef = K.mul(coef, K.mul(K.pow(a, Int(e0 - i)), K.pow(b, Int(e2 - j))));
                    if (coef == 0) continue;
                    int n0 = i, n2 = j, n1 = G.m - i - j;
                    (void)e1;
                    auto key = std::make_pair(n0, n1);
                    auto it = out.c.find(key);
                    std::uint64_t cur = it == out.c.end() ? 0 : it->second;
                    cur = K.add(cur, coef);
                    if (cur == 0) out.c.erase(key);
                    else out.c[key] = cur;
                    (void)n2;
                }
        }
        return out;
    }

    std::uint64_t binom(int n, int k) const {
        Int b = 1;
        for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
        return mpz_fdiv_ui(b.get_mpz_t(), K.p);
    }

    BiPoly bipoly_derivative_u(const FpField& k, const BiPoly& b) const {
        BiPoly d;
        if (b.c.size() <= 1) return d;
        d.c.resize(b.c.size() - 1);
        for (size_t i = 1; i < b.c.size(); ++i) {
            d.c[i - 1].assign(b.c[i].size(), 0);
            for (size_t j = 0; j < b.c[i].size(); ++j)
                d.c[i - 1][j] = k.mul(k.from_int((long)i), b.c[i][j]);
        }
        return d;
    }

    // map a rational projective point of the original model into sheared
    // coordinates: (x0 - a x1 : x1 : x2 - b x1)
    std::array<std::uint64_t, 3> shear_point(const std::array<std::uint64_t, 3>& xi) const {
        return {K.sub(xi[0], K.mul(sh_a, xi[1])), xi[1], K.sub(xi[2], K.mul(sh_b, xi[1]))};
    }

    // ---- closed points ----

    PPlace make_place(const FqField& F, int d, std::array<FqField::Elt, 3> x) const {
        // normalize: first nonzero coordinate scaled to 1
        for (int i = 0; i < 3; ++i)
            if (!F.is_zero(x[i])) {
                auto inv = F.inv(x[i]);
                for (int j = 0; j < 3; ++j) x[j] = F.mul(x[j], inv);
                break;
            }
        auto ser = [&](const std::array<FqField::Elt, 3>& cc) {
            std::ostringstream os;
            os << d << "{";
            for (int i = 0; i < 3; ++i) os << poly_to_string(F.base, cc[i]) << ";";
            os << "}";
            return os.str();
        };
        // canonical representative: minimal serialization over the orbit
        std::array<FqField::Elt, 3> best = x;
        std::string bkey = ser(x);
        auto cur = x;
        for (int i = 1; i < d; ++i) {
            for (int j = 0; j < 3; ++j) cur[j] = F.frobenius(cur[j]);
            auto s = ser(cur);
            if (s < bkey) {
                bkey = s;
                best = cur;
            }
        }
        PPlace P;
        P.d = d;
        P.F = F;
        P.x = best;
        P.key = bkey;
        // sanity: point lies on the curve
        if (!F.is_zero(eval_form(F, Q, P.x)))
            throw std::logic_error("make_place: point not on curve");
        return P;
    }

    PPlace place_of_rational(std::array<std::uint64_t, 3> xi_orig) const {
        auto xi = shear_point(xi_orig);
        auto F = make_fq(K.p, 1);
        return make_place(F, 1, std::array<FqField::Elt, 3>{F.from_base(xi[0]), F.from_base(xi[1]), F.from_base(xi[2])});
    }

    template <class E>
    typename E::Elt eval_form(const E& F, const TriForm& G, const std::array<typename E::Elt, 3>& x) const {
        auto r = F.zero();
        for (auto& [e, v] : G.c) {
            auto t = F.from_base(v);
            for (int i = 0; i < e.first; ++i) t = F.mul(t, x[0]);
            for (int i = 0; i < e.second; ++i) t = F.mul(t, x[1]);
            for (int i = 0; i < G.m - e.first - e.second; ++i) t = F.mul(t, x[2]);
            r = F.add(r, t);
        }
        return r;
    }

    // ---- local parametrization ----

    struct Param {
        int chart;      // affine chart
        bool v_is_dep;  // true: u = A + t, v = series; false: v = B + t, u = series
        Series<FqField> U, V;
        int prec;
    };

    int chart_of(const PPlace& P) const {
        auto& F = P.F;
        if (!F.is_zero(P.x[2])) return 2;
        if (!F.is_zero(P.x[0])) return 0;
        return 1;
    }

    std::pair<FqField::Elt, FqField::Elt> affine_coords(const PPlace& P, int chart) const {
        auto& F = P.F;
        auto inv = F.inv(P.x[chart]);
        if (chart == 2) return {F.mul(P.x[0], inv), F.mul(P.x[1], inv)};
        if (chart == 0) return {F.mul(P.x[1], inv), F.mul(P.x[2], inv)};
        return {F.mul(P.x[0], inv), F.mul(P.x[2], inv)};
    }

    Param parametrize(const PPlace& P, int prec) const {
        auto it = param_cache_.find(P.key);
        if (it != param_cache_.end() && it->second.prec >= prec) return it->second;
        const auto& F = P.F;
        int ch = chart_of(P);
        auto [A, B] = affine_coords(P, ch);
        auto qv = bipoly_eval_point(F, Qchart_dv[ch], A, B);
        Param pm;
        pm.chart = ch;
        pm.prec = prec;
        auto t = series_x(F, prec);
        if (!F.is_zero(qv)) {
            pm.v_is_dep = true;
            pm.U = series_add(F, series_const(F, A, prec), t);
            pm.V = newton_implicit(F, Qchart[ch], Qchart_dv[ch], pm.U,
                                   series_const(F, B, prec), prec);
        } else {
            auto qu = bipoly_eval_point(F, Qchart_du[ch], A, B);
            if (F.is_zero(qu)) throw std::logic_error("parametrize: singular point");
            pm.v_is_dep = false;
            pm.V = series_add(F, series_const(F, B, prec), t);
            // swap roles of u and v by transposing the chart polynomial
            pm.U = newton_implicit(F, bipoly_transpose(Qchart[ch]),
                                   bipoly_transpose(Qchart_du[ch]), pm.V,
                                   series_const(F, A, prec), prec);
        }
        param_cache_[P.key] = pm;
        return pm;
    }

    static BiPoly bipoly_transpose(const BiPoly& b) {
        BiPoly t;
        for (int i = 0; i <= b.du(); ++i)
            for (int j = 0; j < (int)b.c[i].size(); ++j)
                if (b.c[i][j]) {
                    if ((int)t.c.size() <= j) t.c.resize(j + 1);
                    if ((int)t.c[j].size() <= i) t.c[j].resize(i + 1, 0);
                    t.c[j][i] = b.c[i][j];
                }
        return t;
    }

    template <class E>
    typename E::Elt bipoly_eval_point(const E& F, const BiPoly& b, const typename E::Elt& u0,
                                      const typename E::Elt& v0) const {
        auto r = F.zero();
        auto up = F.one();
        for (int i = 0; i <= b.du(); ++i) {
            auto vp = F.one();
            for (int j = 0; j < (int)b.c[i].size(); ++j) {
                if (b.c[i][j]) r = F.add(r, F.mul(F.from_base(b.c[i][j]), F.mul(up, vp)));
                vp = F.mul(vp, v0);
            }
            up = F.mul(up, u0);
        }
        return r;
    }

    // solve q(U(t), V) = 0 for V as a power series with V(0) = B0
    static Series<FqField> newton_implicit(const FqField& F, const BiPoly& q,
                                           const BiPoly& qv, const Series<FqField>& U,
                                           Series<FqField> V, int prec) {
        for (int it = 0; it < 64; ++it) {
            auto err = bipoly_eval_series(F, q, U, V);
            if (err.is_zero() || err.val >= prec) return V;
            auto der = bipoly_eval_series(F, qv, U, V);
            V = series_sub(F, V, series_truncate(F, series_div(F, err, der), prec));
        }
        throw std::logic_error("newton_implicit: no convergence");
    }

    // order of vanishing of a form at a closed point. Orders are almost
    // always tiny, so start with a short series and only grow towards the
    // Bezout bound when everything computed so far vanishes.
    int ord_form(const PPlace& P, const TriForm& G, int bound = -1) const {
        if (bound < 0) bound = 4 * G.m + 4;
        const auto& F = P.F;
        for (int prec = std::min(4, bound);; prec = std::min(2 * prec, bound)) {
            auto pm = parametrize(P, prec);
            // the cache may hold a longer series; evaluate at `prec` only
            auto U = series_truncate(F, pm.U, prec);
            auto V = series_truncate(F, pm.V, prec);
            auto s = bipoly_eval_series(F, triform_chart(G, pm.chart), U, V);
            if (!s.is_zero() && s.val < prec) return s.val;
            if (prec >= bound) {
                if (s.is_zero()) throw std::logic_error("ord_form: vanishing beyond Bezout bound");
                return s.val;
            }
        }
    }

    // ---- intersection divisor of a form with the curve ----

    PDivisor div_form(const TriForm& G) const {
        auto ck = G.to_string();
        auto cit = div_cache_.find(ck);
        if (cit != div_cache_.end()) return cit->second;
        if (G.is_zero()) throw std::invalid_argument("div_form: zero form");
        PDivisor out;
        // affine chart 2: resultant in v of Q and G
        auto g2 = triform_chart(G, 2);
        auto R = resultant_in_v(g2, G.m);
        if (R.deg() >= 1) {
            for (auto& [u_irr, mult] : poly_factor(K, R)) {
                (void)mult;
                int du = u_irr.deg();
                auto F1 = make_fq(K.p, du);
                auto xi = first_root(F1, u_irr);
                auto qx = bipoly_at_u(F1, K, Qchart[2], xi);
                auto gx = bipoly_at_u(F1, K, g2, xi);
                if (gx.is_zero()) {
                    // G vanishes on the whole fiber above u_irr
                    gx = qx;
                }
                auto g0 = poly_gcd(F1, qx, gx);
                if (g0.deg() == 0) continue;
                for (auto& [w, wm] : poly_factor(F1, g0)) {
                    (void)wm;
                    int dw = w.deg();
                    int d = du * dw;
                    auto F = make_fq(K.p, d);
                    // embed F1 into F: send the F1 generator to a root of its modulus
                    auto tau = first_root(F, F1.modulus);
                    auto emb = [&](const FqField::Elt& a) {
                        return poly_eval_map(F1.base, F, a, tau,
                                             [&](FpField::Elt c) { return F.from_base(c); });
                    };
                    auto xiF = emb(xi);
                    Poly<FqField> wF;
                    for (auto& cc : w.c) wF.c.push_back(emb(cc));
                    wF.trim(F);
                    auto eta = first_root_fq(F, wF);
                    auto P = make_place(F, d, std::array<FqField::Elt, 3>{xiF, eta, F.one()});
                    int o = ord_form(P, G);
                    if (o > 0) out.add(P, o);
                }
            }
        }
        // points at infinity (x2 = 0)
        for (auto& P : inf_points) {
            int o = ord_form(P, G);
            if (o > 0) out.add(P, o);
        }
        if (out.degree() != 4 * G.m)
            throw std::logic_error("div_form: Bezout mismatch");
        div_cache_[ck] = out;
        return out;
    }

    PDivisor div_fun(const PFun& h) const {
        PDivisor d = div_form(h.g1);
        d.add_divisor(div_form(h.g0), -1);
        return d;
    }

    int ord_fun(const PPlace& P, const PFun& h) const {
        return ord_form(P, h.g1) - ord_form(P, h.g0);
    }

    // ---- Riemann-Roch ----

    // monomial basis of S_m / (Q): exponent of x1 at most 3
    std::vector<std::array<int, 3>> quot_basis(int m) const {
        std::vector<std::array<int, 3>> out;
        for (int j = 0; j <= std::min(m, 3); ++j)
            for (int i = 0; i + j <= m; ++i) out.push_back({i, j, m - i - j});
        return out;
    }

    // rows imposing ord_P(G) >= need on forms spanned by basis
    void vanishing_rows(const PPlace& P, int need,
                        const std::vector<std::array<int, 3>>& basis,
                        std::vector<std::vector<std::uint64_t>>& rows) const {
        auto pm = parametrize(P, need + 2);
        const auto& F = P.F;
        int ch = pm.chart;
        // the cache may hold longer series than we need here
        auto Us = series_truncate(F, pm.U, need + 1);
        auto Vs = series_truncate(F, pm.V, need + 1);
        std::vector<Series<FqField>> cols;
        // powers of the two affine series
        int maxe = 0;
        for (auto& e : basis) maxe = std::max({maxe, e[0], e[1], e[2]});
        std::vector<Series<FqField>> up = {series_const(F, F.one(), need)};
        std::vector<Series<FqField>> vp = {series_const(F, F.one(), need)};
        for (int i = 1; i <= maxe; ++i) {
            up.push_back(series_truncate(F, series_mul(F, up.back(), Us), need));
            vp.push_back(series_truncate(F, series_mul(F, vp.back(), Vs), need));
        }
        for (auto& e : basis) {
            int a, b;
            if (ch == 2) { a = e[0]; b = e[1]; }
            else if (ch == 0) { a = e[1]; b = e[2]; }
            else { a = e[0]; b = e[2]; }
            cols.push_back(series_truncate(F, series_mul(F, up[a], vp[b]), need));
        }
        // each t-order below `need` contributes d rows over F_p
        for (int o = 0; o < need; ++o) {
            for (int r = 0; r < P.d; ++r) {
                std::vector<std::uint64_t> row(basis.size(), 0);
                bool nz = false;
                for (size_t cidx = 0; cidx < cols.size(); ++cidx) {
                    auto cc = series_coeff(F, cols[cidx], o);
                    std::uint64_t val = (r <= cc.deg()) ? cc.c[r] : 0;
                    if (val) nz = true;
                    row[cidx] = val;
                }
                if (nz) rows.push_back(std::move(row));
            }
        }
    }

    TriForm form_from_coeffs(const std::vector<std::array<int, 3>>& basis,
                             const std::vector<std::uint64_t>& v, int m) const {
        TriForm g;
        g.m = m;
        for (size_t i = 0; i < basis.size(); ++i)
            if (v[i]) g.c[{basis[i][0], basis[i][1]}] = v[i];
        return g;
    }

    std::vector<PFun> rr_basis(const PDivisor& D) const {
        // choose G0 vanishing on D+
        int degpos = 0;
        for (auto& [k, pm] : D.m)
            if (pm.second > 0) degpos += pm.second * pm.first.degree();
        int m0 = 1;
        TriForm G0;
        for (;; ++m0) {
            auto basis = quot_basis(m0);
            if ((int)basis.size() < degpos + 2) continue;
            std::vector<std::vector<std::uint64_t>> rows;
            for (auto& [k, pm] : D.m)
                if (pm.second > 0) vanishing_rows(pm.first, pm.second, basis, rows);
            Mat<FpField> M(K, std::max((int)rows.size(), 1), (int)basis.size());
            for (size_t i = 0; i < rows.size(); ++i)
                for (size_t j = 0; j < rows[i].size(); ++j) M.at((int)i, (int)j) = rows[i][j];
            auto ker = kernel_basis(K, M);
            if (ker.empty()) continue;
            G0 = form_from_coeffs(basis, ker[0], m0);
            break;
        }
        // A = div(G0) - D
        PDivisor A = div_form(G0);
        A.add_divisor(D, -1);
        if (!A.effective()) throw std::logic_error("rr_basis: A not effective");
        // L(D) = { G1 / G0 : div(G1) >= A }
        auto basis = quot_basis(m0);
        std::vector<std::vector<std::uint64_t>> rows;
        for (auto& [k, pm] : A.m)
            if (pm.second > 0) vanishing_rows(pm.first, pm.second, basis, rows);
        Mat<FpField> M(K, std::max((int)rows.size(), 1), (int)basis.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < rows[i].size(); ++j) M.at((int)i, (int)j) = rows[i][j];
        auto ker = kernel_basis(K, M);
        std::vector<PFun> out;
        for (auto& v : ker) {
            PFun h;
            h.g1 = form_from_coeffs(basis, v, m0);
            h.g0 = G0;
            out.push_back(std::move(h));
        }
        return out;
    }

    int ell(const PDivisor& D) const { return (int)rr_basis(D).size(); }

    // ---- point counting ----

    // number of points over F_{p^k} (including x2 = 0)
    Int count_points(int k) const {
        Int total = 0;
        auto Fq = make_fq(K.p, k);
        // iterate u over F_{p^k}
        std::vector<std::uint64_t> digits(k, 0);
        for (;;) {
            Poly<FpField> e;
            e.c.assign(digits.begin(), digits.end());
            e.trim(K);
            auto quartic = bipoly_at_u(Fq, K, Qchart[2], e);
            total += count_roots(Fq, quartic);
            int i = 0;
            while (i < k && ++digits[i] == K.p) { digits[i] = 0; ++i; }
            if (i == k) break;
        }
        // x2 = 0: closed points contribute d rational points when d | k
        for (auto& P : inf_points)
            if (k % P.d == 0) total += P.d;
        return total;
    }

    Int jacobian_order() const {
        std::vector<Int> N;
        for (int k = 1; k <= 3; ++k) N.push_back(count_points(k));
        auto a = l_polynomial_from_counts(N, 3, Int((unsigned long)K.p));
        return jacobian_order_from_l(a);
    }

private:
    mutable std::map<std::string, Param> param_cache_;
    mutable std::map<std::string, PDivisor> div_cache_;
    mutable std::map<std::pair<int, int>, std::vector<Poly<FqField>>> lagrange_cache_;

    // root finding dominates divisor localization and the same small
    // irreducibles recur constantly, so roots are cached per curve
    mutable std::map<std::string, FqField::Elt> root_cache_;

    FqField::Elt first_root(const FqField& F, const Poly<FpField>& u) const {
        Poly<FqField> uf;
        for (auto& cc : u.c) uf.c.push_back(F.from_base(cc));
        uf.trim(F);
        return first_root_fq(F, uf);
    }
    FqField::Elt first_root_fq(const FqField& F, const Poly<FqField>& w) const {
        std::string key = std::to_string(F.d);
        for (auto& cc : w.c) {
            key += '|';
            key += poly_to_string(F.base, cc);
        }
        auto it = root_cache_.find(key);
        if (it != root_cache_.end()) return it->second;
        auto roots = poly_roots(F, w);
        if (roots.empty()) throw std::logic_error("first_root: no root");
        // poly_roots is deterministic; take the first
        root_cache_[key] = roots.front().first;
        return roots.front().first;
    }

    // Res_v(Q, g) as a polynomial in u, by evaluation and interpolation over
    // an extension large enough to hold 4m+1 sample points
    Poly<FpField> resultant_in_v(const BiPoly& g, int m) const {
        int nsam = 4 * m + 1;
        int s = 1;
        Int psz((unsigned long)K.p);
        while (psz <= nsam + 1) { psz *= (unsigned long)K.p; ++s; }
        auto Fs = make_fq(K.p, s);
        int Dg = std::max(g.dv(), 0);
        // constant leading v-coefficient of Q in chart 2 (exists by the shear)
        std::uint64_t lc_const = Q.c.at({0, 4});
        std::vector<FqField::Elt> xs, ys;
        std::vector<std::uint64_t> digits(s, 0);
        while ((int)xs.size() < nsam) {
            Poly<FpField> e;
            e.c.assign(digits.begin(), digits.end());
            e.trim(K);
            auto qx = bipoly_at_u(Fs, K, Qchart[2], e);
            auto gx = bipoly_at_u(Fs, K, g, e);
            FqField::Elt val;
            if (gx.is_zero()) val = Fs.zero();
            else {
                val = resultant(Fs, qx, gx);
                int drop = Dg - gx.deg();
                if (drop > 0) val = Fs.mul(val, Fs.pow(Fs.from_base(lc_const), Int(drop)));
            }
            xs.push_back(e);
            ys.push_back(val);
            int i = 0;
            while (i < s && ++digits[i] == K.p) { digits[i] = 0; ++i; }
            if (i == s) break;
        }
        if ((int)xs.size() < nsam) throw std::logic_error("resultant_in_v: field too small");
        // Lagrange interpolation over Fs; the sample points are fixed per
        // (s, nsam), so the scaled cardinal polynomials are cached
        auto& card = lagrange_cache_[{s, nsam}];
        if (card.empty()) {
            for (int i = 0; i < nsam; ++i) {
                Poly<FqField> li;
                li.c = {Fs.one()};
                auto denom = Fs.one();
                for (int j = 0; j < nsam; ++j) {
                    if (j == i) continue;
                    Poly<FqField> lin;
                    lin.c = {Fs.neg(xs[j]), Fs.one()};
                    li = poly_mul(Fs, li, lin);
                    denom = Fs.mul(denom, Fs.sub(xs[i], xs[j]));
                }
                card.push_back(poly_scale(Fs, li, Fs.inv(denom)));
            }
        }
        Poly<FqField> R;
        for (int i = 0; i < nsam; ++i) {
            if (Fs.is_zero(ys[i])) continue;
            R = poly_add(Fs, R, poly_scale(Fs, card[i], ys[i]));
        }
        // project to F_p
        Poly<FpField> out;
        for (auto& cc : R.c) {
            if (cc.deg() > 0) throw std::logic_error("resultant_in_v: non-rational coefficient");
            out.c.push_back(cc.is_zero() ? 0 : cc.c[0]);
        }
        out.trim(K);
        return out;
    }

    void build_inf_points() {
        // points of the sheared curve on the line x2 = 0
        // q_inf(T) = Q(T, 1, 0); plus (1:0:0) when the x0^4 coefficient vanishes
        Poly<FpField> qi;
        for (auto& [e, v] : Q.c) {
            if (e.first + e.second != 4) continue; // x2 exponent 0
            if (qi.deg() < e.first) qi.c.resize(e.first + 1, 0);
            qi.c[e.first] = v;
        }
        qi.trim(K);
        if (!qi.is_zero())
            for (auto& [u_irr, m] : poly_factor(K, qi)) {
                (void)m;
                int d = u_irr.deg();
                auto F = make_fq(K.p, d);
                auto xi = first_root(F, u_irr);
                inf_points.push_back(make_place(F, d, std::array<FqField::Elt, 3>{xi, F.one(), F.zero()}));
            }
        if (Q.c.find({4, 0}) == Q.c.end()) {
            auto F = make_fq(K.p, 1);
            inf_points.push_back(make_place(F, 1, std::array<FqField::Elt, 3>{F.one(), F.zero(), F.zero()}));
        }
    }
};

// divisor class group of the quartic, same conventions as JacFp
struct PJacElt {
    PDivisor E;
    std::string key;
};

class PlaneJac {
public:
    using Elt = PJacElt;
    const PlaneQuarticFp& C;
    PPlace base;

    PlaneJac(const PlaneQuarticFp& curve, const PPlace& base_point)
        : C(curve), base(base_point) {
        if (base.degree() != 1) throw std::invalid_argument("PlaneJac: base not rational");
    }

    PJacElt zero() const { return finish(PDivisor{}); }
    bool is_zero(const PJacElt& e) const { return e.E.empty(); }
    bool eq(const PJacElt& a, const PJacElt& b) const { return a.key == b.key; }

    PJacElt reduce(const PDivisor& D0) const {
        PDivisor D = D0;
        int d = D.degree();
        if (d != 0) D.add(base, -d);
        // One adjoint G0 vanishing on D+ and to order M at the base place is
        // valid for every step m <= M of the minimal-m search, so its
        // intersection divisor is computed once; each step then only drops a
        // single base-point row from the constraint system.
        const int M = 3; // minimal m is at most the genus
        PDivisor Pplus, Nminus; // D = Pplus - Nminus
        for (auto& [k, pm] : D.m) {
            (void)k;
            if (pm.second > 0) Pplus.add(pm.first, pm.second);
            else Nminus.add(pm.first, -pm.second);
        }
        PDivisor Dstar = Pplus;
        Dstar.add(base, M);
        int degcon = Dstar.degree();
        int m0 = 1;
        TriForm G0;
        std::vector<std::array<int, 3>> basis;
        for (;; ++m0) {
            basis = C.quot_basis(m0);
            if ((int)basis.size() < degcon + 2) continue;
            std::vector<std::vector<std::uint64_t>> rows;
            for (auto& [k, pm] : Dstar.m) {
                (void)k;
                C.vanishing_rows(pm.first, pm.second, basis, rows);
            }
            Mat<FpField> Mx(C.K, std::max((int)rows.size(), 1), (int)basis.size());
            for (size_t i = 0; i < rows.size(); ++i)
                for (size_t j = 0; j < rows[i].size(); ++j) Mx.at((int)i, (int)j) = rows[i][j];
            auto ker = kernel_basis(C.K, Mx);
            if (ker.empty()) continue;
            G0 = C.form_from_coeffs(basis, ker[0], m0);
            break;
        }
        // A = div(G0) - D, effective with multiplicity >= M at the base
        PDivisor A = C.div_form(G0);
        A.add_divisor(Pplus, -1);
        A.add_divisor(Nminus, 1);
        if (!A.effective()) throw std::logic_error("PlaneJac::reduce: adjoint residue not effective");
        int ab = 0;
        auto ait = A.m.find(base.key);
        if (ait != A.m.end()) ab = ait->second.second;
        if (ab < M) throw std::logic_error("PlaneJac::reduce: base multiplicity too small");
        std::vector<std::vector<std::uint64_t>> rows_fixed;
        for (auto& [k, pm] : A.m)
            if (k != base.key) C.vanishing_rows(pm.first, pm.second, basis, rows_fixed);
        for (int m = 0; m <= M; ++m) {
            // L(D + m*base) = { G1/G0 : div(G1) >= A - m*base }
            auto rows = rows_fixed;
            if (ab - m > 0) C.vanishing_rows(base, ab - m, basis, rows);
            Mat<FpField> Mx(C.K, std::max((int)rows.size(), 1), (int)basis.size());
            for (size_t i = 0; i < rows.size(); ++i)
                for (size_t j = 0; j < rows[i].size(); ++j) Mx.at((int)i, (int)j) = rows[i][j];
            auto ker = kernel_basis(C.K, Mx);
            if (ker.empty()) continue;
            if (ker.size() != 1)
                throw std::logic_error("PlaneJac::reduce: non-unique minimal section");
            auto G1 = C.form_from_coeffs(basis, ker[0], m0);
            PDivisor E = C.div_form(G1);
            E.add_divisor(A, -1);
            E.add(base, m);
            if (!E.effective() || E.degree() != m)
                throw std::logic_error("PlaneJac::reduce: bad reduced divisor");
            return finish(std::move(E));
        }
        throw std::logic_error("PlaneJac::reduce: no section found");
    }

    PJacElt from_place(const PPlace& P) const {
        PDivisor D;
        D.add(P, 1);
        return reduce(D);
    }

    PJacElt add(const PJacElt& a, const PJacElt& b) const {
        PDivisor D = a.E;
        D.add_divisor(b.E);
        return reduce(D);
    }
    PJacElt neg(const PJacElt& a) const {
        PDivisor D;
        D.add_divisor(a.E, -1);
        return reduce(D);
    }
    PJacElt sub(const PJacElt& a, const PJacElt& b) const { return add(a, neg(b)); }

    PJacElt mul(const PJacElt& a, Int n) const {
        if (n < 0) return mul(neg(a), -n);
        PJacElt r = zero(), p = a;
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t())) r = add(r, p);
            n >>= 1;
            if (n > 0) p = add(p, p);
        }
        return r;
    }

    Int element_order(const PJacElt& a, const Int& N) const {
        Int o = N;
        for (auto& [p, e] : factor_int(N)) {
            for (int i = 0; i < e; ++i) {
                Int t = o / p;
                if (is_zero(mul(a, t))) o = t;
                else break;
            }
        }
        return o;
    }

    PJacElt random_element(std::mt19937_64& rng) const {
        const auto& K = C.K;
        for (int tries = 0; tries < 4000; ++tries) {
            std::uint64_t x0 = rng() % K.p;
            Poly<FpField> e = poly_const(K, x0);
            auto quartic = bipoly_at_u(make_fq(K.p, 1), K, C.Qchart[2], e);
            // factor the fiber polynomial over F_p via its F_p-coefficients
            Poly<FpField> fib;
            for (auto& cc : quartic.c) fib.c.push_back(cc.is_zero() ? 0 : cc.c[0]);
            fib.trim(K);
            if (fib.is_zero()) continue;
            auto facs = poly_factor(K, fib);
            std::vector<std::pair<Poly<FpField>, int>> small;
            for (auto& [w, m] : facs)
                if (w.deg() >= 1 && w.deg() <= 2) small.push_back({w, m});
            if (small.empty()) continue;
            auto& w = small[rng() % small.size()].first;
            int d = w.deg();
            auto F = make_fq(K.p, d);
            Poly<FqField> wf;
            for (auto& cc : w.c) wf.c.push_back(F.from_base(cc));
            wf.trim(F);
            auto roots = poly_roots(F, wf);
            if (roots.empty()) continue;
            auto P = C.make_place(F, d, std::array<FqField::Elt, 3>{F.from_base(x0), roots.front().first, F.one()});
            return from_place(P);
        }
        throw std::logic_error("PlaneJac::random_element: no points found");
    }

private:
    PJacElt finish(PDivisor E) const {
        PJacElt e;
        e.key = E.key();
        e.E = std::move(E);
        return e;
    }
};

} // namespace ag
