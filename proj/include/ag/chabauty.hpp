#pragma once
// Chabauty-style linear algebra on a nodal plane sextic with a diagonal
// involution: local expansions of the adjoint differentials at reduced
// points, rank tests on the resulting coefficient matrices, and tiny p-adic
// integrals on hyperelliptic models that cross-check the expansion code.

#include "ag/curves.hpp"
#include "ag/fq.hpp"
#include "ag/factor_fq.hpp"
#include "ag/linalg.hpp"
#include "ag/padic.hpp"
#include "ag/series.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ag {

// -------------------------------------------------------------------------
// Involution bookkeeping

// Parse a diagonal involution written as "(u:v:w) -> (u:-v:w)" into the
// sign of each coordinate.
inline std::array<int, 3> parse_diag_involution(const std::string& s) {
    auto arrow = s.find("->");
    if (arrow == std::string::npos) throw std::runtime_error("involution: missing ->");
    std::string rhs = s.substr(arrow + 2);
    std::array<int, 3> sgn{};
    int idx = 0, cur = 1;
    for (char ch : rhs) {
        if (ch == '-') cur = -1;
        else if (std::isalpha((unsigned char)ch)) {
            if (idx >= 3) throw std::runtime_error("involution: too many coordinates");
            sgn[(size_t)idx++] = cur;
            cur = 1;
        }
    }
    if (idx != 3) throw std::runtime_error("involution: expected three coordinates");
    return sgn;
}

// Common sign of a polynomial under the diagonal substitution, or 0 if the
// monomials disagree (i.e. the polynomial is not an eigenvector).
inline int diag_parity(const MonomialPoly& A, const std::array<int, 3>& sgn) {
    int par = 0;
    for (auto& [e, c] : A.terms) {
        (void)c;
        int s = 1;
        for (int i = 0; i < 3; ++i)
            if (sgn[(size_t)i] < 0 && e[(size_t)i] % 2) s = -s;
        if (par == 0) par = s;
        else if (par != s) return 0;
    }
    return par;
}

// Eigenvalue of the involution pullback on each adjoint differential
// A (u dv - v du) / S_w. For sigma = diag(s0,s1,s2) with S o sigma = eS * S,
// sigma^* omega_A = s0 s1 s2 * eS * omega_{A o sigma}.
inline std::vector<int> involution_diag_on_adjoints(const MonomialPoly& S,
                                                    const std::vector<MonomialPoly>& adj,
                                                    const std::array<int, 3>& sgn) {
    int eS = diag_parity(S, sgn);
    if (eS == 0) throw std::runtime_error("involution does not preserve the curve");
    int vol = sgn[0] * sgn[1] * sgn[2];
    std::vector<int> diag;
    for (auto& A : adj) {
        int eA = diag_parity(A, sgn);
        if (eA == 0) throw std::runtime_error("adjoint is not an involution eigenvector");
        diag.push_back(vol * eS * eA);
    }
    return diag;
}

// A projective-linear involution on a canonically embedded curve acts on
// differentials only up to a global sign. Resolve the lift by requiring the
// +1-eigenspace to have the dimension of the quotient's space of
// differentials, i.e. its genus.
inline std::vector<int> resolve_involution_sign(const std::vector<int>& coord_diag,
                                                int quotient_genus) {
    int hits = 0, sign = 0;
    for (int s : {+1, -1}) {
        int plus = 0;
        for (int d : coord_diag)
            if (s * d == +1) ++plus;
        if (plus == quotient_genus) { ++hits; sign = s; }
    }
    if (hits != 1) throw std::runtime_error("involution lift sign is not determined by the quotient genus");
    std::vector<int> out;
    for (int d : coord_diag) out.push_back(sign * d);
    return out;
}

// -------------------------------------------------------------------------
// Problem data

inline MonomialPoly mp_partial(const MonomialPoly& S, int var) {
    MonomialPoly r;
    r.nvars = S.nvars;
    for (auto& [e, c] : S.terms) {
        if (e[(size_t)var] == 0) continue;
        auto e2 = e;
        e2[(size_t)var] -= 1;
        r.terms[e2] += c * Rat(e[(size_t)var]);
    }
    return r;
}

struct ChabautyProblem {
    MonomialPoly S, Su, Sv;          // curve and u-, v-partials
    std::vector<MonomialPoly> omega; // adjoint numerators, Ker(1+w*) block first
    int n_C = 0;                     // size of the leading anti-invariant block
    std::array<int, 3> sgn{};        // diagonal involution signs

    static ChabautyProblem from_catalog(const Catalog& cat, const std::string& name) {
        ChabautyProblem X;
        X.S = cat.plane_equation(name);
        X.Su = mp_partial(X.S, 0);
        X.Sv = mp_partial(X.S, 1);
        X.sgn = parse_diag_involution(cat.curve(name).at("involution").get<std::string>());
        auto adj = cat.adjoints(name);
        auto diag = involution_diag_on_adjoints(X.S, adj, X.sgn);
        // anti-invariant block first: these span Ker(1 + w*), the space of
        // differentials seen by the rank-2 piece of the Jacobian
        for (size_t i = 0; i < adj.size(); ++i)
            if (diag[i] == -1) X.omega.push_back(adj[i]);
        X.n_C = (int)X.omega.size();
        for (size_t i = 0; i < adj.size(); ++i)
            if (diag[i] == +1) X.omega.push_back(adj[i]);
        return X;
    }
};

// -------------------------------------------------------------------------
// Local expansions in the affine chart w = 1

template <class E>
struct ChartPoint {
    typename E::Elt u, v;
};

template <class E>
bool elt_is_unit(const E& K, const typename E::Elt& a) {
    return !K.is_zero(a);
}
inline bool elt_is_unit(const ZqRing& K, const ZqRing::Elt& a) { return K.val(a) == 0; }

// Evaluate a trivariate polynomial at (U(t), V(t), 1).
template <class E>
Series<E> mp_eval_series(const E& K, const MonomialPoly& A,
                         const Series<E>& U, const Series<E>& V) {
    int prec = std::min(U.prec, V.prec);
    int du = 0, dv = 0;
    for (auto& [e, c] : A.terms) {
        (void)c;
        du = std::max(du, e[0]);
        dv = std::max(dv, e[1]);
    }
    std::vector<Series<E>> up{series_const(K, K.one(), prec)}, vp = up;
    for (int i = 1; i <= du; ++i) up.push_back(series_mul(K, up.back(), U));
    for (int i = 1; i <= dv; ++i) vp.push_back(series_mul(K, vp.back(), V));
    Series<E> r = series_zero(K, prec);
    for (auto& [e, c] : A.terms) {
        auto t = series_scale(K, series_mul(K, up[(size_t)e[0]], vp[(size_t)e[1]]), K.from_rat(c));
        r = series_add(K, r, t);
    }
    return r;
}

template <class E>
struct LocalChart {
    int par;        // 0: t = u - u0, 1: t = v - v0
    Series<E> U, V; // coordinate functions of t
};

// Expand the curve around a smooth chart point, solving for the dependent
// coordinate by Newton iteration. par < 0 picks the first coordinate whose
// partial derivative is a unit, in the fixed order (v-partial, then
// u-partial), so the choice is deterministic.
template <class E>
LocalChart<E> local_chart(const E& K, const ChabautyProblem& X,
                          const ChartPoint<E>& P, int prec, int par = -1) {
    std::vector<typename E::Elt> at{P.u, P.v, K.one()};
    auto sv = X.Sv.eval(K, at);
    auto su = X.Su.eval(K, at);
    if (par < 0) par = elt_is_unit(K, sv) ? 0 : 1;
    const auto& dep_deriv = par == 0 ? sv : su;
    if (!elt_is_unit(K, dep_deriv))
        throw std::domain_error("local_chart: dependent partial is not a unit (singular point or bad parameter)");

    auto t = series_x(K, prec);
    Series<E> indep = series_add(K, series_const(K, par == 0 ? P.u : P.v, prec), t);
    Series<E> dep = series_const(K, par == 0 ? P.v : P.u, prec);
    auto curve_at = [&](const Series<E>& d) {
        return par == 0 ? mp_eval_series(K, X.S, indep, d) : mp_eval_series(K, X.S, d, indep);
    };
    auto deriv_at = [&](const Series<E>& d) {
        return par == 0 ? mp_eval_series(K, X.Sv, indep, d) : mp_eval_series(K, X.Su, d, indep);
    };
    for (int it = 0; it < 2 * prec + 4; ++it) {
        auto err = curve_at(dep);
        if (err.is_zero()) break;
        dep = series_sub(K, dep, series_div(K, err, deriv_at(dep)));
    }
    if (!curve_at(dep).is_zero())
        throw std::runtime_error("local_chart: Newton iteration failed to converge");
    LocalChart<E> ch;
    ch.par = par;
    ch.U = par == 0 ? indep : dep;
    ch.V = par == 0 ? dep : indep;
    return ch;
}

// First m expansion coefficients of each adjoint differential at P, in the
// local parameter of the chart: omega_A = A du / S_v = -A dv / S_u.
template <class E>
std::vector<std::vector<typename E::Elt>> expansion_rows(const E& K, const ChabautyProblem& X,
                                                         const ChartPoint<E>& P, int m,
                                                         int par = -1) {
    auto ch = local_chart(K, X, P, m + 2, par);
    Series<E> den;
    if (ch.par == 0) den = mp_eval_series(K, X.Sv, ch.U, ch.V);
    else den = series_neg(K, mp_eval_series(K, X.Su, ch.U, ch.V));
    auto den_inv = series_inv(K, den);
    std::vector<std::vector<typename E::Elt>> rows;
    for (auto& A : X.omega) {
        auto w = series_mul(K, mp_eval_series(K, A, ch.U, ch.V), den_inv);
        std::vector<typename E::Elt> cs;
        for (int n = 0; n < m; ++n) cs.push_back(series_coeff(K, w, n));
        rows.push_back(std::move(cs));
    }
    return rows;
}

// -------------------------------------------------------------------------
// Reduction of algebraic points mod p

struct ReducedPlacePoint {
    FqField F; // residue field of the place
    FqField::Elt u, v;
    int mult = 1;
};

inline AlgebraicPoint apply_diag_involution(const AlgebraicPoint& P, const std::array<int, 3>& sgn) {
    AlgebraicPoint Q = P;
    for (size_t i = 0; i < Q.coords.size() && i < 3; ++i)
        if (sgn[i] < 0)
            for (auto& c : Q.coords[i]) c = -c;
    return Q;
}

// Reduce the Galois-orbit divisor of P modulo p: one place per irreducible
// factor of the minimal polynomial, with the factor multiplicity. Throws if
// the point meets w = 0 or if conjugate coordinates collide (the divisor
// would stop being a sum of distinct chart points with clean multiplicity).
inline std::vector<ReducedPlacePoint> reduce_point_mod_p(const AlgebraicPoint& P, std::uint64_t p) {
    FqField F1 = make_fq(p, 1);
    Poly<FqField> mp;
    for (auto& c : P.minpoly) mp.c.push_back(F1.from_rat(c));
    mp.trim(F1);
    if (mp.deg() < 1) throw std::runtime_error("reduce_point_mod_p: minimal polynomial degenerates mod p");
    auto facs = poly_factor(F1, mp);
    std::vector<ReducedPlacePoint> out;
    for (auto& [g, e] : facs) {
        int k = g.deg();
        FqField F = make_fq(p, k);
        Poly<FqField> gF;
        for (auto& c : g.c) gF.c.push_back(poly_const(F.base, c.deg() >= 0 ? c.c[0] : F.base.zero()));
        gF.trim(F);
        auto rts = poly_roots(F, gF);
        if (rts.empty()) throw std::runtime_error("reduce_point_mod_p: no root in the residue field");
        auto theta = rts.front().first;
        auto eval_coord = [&](const std::vector<Rat>& cs) {
            auto acc = F.zero();
            auto pw = F.one();
            for (auto& c : cs) {
                acc = F.add(acc, F.mul(F.from_rat(c), pw));
                pw = F.mul(pw, theta);
            }
            return acc;
        };
        auto wc = eval_coord(P.coords.at(2));
        if (F.is_zero(wc)) throw std::runtime_error("reduce_point_mod_p: point meets w = 0 mod p");
        auto wi = F.inv(wc);
        ReducedPlacePoint rp;
        rp.F = F;
        rp.u = F.mul(eval_coord(P.coords.at(0)), wi);
        rp.v = F.mul(eval_coord(P.coords.at(1)), wi);
        rp.mult = e;
        // the k Frobenius conjugates must stay distinct for the reduced
        // divisor to consist of distinct geometric points
        auto fu = rp.u, fv = rp.v;
        for (int i = 1; i < k; ++i) {
            fu = F.pow(fu, Int((unsigned long)p));
            fv = F.pow(fv, Int((unsigned long)p));
            if (F.eq(fu, rp.u) && F.eq(fv, rp.v))
                throw std::runtime_error("reduce_point_mod_p: degenerate reduction (conjugates collide)");
        }
        bool merged = false;
        for (auto& q : out)
            if (q.F.d == k && q.F.eq(q.u, rp.u) && q.F.eq(q.v, rp.v)) {
                q.mult += e;
                merged = true;
                break;
            }
        if (!merged) out.push_back(std::move(rp));
    }
    return out;
}

// -------------------------------------------------------------------------
// Rank tests

struct RankReport {
    int n = 0, n_C = 0, deg = 0;
    int rank_A = 0, rank_AC = 0;
    // rank(A) = 4 certifies that the residue class contains no rational
    // divisor other than the known one; rank of the anti-invariant block at
    // 2 (resp. 3) certifies the pullback (resp. pullback-plus-point) shape.
    bool isolated() const { return rank_A >= 4; }
    bool forces_pullback() const { return rank_AC >= 2; }
    bool forces_partial_pullback() const { return rank_AC >= 3; }
};

inline RankReport chabauty_ranks(const ChabautyProblem& X,
                                 const std::vector<ReducedPlacePoint>& pts,
                                 std::uint64_t p) {
    if (p < 17)
        throw std::invalid_argument("chabauty_ranks: the residue-class criterion needs p >= 17");
    RankReport rep;
    rep.n = (int)X.omega.size();
    rep.n_C = X.n_C;
    FpField Kp(p);
    std::vector<std::vector<FpField::Elt>> rows;
    for (auto& pt : pts) {
        int k = pt.F.d;
        rep.deg += pt.mult * k;
        auto ex = expansion_rows(pt.F, X, ChartPoint<FqField>{pt.u, pt.v}, pt.mult);
        // restriction of scalars: a row over F_{p^k} contributes k rows over
        // F_p with the same span as the stack of its Frobenius conjugates
        for (int l = 0; l < pt.mult; ++l)
            for (int r = 0; r < k; ++r) {
                std::vector<FpField::Elt> row;
                for (int j = 0; j < rep.n; ++j) {
                    const auto& a = ex[(size_t)j][(size_t)l];
                    row.push_back(r <= a.deg() ? a.c[(size_t)r] : Kp.zero());
                }
                rows.push_back(std::move(row));
            }
    }
    if (rep.deg > 4)
        throw std::invalid_argument("chabauty_ranks: degree-4 symmetric power only");
    Mat<FpField> A(Kp, (int)rows.size(), rep.n);
    Mat<FpField> AC(Kp, (int)rows.size(), rep.n_C);
    for (int i = 0; i < (int)rows.size(); ++i)
        for (int j = 0; j < rep.n; ++j) {
            A.at(i, j) = rows[(size_t)i][(size_t)j];
            if (j < rep.n_C) AC.at(i, j) = rows[(size_t)i][(size_t)j];
        }
    rep.rank_A = mat_rank(Kp, A);
    rep.rank_AC = mat_rank(Kp, AC);
    return rep;
}

// Leading-coefficient test at a single reduced place: some differential
// from the anti-invariant block must not vanish there.
inline bool siksek_a0_nonzero(const ChabautyProblem& X, const ReducedPlacePoint& P) {
    auto ex = expansion_rows(P.F, X, ChartPoint<FqField>{P.u, P.v}, 1);
    for (int j = 0; j < X.n_C; ++j)
        if (!P.F.is_zero(ex[(size_t)j][0])) return true;
    return false;
}

// A degree-4 divisor pulled back from the quotient: two involution orbits of
// F_p-rational smooth non-fixed points, found by a deterministic scan of the
// chart. skip drops that many leading orbits so independent divisors can be
// produced.
inline std::vector<ReducedPlacePoint> fp_pullback_divisor(const ChabautyProblem& X,
                                                          std::uint64_t p, int skip = 0) {
    if (X.sgn[2] >= 0) throw std::runtime_error("fp_pullback_divisor: expects w -> -w type involution");
    FqField F = make_fq(p, 1);
    auto conj_u = [&](const FqField::Elt& u) { return X.sgn[0] < 0 ? u : F.neg(u); };
    auto conj_v = [&](const FqField::Elt& v) { return X.sgn[1] < 0 ? v : F.neg(v); };
    std::vector<ReducedPlacePoint> out;
    auto seen = [&](const FqField::Elt& u, const FqField::Elt& v) {
        for (auto& q : out)
            if (F.eq(q.u, u) && F.eq(q.v, v)) return true;
        return false;
    };
    for (std::uint64_t a = 0; a < p && out.size() < 4; ++a) {
        auto u0 = F.from_rat(Rat((unsigned long)a));
        // restrict the sextic to u = u0 and solve for v
        Poly<FqField> g;
        for (auto& [e, c] : X.S.terms) {
            auto t = F.mul(F.from_rat(c), F.pow(u0, Int(e[0])));
            while ((int)g.c.size() <= e[1]) g.c.push_back(F.zero());
            g.c[(size_t)e[1]] = F.add(g.c[(size_t)e[1]], t);
        }
        g.trim(F);
        if (g.deg() < 1) continue;
        for (auto& [v0, mu] : poly_roots(F, g)) {
            (void)mu;
            if (out.size() >= 4) break;
            std::vector<FqField::Elt> at{u0, v0, F.one()};
            if (F.is_zero(X.Su.eval(F, at)) && F.is_zero(X.Sv.eval(F, at))) continue;
            auto u1 = conj_u(u0), v1 = conj_v(v0);
            if (F.eq(u1, u0) && F.eq(v1, v0)) continue; // fixed point
            if (seen(u0, v0) || seen(u1, v1)) continue;
            if (skip > 0) { --skip; continue; }
            out.push_back({F, u0, v0, 1});
            out.push_back({F, u1, v1, 1});
        }
    }
    if (out.size() != 4) throw std::runtime_error("fp_pullback_divisor: not enough rational orbits");
    return out;
}

// -------------------------------------------------------------------------
// Tiny integrals on hyperelliptic models over Z_q

struct HypPoint {
    ZqRing::Elt x, y;
};

// Local chart of y^2 = f(x) around a non-Weierstrass point. par 0 uses
// t = x - x0; par 1 uses t = y - y0 (needs f'(x0) to be a unit).
inline std::pair<Series<ZqRing>, Series<ZqRing>> hyp_chart(const ZqRing& R,
                                                           const std::vector<ZqRing::Elt>& f,
                                                           const HypPoint& P, int prec, int par) {
    auto eval_series = [&](const std::vector<ZqRing::Elt>& cs, const Series<ZqRing>& X) {
        Series<ZqRing> r = series_zero(R, prec);
        for (size_t i = cs.size(); i-- > 0;) {
            r = series_mul(R, r, X);
            r = series_add(R, r, series_const(R, cs[i], prec));
        }
        return r;
    };
    std::vector<ZqRing::Elt> fd; // f'
    for (size_t i = 1; i < f.size(); ++i) fd.push_back(R.mul(f[i], R.from_int((long)i)));
    auto t = series_x(R, prec);
    if (par == 0) {
        if (!elt_is_unit(R, P.y)) throw std::domain_error("hyp_chart: Weierstrass point");
        auto X = series_add(R, series_const(R, P.x, prec), t);
        auto Y = series_sqrt(R, eval_series(f, X), P.y);
        return {X, Y};
    }
    auto fpx = R.zero();
    {
        auto pw = R.one();
        for (auto& c : fd) {
            fpx = R.add(fpx, R.mul(c, pw));
            pw = R.mul(pw, P.x);
        }
    }
    if (!elt_is_unit(R, fpx)) throw std::domain_error("hyp_chart: f'(x0) is not a unit");
    auto Y = series_add(R, series_const(R, P.y, prec), t);
    auto Y2 = series_mul(R, Y, Y);
    Series<ZqRing> X = series_const(R, P.x, prec);
    for (int it = 0; it < 2 * prec + 4; ++it) {
        auto err = series_sub(R, eval_series(f, X), Y2);
        if (err.is_zero()) break;
        X = series_sub(R, X, series_div(R, err, eval_series(fd, X)));
    }
    if (!series_sub(R, eval_series(f, X), Y2).is_zero())
        throw std::runtime_error("hyp_chart: Newton iteration failed to converge");
    return {X, Y};
}

// min over n > T of n - v_p(n): the provable valuation of the series tail
// after termwise integration.
inline int tiny_tail_precision(std::uint64_t p, int T) {
    int best = T + 1 + (int)p; // beyond the scan window n - v_p(n) exceeds this
    for (int n = T + 1; n <= T + (int)(p * p); ++n) {
        int v = 0;
        for (int m = n; m % (int)p == 0; m /= (int)p) ++v;
        best = std::min(best, n - v);
    }
    return best;
}

// Tiny integral of omega_i = x^i dx / (2y) between two points of the same
// residue disc, by termwise integration of the expansion at Q. The result
// precision is clamped to what the neglected tail provably supports.
inline ZqRing::Elt tiny_integral(const ZqRing& R, const HyperellipticModel& C, int i,
                                 const HypPoint& Q, const HypPoint& Rpt,
                                 int par = 0, int nterms = 0) {
    if (nterms <= 0) nterms = R.N + (int)R.p;
    std::vector<ZqRing::Elt> f;
    for (auto& c : C.f) f.push_back(R.from_rat(c));

    auto res = R.residue;
    if (!res.eq(R.residue_of(Q.x), R.residue_of(Rpt.x)) ||
        !res.eq(R.residue_of(Q.y), R.residue_of(Rpt.y)))
        throw std::domain_error("tiny_integral: endpoints are in different residue discs");

    auto [X, Y] = hyp_chart(R, f, Q, nterms + 2, par);
    Series<ZqRing> w;
    {
        auto num = series_const(R, R.one(), nterms + 2);
        for (int j = 0; j < i; ++j) num = series_mul(R, num, X);
        Series<ZqRing> dx = par == 0 ? series_const(R, R.one(), nterms + 2)
                                     : series_derivative(R, X);
        w = series_div(R, series_mul(R, num, dx),
                       series_scale(R, Y, R.from_int(2)));
    }
    auto tR = par == 0 ? R.sub(Rpt.x, Q.x) : R.sub(Rpt.y, Q.y);
    if (R.val(tR) < 1) throw std::domain_error("tiny_integral: parameter of the endpoint is not small");

    auto acc = R.zero();
    auto tpow = R.one();
    for (int n = 1; n <= nterms; ++n) {
        tpow = R.mul(tpow, tR);
        int v = 0;
        for (int m = n; m % (int)R.p == 0; m /= (int)R.p) ++v;
        if (n - v >= R.N) continue; // term vanishes to full working precision
        auto term = R.mul(series_coeff(R, w, n - 1), tpow);
        if (v) term = R.div_pow_p(term, v);
        int m = n;
        for (int j = 0; j < v; ++j) m /= (int)R.p;
        acc = R.add(acc, R.mul(term, R.inv(R.from_int(m))));
    }
    int tail = tiny_tail_precision(R.p, nterms);
    if (tail < acc.prec) acc = R.make(acc.c, tail);
    return acc;
}

} // namespace ag
