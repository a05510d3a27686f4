#pragma once
// q-expansion fitting: recover maps between curve models from expansions,
// certify them by the divisor-degree bound, find homogeneous relations
// between forms, and express a cusp form as a differential on a model.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ag/curves.hpp"
#include "ag/linalg.hpp"
#include "ag/rings.hpp"
#include "ag/series.hpp"

#include "json.hpp"

namespace ag {

// ---- fixture loading ------------------------------------------------------

// Expansion stored as {"val": v, "coeffs": [...]} with coefficients given
// as integers or as exact rational strings ("a/b").
inline Series<QField> load_qexp(const QField& K, const nlohmann::json& j) {
    int val = j.at("val").get<int>();
    std::vector<Rat> cs;
    for (const auto& c : j.at("coeffs")) {
        if (c.is_string()) {
            Rat r(c.get<std::string>());
            r.canonicalize();
            cs.push_back(r);
        } else {
            cs.push_back(Rat(c.get<long>()));
        }
    }
    return series_make(K, val, cs, val + (int)cs.size());
}

// ---- monomial evaluation --------------------------------------------------

// Exponent vectors of all monomials in nvars variables of total degree d,
// in lexicographic order.
inline std::vector<std::vector<int>> monomials_of_degree(int nvars, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(nvars, 0);
    auto rec = [&](auto&& self, int i, int rem) -> void {
        if (i == nvars - 1) {
            e[i] = rem;
            out.push_back(e);
            return;
        }
        for (int k = rem; k >= 0; --k) {
            e[i] = k;
            self(self, i + 1, rem - k);
        }
    };
    if (nvars > 0) rec(rec, 0, d);
    return out;
}

template <class R>
Series<R> eval_monomial(const R& K, const std::vector<Series<R>>& xs,
                        const std::vector<int>& e) {
    if (xs.size() != e.size())
        throw std::invalid_argument("eval_monomial: arity mismatch");
    int prec = xs.empty() ? 0 : xs[0].prec;
    for (const auto& s : xs) prec = std::min(prec, s.prec);
    Series<R> acc = series_const(K, K.one(), prec);
    for (size_t i = 0; i < xs.size(); ++i)
        for (int k = 0; k < e[i]; ++k) acc = series_mul(K, acc, xs[i]);
    return acc;
}

// Evaluate a form given as (exponent vector, coefficient) terms.
template <class R>
Series<R> eval_form(const R& K, const std::vector<Series<R>>& xs,
                    const std::vector<std::pair<std::vector<int>, typename R::Elt>>& g) {
    int prec = xs.empty() ? 0 : xs[0].prec;
    for (const auto& s : xs) prec = std::min(prec, s.prec);
    Series<R> acc = series_zero(K, prec);
    for (const auto& [e, c] : g) {
        auto t = series_mul(K, eval_monomial(K, xs, e), series_const(K, c, prec));
        acc = series_add(K, acc, t);
    }
    return acc;
}

// ---- integer normalization ------------------------------------------------

// Scale a rational vector to a primitive integer vector; the first nonzero
// entry at or after index `sign_from` (falling back to the first nonzero
// entry overall) is made positive.
inline std::vector<Rat> primitive_vector(std::vector<Rat> v, size_t sign_from = 0) {
    Int den = 1, num = 0;
    for (const auto& r : v) {
        den = lcm_int(den, r.get_den());
        num = gcd_int(num, r.get_num());
    }
    if (num == 0) return v;
    Rat scale(den, num);
    scale.canonicalize();
    for (auto& r : v) { r *= scale; r.canonicalize(); }
    size_t lead = v.size();
    for (size_t i = sign_from; i < v.size(); ++i)
        if (v[i] != 0) { lead = i; break; }
    if (lead == v.size())
        for (size_t i = 0; i < sign_from; ++i)
            if (v[i] != 0) { lead = i; break; }
    if (lead < v.size() && v[lead] < 0)
        for (auto& r : v) r = -r;
    return v;
}

// ---- map fitting -----------------------------------------------------------

// Fit of target = (sum p_i num_i) / (sum r_j den_j) against q-expansions.
// `prec` is the first q-exponent the fit was not checked at.
struct MapFit {
    std::string status;  // "certified" | "uncertified" | "failed"
    std::vector<Rat> p, r;
    int prec = 0;
};

// Solve sum_i p_i num[i] - target * sum_j r[j] den[j] = 0 on coefficients.
// The fit is certified when the solution is unique up to scalar, survives a
// direct series recheck, and the checked precision exceeds cert_bound (the
// degree bound 2 deg(source cover) * deg(coordinate cover)).
inline MapFit fit_map(const QField& K, const Series<QField>& target,
                      const std::vector<Series<QField>>& num,
                      const std::vector<Series<QField>>& den, long cert_bound) {
    if (num.empty() || den.empty())
        throw std::invalid_argument("fit_map: empty basis");
    std::vector<Series<QField>> cols;
    for (const auto& s : num) cols.push_back(s);
    for (const auto& s : den) cols.push_back(series_mul(K, target, s));
    int lo = cols[0].val, hi = cols[0].prec;
    for (const auto& s : cols) {
        lo = std::min(lo, s.val);
        hi = std::min(hi, s.prec);
    }
    MapFit fit;
    fit.prec = hi;
    if (hi <= lo) { fit.status = "failed"; return fit; }
    Mat<QField> M(K, hi - lo, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j)
        for (int n = lo; n < hi; ++n)
            M.at(n - lo, j) = series_coeff(K, cols[j], n);
    auto ker = kernel_basis(K, M);
    if (ker.empty()) { fit.status = "failed"; return fit; }
    auto v = primitive_vector(ker[0], num.size());
    fit.p.assign(v.begin(), v.begin() + num.size());
    // relation columns carry -r, so the denominator flips sign
    for (size_t j = num.size(); j < v.size(); ++j) fit.r.push_back(-v[j]);
    bool r_nonzero = std::any_of(fit.r.begin(), fit.r.end(),
                                 [](const Rat& x) { return x != 0; });
    // direct recheck of the fitted relation
    int prec = hi;
    Series<QField> lhs = series_zero(K, prec), rhs = series_zero(K, prec);
    for (size_t i = 0; i < num.size(); ++i)
        lhs = series_add(K, lhs, series_mul(K, num[i], series_const(K, fit.p[i], prec)));
    for (size_t j = 0; j < den.size(); ++j)
        rhs = series_add(K, rhs, series_mul(K, den[j], series_const(K, fit.r[j], prec)));
    rhs = series_mul(K, target, rhs);
    bool verified = series_sub(K, lhs, rhs).is_zero();
    if (ker.size() == 1 && r_nonzero && verified && (long)hi > cert_bound)
        fit.status = "certified";
    else
        fit.status = "uncertified";
    return fit;
}

// ---- model relations --------------------------------------------------------

struct RelationBasis {
    std::vector<std::vector<int>> monos;   // degree-d exponent vectors
    std::vector<std::vector<Rat>> rels;    // each row: coefficients on monos
};

// Homogeneous degree-d relations vanishing on (f_0 : ... : f_n), as the
// kernel of the monomial-evaluation matrix; each relation is rechecked by
// direct series arithmetic to the full shared precision.
inline RelationBasis find_model_relations(const QField& K,
                                          const std::vector<Series<QField>>& fs,
                                          int d) {
    RelationBasis out;
    out.monos = monomials_of_degree((int)fs.size(), d);
    std::vector<Series<QField>> cols;
    for (const auto& e : out.monos) cols.push_back(eval_monomial(K, fs, e));
    int lo = cols[0].val, hi = cols[0].prec;
    for (const auto& s : cols) {
        lo = std::min(lo, s.val);
        hi = std::min(hi, s.prec);
    }
    if (hi <= lo) return out;
    Mat<QField> M(K, hi - lo, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j)
        for (int n = lo; n < hi; ++n)
            M.at(n - lo, j) = series_coeff(K, cols[j], n);
    for (auto& v : kernel_basis(K, M)) {
        auto rel = primitive_vector(std::move(v));
        Series<QField> acc = series_zero(K, hi);
        for (size_t j = 0; j < cols.size(); ++j)
            acc = series_add(K, acc, series_mul(K, cols[j], series_const(K, rel[j], hi)));
        if (!acc.is_zero())
            throw std::runtime_error("find_model_relations: recheck failed");
        out.rels.push_back(std::move(rel));
    }
    return out;
}

// ---- differentials ----------------------------------------------------------

// Exact expression of a target expansion in the span of basis expansions.
// When the target is not in the span, `ok` is false and `residual_val` is
// the first exponent where the best pivot solve leaves a mismatch.
template <class F>
struct SpanFit {
    bool ok = false;
    std::vector<typename F::Elt> c;
    int residual_val = 0;
};

template <class F>
SpanFit<F> cuspform_to_differential(const F& K, const Series<F>& target,
                                    const std::vector<Series<F>>& basis) {
    if (basis.empty()) throw std::invalid_argument("cuspform_to_differential: empty basis");
    int lo = target.val, hi = target.prec;
    for (const auto& s : basis) {
        lo = std::min(lo, s.val);
        hi = std::min(hi, s.prec);
    }
    SpanFit<F> fit;
    if (hi <= lo) return fit;
    Mat<F> A(K, hi - lo, (int)basis.size());
    std::vector<typename F::Elt> b((size_t)(hi - lo), K.zero());
    for (int j = 0; j < (int)basis.size(); ++j)
        for (int n = lo; n < hi; ++n)
            A.at(n - lo, j) = series_coeff(K, basis[j], n);
    for (int n = lo; n < hi; ++n) b[n - lo] = series_coeff(K, target, n);
    std::vector<typename F::Elt> x;
    if (mat_solve(K, A, b, x)) {
        fit.ok = true;
        fit.c = std::move(x);
        fit.residual_val = hi;
        return fit;
    }
    // inconsistent: solve on the leading rows a pivot solve can satisfy, then
    // report the first exponent where the residual is nonzero
    int k = std::min(hi - lo, (int)basis.size());
    Mat<F> Ak(K, k, (int)basis.size());
    std::vector<typename F::Elt> bk((size_t)k, K.zero());
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < (int)basis.size(); ++j) Ak.at(i, j) = A.at(i, j);
        bk[i] = b[i];
    }
    if (!mat_solve(K, Ak, bk, x)) x.assign(basis.size(), K.zero());
    fit.c = x;
    Series<F> acc = series_zero(K, hi);
    for (size_t j = 0; j < basis.size(); ++j)
        acc = series_add(K, acc, series_mul(K, basis[j], series_const(K, fit.c[j], hi)));
    auto res = series_sub(K, target, acc);
    fit.residual_val = res.val;
    return fit;
}

// Expansion of g(x_0, ..., x_n) * d(x_0/x_n)/dt in the local parameter t of
// the coordinate expansions. Works over any exact coefficient field.
template <class R>
Series<R> differential_expansion(const R& K, const std::vector<Series<R>>& xs,
                                 const std::vector<std::pair<std::vector<int>, typename R::Elt>>& g) {
    if (xs.size() < 2)
        throw std::invalid_argument("differential_expansion: need at least two coordinates");
    auto gval = eval_form(K, xs, g);
    auto ratio = series_div(K, xs.front(), xs.back());
    return series_mul(K, gval, series_derivative(K, ratio));
}

}  // namespace ag
