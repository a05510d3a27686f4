#pragma once
// Truncated Laurent/power series over a ring handle: sum_{i>=val} c[i-val] x^i
// with all terms of exponent >= prec unknown. Leading zero coefficients are
// trimmed into val on construction. Asking for a coefficient at or beyond the
// precision throws rather than silently returning zero.

#include <vector>
#include <stdexcept>
#include <algorithm>

namespace ag {

template <class R>
struct Series {
    using Elt = typename R::Elt;
    int val = 0;
    int prec = 0; // exponents >= prec are unknown
    std::vector<Elt> c;

    bool is_zero() const { return c.empty(); }
    int known_terms() const { return (int)c.size(); }
};

template <class R>
Series<R> series_make(const R& K, int val, std::vector<typename R::Elt> cs, int prec) {
    Series<R> s;
    s.prec = prec;
    size_t i = 0;
    while (i < cs.size() && K.is_zero(cs[i])) ++i;
    s.val = val + (int)i;
    if (s.val >= prec) { s.val = prec; s.c.clear(); return s; }
    cs.erase(cs.begin(), cs.begin() + i);
    if ((int)cs.size() > prec - s.val) cs.resize(prec - s.val);
    // trailing zeros are implicit (coefficients below prec default to zero)
    while (!cs.empty() && K.is_zero(cs.back())) cs.pop_back();
    s.c = std::move(cs);
    if (s.c.empty()) s.val = prec;
    return s;
}

template <class R>
Series<R> series_zero(const R& K, int prec) {
    (void)K;
    Series<R> s;
    s.val = prec;
    s.prec = prec;
    return s;
}

template <class R>
Series<R> series_const(const R& K, typename R::Elt a, int prec) {
    return series_make(K, 0, {a}, prec);
}

// x itself
template <class R>
Series<R> series_x(const R& K, int prec) {
    return series_make(K, 1, {K.one()}, prec);
}

template <class R>
typename R::Elt series_coeff(const R& K, const Series<R>& s, int n) {
    if (n >= s.prec) throw std::out_of_range("series_coeff: beyond precision");
    if (n < s.val || n - s.val >= (int)s.c.size()) return K.zero();
    return s.c[n - s.val];
}

template <class R>
Series<R> series_add(const R& K, const Series<R>& a, const Series<R>& b) {
    int prec = std::min(a.prec, b.prec);
    int val = std::min({a.val, b.val, prec});
    std::vector<typename R::Elt> cs;
    for (int n = val; n < prec; ++n) {
        typename R::Elt x = K.zero();
        if (n >= a.val && n - a.val < (int)a.c.size()) x = K.add(x, a.c[n - a.val]);
        if (n >= b.val && n - b.val < (int)b.c.size()) x = K.add(x, b.c[n - b.val]);
        cs.push_back(x);
    }
    return series_make(K, val, std::move(cs), prec);
}

template <class R>
Series<R> series_neg(const R& K, const Series<R>& a) {
    Series<R> r = a;
    for (auto& x : r.c) x = K.neg(x);
    return r;
}

template <class R>
Series<R> series_sub(const R& K, const Series<R>& a, const Series<R>& b) {
    return series_add(K, a, series_neg(K, b));
}

template <class R>
Series<R> series_scale(const R& K, const Series<R>& a, typename R::Elt s) {
    std::vector<typename R::Elt> cs;
    cs.reserve(a.c.size());
    for (auto& x : a.c) cs.push_back(K.mul(x, s));
    return series_make(K, a.val, std::move(cs), a.prec);
}

template <class R>
Series<R> series_mul(const R& K, const Series<R>& a, const Series<R>& b) {
    if (a.is_zero() || b.is_zero()) {
        // product vanishes to the best provable precision
        int prec = std::min(a.is_zero() ? a.prec + b.val : a.prec,
                            b.is_zero() ? b.prec + a.val : b.prec);
        Series<R> z;
        z.val = prec; z.prec = prec;
        return z;
    }
    int prec = std::min(a.prec + b.val, b.prec + a.val);
    int val = a.val + b.val;
    int n = prec - val;
    std::vector<typename R::Elt> cs(n, K.zero());
    for (int i = 0; i < (int)a.c.size(); ++i) {
        if (K.is_zero(a.c[i])) continue;
        int jmax = std::min((int)b.c.size(), n - i);
        for (int j = 0; j < jmax; ++j)
            cs[i + j] = K.add(cs[i + j], K.mul(a.c[i], b.c[j]));
    }
    return series_make(K, val, std::move(cs), prec);
}

// Multiply by x^k (shifts valuation and precision).
template <class R>
Series<R> series_shift(const R& K, const Series<R>& a, int k) {
    (void)K;
    Series<R> r = a;
    r.val += k;
    r.prec += k;
    return r;
}

// Truncate to a lower precision.
template <class R>
Series<R> series_truncate(const R& K, const Series<R>& a, int prec) {
    if (prec >= a.prec) return a;
    std::vector<typename R::Elt> cs = a.c;
    return series_make(K, a.val, std::move(cs), prec);
}

// Inverse of a series whose leading coefficient is a unit.
template <class R>
Series<R> series_inv(const R& K, const Series<R>& a) {
    if (a.is_zero()) throw std::domain_error("series_inv: zero series");
    int n = a.prec - a.val; // number of known coefficients
    auto lead_inv = K.inv(a.c[0]);
    std::vector<typename R::Elt> cs(n, K.zero());
    cs[0] = lead_inv;
    for (int k = 1; k < n; ++k) {
        typename R::Elt s = K.zero();
        for (int j = 1; j <= k && j < (int)a.c.size(); ++j)
            s = K.add(s, K.mul(a.c[j], cs[k - j]));
        cs[k] = K.neg(K.mul(lead_inv, s));
    }
    return series_make(K, -a.val, std::move(cs), a.prec - 2 * a.val);
}

template <class R>
Series<R> series_div(const R& K, const Series<R>& a, const Series<R>& b) {
    return series_mul(K, a, series_inv(K, b));
}

// Substitute b (with val >= 1) into a: a(b(x)). a must be a power series
// (val >= 0) unless b has valuation exactly 1 amd is invertible... callers
// here only substitute into power series.
template <class R>
Series<R> series_compose(const R& K, const Series<R>& a, const Series<R>& b) {
    if (!a.is_zero() && a.val < 0)
        throw std::domain_error("series_compose: negative valuation");
    if (!b.is_zero() && b.val < 1)
        throw std::domain_error("series_compose: substituted series needs val >= 1");
    int prec = std::min(b.prec, a.prec * std::max(b.is_zero() ? 1 : b.val, 1));
    Series<R> r = series_zero(K, prec);
    // Horner from the top known coefficient
    for (int i = (int)a.c.size() - 1; i >= 0; --i) {
        r = series_mul(K, r, b);
        r = series_add(K, r, series_const(K, a.c[i], prec));
    }
    for (int i = 0; i < a.val; ++i) r = series_mul(K, r, b);
    return r;
}

// Derivative. Coefficients are multiplied by small integers via repeated
// addition so the handle does not need a from_int.
template <class R>
Series<R> series_derivative(const R& K, const Series<R>& a) {
    int val = a.val - 1;
    std::vector<typename R::Elt> cs;
    for (int i = 0; i < (int)a.c.size(); ++i) {
        int n = a.val + i; // exponent in a; contributes n*c at exponent n-1
        typename R::Elt m = K.zero();
        int nn = n < 0 ? -n : n;
        for (int j = 0; j < nn; ++j) m = K.add(m, a.c[i]);
        if (n < 0) m = K.neg(m);
        cs.push_back(m);
    }
    return series_make(K, val, std::move(cs), a.prec - 1);
}

// Square root of a series of even valuation whose leading coefficient root
// is supplied by the caller.
template <class R>
Series<R> series_sqrt(const R& K, const Series<R>& a, typename R::Elt lead_root) {
    if (a.is_zero()) throw std::domain_error("series_sqrt: zero series");
    if (a.val % 2 != 0) throw std::domain_error("series_sqrt: odd valuation");
    int n = a.prec - a.val;
    std::vector<typename R::Elt> cs(n, K.zero());
    cs[0] = lead_root;
    auto inv2lead = K.inv(K.add(lead_root, lead_root));
    for (int k = 1; k < n; ++k) {
        // coefficient of x^k in a (relative) minus sum_{j=1}^{k-1} c_j c_{k-j}
        typename R::Elt s = (k < (int)a.c.size()) ? a.c[k] : K.zero();
        for (int j = 1; j < k; ++j)
            s = K.sub(s, K.mul(cs[j], cs[k - j]));
        cs[k] = K.mul(s, inv2lead);
    }
    return series_make(K, a.val / 2, std::move(cs), a.prec - a.val / 2);
}

} // namespace ag
