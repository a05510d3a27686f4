#pragma once
// Divisor class group arithmetic for hyperelliptic curves over prime fields.
//
// A class is represented by its canonical reduced form: the unique effective
// divisor E of minimal degree m with [D] = [E - m*B], B the degree-1 base
// place at infinity. Minimality forces l(D + m*B) = 1, so E is canonical and
// classes can be hashed by serializing E. On top of the group law we compute
// the full abelian group structure (by enumeration for small groups, by
// Sylow-subgroup sampling otherwise) and the partition calculus of torsion
// bounds: which abelian groups embed into every reduction J(F_p).

#include "ag/hyperell.hpp"
#include "ag/qfactor.hpp"
#include <unordered_map>
#include <unordered_set>
#include <random>

namespace ag {

struct JacElt {
    HDivisor<FpField> E;
    std::string key;
};

class JacFp {
public:
    using Elt = JacElt;

    HypCurve<FpField> C;
    HPlace<FpField> base;

    explicit JacFp(HypCurve<FpField> curve) : C(std::move(curve)) {
        base = C.inf_plus();
        if (base.degree() != 1) throw std::invalid_argument("JacFp: base place not rational");
    }

    JacElt zero() const { return finish(HDivisor<FpField>{}); }
    bool is_zero(const JacElt& e) const { return e.E.empty(); }
    bool eq(const JacElt& a, const JacElt& b) const { return a.key == b.key; }

    // canonical form of the class [D - deg(D)*B] for arbitrary D
    JacElt reduce(const HDivisor<FpField>& D0) const {
        HDivisor<FpField> D = D0;
        int d = D.degree();
        if (d != 0) D.add(C.K, base, -d);
        for (int m = 0;; ++m) {
            HDivisor<FpField> Dm = D;
            Dm.add(C.K, base, m);
            auto bas = C.rr_basis(Dm);
            if (bas.empty()) continue;
            if (bas.size() != 1)
                throw std::logic_error("JacFp::reduce: non-unique minimal section");
            HDivisor<FpField> E = Dm;
            E.add_divisor(C.K, hyp_div(C, bas[0]));
            if (!E.effective() || E.degree() != m)
                throw std::logic_error("JacFp::reduce: bad reduced divisor");
            return finish(std::move(E));
        }
    }

    JacElt from_place(const HPlace<FpField>& P) const {
        HDivisor<FpField> D;
        D.add(C.K, P, 1);
        return reduce(D);
    }

    JacElt add(const JacElt& a, const JacElt& b) const {
        HDivisor<FpField> D = a.E;
        D.add_divisor(C.K, b.E);
        return reduce(D);
    }
    JacElt neg(const JacElt& a) const {
        HDivisor<FpField> D;
        D.add_divisor(C.K, a.E, -1);
        return reduce(D);
    }
    JacElt sub(const JacElt& a, const JacElt& b) const { return add(a, neg(b)); }

    JacElt mul(const JacElt& a, Int n) const {
        if (n < 0) return mul(neg(a), -n);
        JacElt r = zero(), p = a;
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t())) r = add(r, p);
            n >>= 1;
            if (n > 0) p = add(p, p);
        }
        return r;
    }

    // order of an element given the (factored) group order
    Int element_order(const JacElt& a, const Int& N) const {
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

    JacElt random_element(std::mt19937_64& rng) const {
        const auto& K = C.K;
        for (int tries = 0; tries < 1000; ++tries) {
            int d = (int)(rng() % 2) + 1; // degree 1 or 2
            Poly<FpField> u;
            u.c.assign(d + 1, 0);
            u.c[d] = 1;
            for (int i = 0; i < d; ++i) u.c[i] = rng() % K.p;
            u.trim(K);
            if (u.deg() != d) continue;
            if (d == 2 && !fp_poly_irreducible(K, u)) continue;
            auto ps = C.places_above(u);
            auto& P = ps[rng() % ps.size()];
            if (P.degree() > C.genus + 1) continue;
            return from_place(P);
        }
        throw std::logic_error("random_element: no place found");
    }

private:
    JacElt finish(HDivisor<FpField> E) const {
        JacElt e;
        e.key = E.key(C.K);
        e.E = std::move(E);
        return e;
    }
};

// ---- abelian group structure ----

// descending exponent partition, e.g. Z/8 x Z/2 at p=2 -> {3,1}
using Partition = std::vector<int>;

struct AbGroup {
    std::map<Int, Partition> parts; // prime -> descending partition

    static AbGroup from_invariants(const std::vector<Int>& inv) {
        AbGroup g;
        for (auto& d : inv)
            for (auto& [p, e] : factor_int(d)) g.parts[p].push_back(e);
        for (auto& [p, lam] : g.parts)
            std::sort(lam.begin(), lam.end(), std::greater<int>());
        return g;
    }

    // invariant factors d_1 | d_2 | ... (ascending)
    std::vector<Int> invariants() const {
        size_t n = 0;
        for (auto& [p, lam] : parts) n = std::max(n, lam.size());
        std::vector<Int> inv(n, 1);
        for (auto& [p, lam] : parts)
            for (size_t i = 0; i < lam.size(); ++i)
                inv[n - 1 - i] *= pow_int(p, lam[i]);
        return inv;
    }

    Int order() const {
        Int o = 1;
        for (auto& [p, lam] : parts)
            for (int e : lam) o *= pow_int(p, e);
        return o;
    }

    bool operator==(const AbGroup& o) const { return parts == o.parts; }
    bool operator<(const AbGroup& o) const { return parts < o.parts; }

    std::string to_string() const {
        auto inv = invariants();
        if (inv.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < inv.size(); ++i) {
            if (i) s += " x ";
            s += "Z/" + inv[i].get_str();
        }
        return s;
    }
};

// H embeds into K iff for every prime the descending partitions compare
// pointwise: lambda_i(H) <= lambda_i(K) for all i.
inline bool ab_embeds(const AbGroup& H, const AbGroup& K) {
    for (auto& [p, lam] : H.parts) {
        auto it = K.parts.find(p);
        const Partition* mu = it == K.parts.end() ? nullptr : &it->second;
        for (size_t i = 0; i < lam.size(); ++i) {
            int m = (mu && i < mu->size()) ? (*mu)[i] : 0;
            if (lam[i] > m) return false;
        }
    }
    return true;
}

// largest group embedding in all of them: pointwise minimum of partitions
inline AbGroup ab_meet(const std::vector<AbGroup>& gs) {
    if (gs.empty()) throw std::invalid_argument("ab_meet: empty");
    AbGroup out;
    for (auto& [p, lam0] : gs[0].parts) {
        Partition lam = lam0;
        for (size_t k = 1; k < gs.size(); ++k) {
            auto it = gs[k].parts.find(p);
            const Partition* mu = it == gs[k].parts.end() ? nullptr : &it->second;
            for (size_t i = 0; i < lam.size(); ++i)
                lam[i] = std::min(lam[i], (mu && i < mu->size()) ? (*mu)[i] : 0);
        }
        while (!lam.empty() && lam.back() == 0) lam.pop_back();
        if (!lam.empty()) out.parts[p] = lam;
    }
    return out;
}

// all groups H with lower <= H <= upper in the embedding order
inline std::vector<AbGroup> ab_interval(const AbGroup& lower, const AbGroup& upper) {
    if (!ab_embeds(lower, upper)) return {};
    // per prime, enumerate descending partitions between the two
    std::vector<Int> primes;
    for (auto& [p, lam] : upper.parts) primes.push_back(p);
    std::vector<std::vector<Partition>> choices;
    for (auto& p : primes) {
        const Partition& U = upper.parts.at(p);
        Partition L(U.size(), 0);
        auto it = lower.parts.find(p);
        if (it != lower.parts.end())
            for (size_t i = 0; i < it->second.size(); ++i) L[i] = it->second[i];
        std::vector<Partition> opts;
        Partition cur;
        std::function<void(size_t, int)> rec = [&](size_t i, int prev) {
            if (i == U.size()) {
                Partition q = cur;
                while (!q.empty() && q.back() == 0) q.pop_back();
                opts.push_back(q);
                return;
            }
            for (int v = L[i]; v <= std::min(U[i], prev); ++v) {
                cur.push_back(v);
                rec(i + 1, v);
                cur.pop_back();
            }
        };
        rec(0, 1 << 20);
        choices.push_back(std::move(opts));
    }
    std::vector<AbGroup> out;
    std::vector<size_t> idx(primes.size(), 0);
    for (;;) {
        AbGroup g;
        for (size_t i = 0; i < primes.size(); ++i)
            if (!choices[i][idx[i]].empty()) g.parts[primes[i]] = choices[i][idx[i]];
        out.push_back(g);
        size_t i = 0;
        while (i < primes.size() && ++idx[i] == choices[i].size()) { idx[i] = 0; ++i; }
        if (i == primes.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- structure of J(F_p) ----

namespace detail {

// closure of a subgroup (given as element list + key set) under a new element
template <class J>
void group_close(const J& Jac, std::vector<typename J::Elt>& elems,
                 std::unordered_set<std::string>& keys, const typename J::Elt& g) {
    if (keys.count(g.key)) return;
    // multiples of g until we fall back into the old subgroup
    std::vector<typename J::Elt> mults;
    auto cur = g;
    while (!keys.count(cur.key)) {
        mults.push_back(cur);
        cur = Jac.add(cur, g);
    }
    std::vector<typename J::Elt> old = elems;
    for (auto& m : mults)
        for (auto& b : old) {
            auto s = Jac.add(m, b);
            if (keys.insert(s.key).second) elems.push_back(std::move(s));
        }
}

// partition of an enumerated abelian p-group from annihilator counts:
// #parts >= k equals log_p of #G[p^k] / #G[p^(k-1)]
template <class J>
Partition partition_from_enumeration(const J& Jac, const std::vector<typename J::Elt>& elems,
                                     const Int& p) {
    std::unordered_map<std::string, size_t> index;
    for (size_t i = 0; i < elems.size(); ++i) index[elems[i].key] = i;
    std::vector<size_t> pmul(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) {
        auto y = Jac.mul(elems[i], p);
        pmul[i] = index.at(y.key);
    }
    // iterate: x alive at level k if p^k x = 0
    std::vector<size_t> curidx(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) curidx[i] = i;
    size_t zero_idx = index.at(Jac.zero().key);
    Int prev = 1;
    Partition lam;
    for (int k = 1;; ++k) {
        for (auto& ci : curidx) ci = pmul[ci];
        Int tk = 0;
        for (auto ci : curidx)
            if (ci == zero_idx) ++tk;
        if (tk == prev) break;
        Int ratio = tk / prev;
        int r = 0;
        Int q = 1;
        while (q < ratio) { q *= p; ++r; }
        if (q != ratio) throw std::logic_error("partition: annihilator count not a p-power");
        lam.push_back(r);
        prev = tk;
        if (r == 0) break;
    }
    // lam currently holds #parts >= k; convert to exponents
    Partition out;
    for (size_t i = 0; i < lam.size(); ++i)
        for (int j = (i + 1 < lam.size() ? lam[i + 1] : 0); j < lam[i]; ++j)
            out.push_back((int)i + 1);
    std::sort(out.begin(), out.end(), std::greater<int>());
    return out;
}

} // namespace detail

// Full structure of J(F_p). Enumerates the group when its order is small;
// otherwise enumerates each Sylow subgroup from cofactor multiples of random
// elements (group order from the zeta function makes termination exact).
template <class J>
AbGroup group_structure(const J& Jac, const Int& n, std::uint64_t seed = 1,
                        size_t enum_limit = 5000) {
    std::mt19937_64 rng(seed);
    auto factors = factor_int(n);

    AbGroup out;
    if (n <= (long)enum_limit) {
        std::vector<typename J::Elt> elems = {Jac.zero()};
        std::unordered_set<std::string> keys = {elems[0].key};
        int stall = 0;
        while ((Int)(long)elems.size() < n && stall < 400) {
            size_t before = elems.size();
            detail::group_close(Jac, elems, keys, Jac.random_element(rng));
            stall = elems.size() == before ? stall + 1 : 0;
        }
        if ((Int)(long)elems.size() != n)
            throw std::logic_error("group_structure: enumeration incomplete");
        for (auto& [p, e] : factors) {
            // restrict to the Sylow subgroup: cofactor multiples
            Int cof = n / pow_int(p, e);
            std::vector<typename J::Elt> syl;
            std::unordered_set<std::string> skeys;
            for (auto& x : elems) {
                auto y = Jac.mul(x, cof);
                if (skeys.insert(y.key).second) syl.push_back(std::move(y));
            }
            out.parts[p] = detail::partition_from_enumeration(Jac, syl, p);
        }
        return out;
    }

    for (auto& [p, e] : factors) {
        if (e == 1) {
            out.parts[p] = {1};
            continue;
        }
        Int target = pow_int(p, e);
        if (target > (long)200000)
            throw std::logic_error("group_structure: Sylow subgroup too large");
        Int cof = n / target;
        std::vector<typename J::Elt> syl = {Jac.zero()};
        std::unordered_set<std::string> skeys = {syl[0].key};
        int stall = 0;
        while ((Int)(long)syl.size() < target && stall < 400) {
            size_t before = syl.size();
            auto y = Jac.mul(Jac.random_element(rng), cof);
            detail::group_close(Jac, syl, skeys, y);
            stall = syl.size() == before ? stall + 1 : 0;
        }
        if ((Int)(long)syl.size() != target)
            throw std::logic_error("group_structure: Sylow enumeration incomplete");
        out.parts[p] = detail::partition_from_enumeration(Jac, syl, p);
    }
    return out;
}

// structure of the subgroup generated by the given elements (enumerates it)
template <class J>
AbGroup subgroup_structure(const J& Jac, const std::vector<typename J::Elt>& gens) {
    std::vector<typename J::Elt> elems = {Jac.zero()};
    std::unordered_set<std::string> keys = {elems[0].key};
    for (auto& g : gens) detail::group_close(Jac, elems, keys, g);
    Int n((unsigned long)elems.size());
    AbGroup out;
    for (auto& [p, e] : factor_int(n)) {
        Int cof = n / pow_int(p, e);
        std::vector<typename J::Elt> syl;
        std::unordered_set<std::string> skeys;
        for (auto& x : elems) {
            auto y = Jac.mul(x, cof);
            if (skeys.insert(y.key).second) syl.push_back(std::move(y));
        }
        out.parts[p] = detail::partition_from_enumeration(Jac, syl, p);
    }
    return out;
}

inline AbGroup jacobian_structure(const JacFp& J, std::uint64_t seed = 1,
                                  Int order_hint = 0, size_t enum_limit = 5000) {
    Int n = order_hint != 0 ? order_hint : hyp_jacobian_order(J.C);
    return group_structure(J, n, seed, enum_limit);
}

// ---- rational two-torsion of an odd-degree hyperelliptic Jacobian ----
// For y^2 = f with deg f odd, J(Q)[2] = (Z/2)^(r-1) with r the number of
// irreducible factors of f over Q.
inline int two_torsion_rank_q(const std::vector<Rat>& fcoeffs) {
    QPoly f;
    f.c = fcoeffs;
    f.trim(QField{});
    if (f.deg() % 2 == 0)
        throw std::invalid_argument("two_torsion_rank_q: even degree not supported");
    auto fac = qpoly_factor(f);
    int r = 0;
    for (auto& [g, m] : fac)
        if (g.deg() > 0) r += 1;
    return r - 1;
}

// candidate torsion groups: all H with lower <= H and H embedding in every
// reduction, i.e. the interval [lower, meet of reductions]
inline std::vector<AbGroup> torsion_candidates(const std::vector<AbGroup>& reductions,
                                               const AbGroup& lower) {
    return ab_interval(lower, ab_meet(reductions));
}

} // namespace ag
