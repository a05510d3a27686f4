#pragma once
// Generic Mordell-Weil sieve engine: a finitely generated ambient group B,
// per-prime homomorphisms to finite groups with allowed local images, and an
// iterated coset intersection. Residual classes are kept as a finite-index
// sublattice (row Hermite form) plus representatives.

#include "ag/linalg.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ag {

// Row Hermite form that keeps zero rows and records the unimodular row
// transform U with U * input = output.
inline ZMat hnf_transform(ZMat m, ZMat& U) {
    int rows = (int)m.size();
    int cols = rows ? (int)m[0].size() : 0;
    U.assign((size_t)rows, std::vector<Int>((size_t)rows, 0));
    for (int i = 0; i < rows; ++i) U[(size_t)i][(size_t)i] = 1;
    auto rowop = [&](int i, int r, const Int& q) {
        for (int j = 0; j < cols; ++j) m[(size_t)i][(size_t)j] -= q * m[(size_t)r][(size_t)j];
        for (int j = 0; j < rows; ++j) U[(size_t)i][(size_t)j] -= q * U[(size_t)r][(size_t)j];
    };
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            int sel = -1;
            for (int i = r; i < rows; ++i)
                if (m[(size_t)i][(size_t)c] != 0 &&
                    (sel < 0 || abs(m[(size_t)i][(size_t)c]) < abs(m[(size_t)sel][(size_t)c])))
                    sel = i;
            if (sel < 0) break;
            std::swap(m[(size_t)sel], m[(size_t)r]);
            std::swap(U[(size_t)sel], U[(size_t)r]);
            bool again = false;
            for (int i = r + 1; i < rows; ++i) {
                if (m[(size_t)i][(size_t)c] == 0) continue;
                rowop(i, r, m[(size_t)i][(size_t)c] / m[(size_t)r][(size_t)c]);
                if (m[(size_t)i][(size_t)c] != 0) again = true;
            }
            if (!again) break;
        }
        if (m[(size_t)r][(size_t)c] == 0) continue;
        if (m[(size_t)r][(size_t)c] < 0) {
            for (auto& x : m[(size_t)r]) x = -x;
            for (auto& x : U[(size_t)r]) x = -x;
        }
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m[(size_t)i][(size_t)c].get_mpz_t(), m[(size_t)r][(size_t)c].get_mpz_t());
            if (q != 0) rowop(i, r, q);
        }
        ++r;
    }
    return m;
}

// Basis (as rows) of { x : x * A = 0 } for an integer matrix A.
inline ZMat left_kernel(const ZMat& A) {
    ZMat U;
    ZMat H = hnf_transform(A, U);
    ZMat out;
    for (size_t i = 0; i < H.size(); ++i) {
        bool zero = true;
        for (auto& x : H[i])
            if (x != 0) { zero = false; break; }
        if (zero) out.push_back(U[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Full-rank row lattices in Z^n

struct Lattice {
    int n = 0;
    ZMat H;                 // n x n row Hermite form, full rank
    std::vector<int> piv;   // pivot column of each row

    static Lattice from_rows(int n, ZMat rows) {
        Lattice L;
        L.n = n;
        L.H = hnf(std::move(rows));
        if ((int)L.H.size() != n) throw std::runtime_error("Lattice: not finite index");
        for (auto& row : L.H) {
            int c = 0;
            while (c < n && row[(size_t)c] == 0) ++c;
            L.piv.push_back(c);
        }
        return L;
    }

    static Lattice diagonal(const std::vector<Int>& d) {
        ZMat rows;
        for (size_t i = 0; i < d.size(); ++i) {
            std::vector<Int> r(d.size(), 0);
            r[i] = d[i];
            rows.push_back(std::move(r));
        }
        return from_rows((int)d.size(), std::move(rows));
    }

    // canonical representative of x modulo the lattice
    std::vector<Int> reduce(std::vector<Int> x) const {
        for (int i = 0; i < n; ++i) {
            int c = piv[(size_t)i];
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), x[(size_t)c].get_mpz_t(), H[(size_t)i][(size_t)c].get_mpz_t());
            if (q != 0)
                for (int j = 0; j < n; ++j) x[(size_t)j] -= q * H[(size_t)i][(size_t)j];
        }
        return x;
    }

    bool contains(const std::vector<Int>& x) const {
        for (auto& v : reduce(x))
            if (v != 0) return false;
        return true;
    }

    Int index() const { // index in Z^n
        Int d = 1;
        for (int i = 0; i < n; ++i) d *= H[(size_t)i][(size_t)piv[(size_t)i]];
        return d;
    }
};

// meet of two full-rank lattices: x in both iff x = a H1 = b H2
inline Lattice lattice_meet(const Lattice& A, const Lattice& B) {
    ZMat S = A.H;
    for (auto& row : B.H) {
        std::vector<Int> r;
        for (auto& x : row) r.push_back(-x);
        S.push_back(std::move(r));
    }
    ZMat ker = left_kernel(S); // rows (a, b) with a H1 = b H2
    ZMat rows;
    for (auto& ab : ker) {
        std::vector<Int> x((size_t)A.n, 0);
        for (int i = 0; i < A.n; ++i)
            for (int j = 0; j < A.n; ++j)
                x[(size_t)j] += ab[(size_t)i] * A.H[(size_t)i][(size_t)j];
        rows.push_back(std::move(x));
    }
    return Lattice::from_rows(A.n, std::move(rows));
}

// coset representatives of sub inside sup (sub must be contained in sup)
inline std::vector<std::vector<Int>> coset_reps(const Lattice& sup, const Lattice& sub,
                                                std::size_t cap) {
    int n = sup.n;
    // express sub's basis in sup's basis by back substitution on the pivots
    ZMat C;
    for (auto& row : sub.H) {
        std::vector<Int> v = row, a((size_t)n, 0);
        for (int i = 0; i < n; ++i) {
            int c = sup.piv[(size_t)i];
            Int q = v[(size_t)c] / sup.H[(size_t)i][(size_t)c];
            if (v[(size_t)c] % sup.H[(size_t)i][(size_t)c] != 0)
                throw std::runtime_error("coset_reps: sublattice is not contained in the lattice");
            a[(size_t)i] = q;
            for (int j = 0; j < n; ++j) v[(size_t)j] -= q * sup.H[(size_t)i][(size_t)j];
        }
        for (auto& x : v)
            if (x != 0) throw std::runtime_error("coset_reps: sublattice is not contained in the lattice");
        C.push_back(std::move(a));
    }
    Lattice Q = Lattice::from_rows(n, std::move(C));
    Int idx = Q.index();
    if (idx > Int((unsigned long)cap)) throw std::runtime_error("coset_reps: index exceeds cap");
    // digits in the box of the triangular form, mapped through sup's basis
    std::vector<std::vector<Int>> out;
    std::vector<Int> digit((size_t)n, 0);
    for (;;) {
        std::vector<Int> x((size_t)n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                x[(size_t)j] += digit[(size_t)i] * sup.H[(size_t)i][(size_t)j];
        out.push_back(std::move(x));
        int k = 0;
        while (k < n) {
            digit[(size_t)k] += 1;
            if (digit[(size_t)k] < Q.H[(size_t)k][(size_t)Q.piv[(size_t)k]]) break;
            digit[(size_t)k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sieve problem data

struct SieveGroup {
    std::vector<Int> torsion; // moduli n_1, ..., n_t
    int free_rank = 0;
    int dim() const { return (int)torsion.size() + free_rank; }
};

// one prime's worth of local information: a homomorphism B -> prod Z/amod_j
// given on the standard generators of B, and the allowed local images
struct LocalData {
    Int label;                           // the prime (bookkeeping only)
    std::vector<Int> amod;               // target moduli
    std::vector<std::vector<Int>> gens;  // image of each B-generator, amod coords
    std::vector<std::vector<Int>> allowed;
};

struct SieveProblem {
    SieveGroup B;
    // allowed residues per torsion coordinate; an empty list means no
    // restriction. Free coordinates are unrestricted (the restriction set is
    // a union of torsion sub-products).
    std::vector<std::vector<Int>> w_allowed;
    std::vector<std::vector<Int>> known; // B-coordinates of known points
    std::vector<LocalData> locals;       // prime schedule, in order
    int stagnation = 3;                  // halt after this many uninformative primes
    std::size_t cap = 2000000;           // refinement size guard
};

struct CosetSet {
    Lattice L;
    std::vector<std::vector<Int>> reps; // duplicate-free modulo L
};

struct PrimeStat {
    Int label;
    std::size_t allowed = 0;   // |M_p|
    Int kernel_index = 0;      // index of ker(phi_p) meet in the previous lattice
    std::size_t survivors = 0;
};

struct SieveReport {
    bool empty = false;
    bool stagnated = false;
    std::vector<PrimeStat> stats;
    CosetSet final;
};

inline std::vector<Int> apply_local(const LocalData& ld, const std::vector<Int>& x) {
    size_t s = ld.amod.size();
    std::vector<Int> y(s, 0);
    for (size_t j = 0; j < x.size(); ++j)
        for (size_t k = 0; k < s; ++k)
            y[k] += x[j] * ld.gens[j][k];
    for (size_t k = 0; k < s; ++k) mpz_fdiv_r(y[k].get_mpz_t(), y[k].get_mpz_t(), ld.amod[k].get_mpz_t());
    return y;
}

inline bool local_allows(const LocalData& ld, const std::vector<Int>& x) {
    auto y = apply_local(ld, x);
    for (auto& a : ld.allowed)
        if (a == y) return true;
    return false;
}

inline bool w_allows(const SieveProblem& P, const std::vector<Int>& x) {
    for (size_t i = 0; i < P.B.torsion.size(); ++i) {
        if (P.w_allowed.size() <= i || P.w_allowed[i].empty()) continue;
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), x[i].get_mpz_t(), P.B.torsion[i].get_mpz_t());
        bool ok = false;
        for (auto& a : P.w_allowed[i])
            if (a == r) { ok = true; break; }
        if (!ok) return false;
    }
    return true;
}

// kernel of the local homomorphism as a sublattice of Z^dim
inline Lattice local_kernel(const SieveGroup& B, const LocalData& ld) {
    int n = B.dim();
    size_t s = ld.amod.size();
    // rows (x, y) of the kernel of [G; D] give x with x G = -y D = 0 mod amod
    ZMat A;
    for (int j = 0; j < n; ++j) A.push_back(ld.gens[(size_t)j]);
    for (size_t k = 0; k < s; ++k) {
        std::vector<Int> r(s, 0);
        r[k] = ld.amod[k];
        A.push_back(std::move(r));
    }
    ZMat ker = left_kernel(A);
    ZMat rows;
    for (auto& xy : ker)
        rows.push_back(std::vector<Int>(xy.begin(), xy.begin() + n));
    return Lattice::from_rows(n, std::move(rows));
}

// starting residual set: torsion coordinates modulo their orders, free
// coordinates collapsed (the initial lattice contains the free axes), with
// the restriction set applied
inline CosetSet initial_cosets(const SieveProblem& P) {
    std::vector<Int> d;
    for (auto& m : P.B.torsion) d.push_back(m);
    for (int j = 0; j < P.B.free_rank; ++j) d.push_back(Int(1));
    CosetSet cs;
    cs.L = Lattice::diagonal(d);
    if (cs.L.index() > Int((unsigned long)P.cap))
        throw std::runtime_error("initial_cosets: torsion part exceeds cap");
    std::vector<Int> digit((size_t)P.B.dim(), 0);
    for (;;) {
        if (w_allows(P, digit)) cs.reps.push_back(digit);
        size_t k = 0;
        while (k < P.B.torsion.size()) {
            digit[k] += 1;
            if (digit[k] < P.B.torsion[k]) break;
            digit[k] = 0;
            ++k;
        }
        if (k == P.B.torsion.size()) break;
    }
    return cs;
}

inline void sieve_preflight(const SieveProblem& P) {
    for (auto& x : P.known) {
        if ((int)x.size() != P.B.dim()) throw std::runtime_error("sieve: known point has wrong dimension");
        if (!w_allows(P, x)) throw std::runtime_error("sieve: known point violates the restriction set");
        for (auto& ld : P.locals)
            if (!local_allows(ld, x))
                throw std::runtime_error("sieve: known point excluded at prime " + ld.label.get_str());
    }
}

inline SieveReport run_sieve(const SieveProblem& P) {
    sieve_preflight(P);
    SieveReport rep;
    CosetSet cs = initial_cosets(P);
    int idle = 0;
    // measure survivors as a fraction of B so refining the lattice without
    // excluding anything counts as zero progress
    Rat density(Int((unsigned long)cs.reps.size()), cs.L.index());
    density.canonicalize();
    for (auto& ld : P.locals) {
        std::size_t before = cs.reps.size();
        if (before == 0) break;
        Lattice K = local_kernel(P.B, ld);
        Lattice L2 = lattice_meet(cs.L, K);
        auto deltas = coset_reps(cs.L, L2, P.cap / std::max<std::size_t>(before, 1));
        std::map<std::vector<Int>, bool> seen;
        std::vector<std::vector<Int>> next;
        for (auto& s : cs.reps)
            for (auto& t : deltas) {
                std::vector<Int> x = s;
                for (size_t j = 0; j < x.size(); ++j) x[j] += t[j];
                if (!local_allows(ld, x)) continue;
                auto r = L2.reduce(std::move(x));
                if (!seen.emplace(r, true).second) continue;
                next.push_back(std::move(r));
            }
        PrimeStat st;
        st.label = ld.label;
        st.allowed = ld.allowed.size();
        st.kernel_index = L2.index() / cs.L.index();
        st.survivors = next.size();
        rep.stats.push_back(st);
        cs.L = std::move(L2);
        cs.reps = std::move(next);
        Rat d2(Int((unsigned long)cs.reps.size()), cs.L.index());
        d2.canonicalize();
        if (d2 == density) {
            if (++idle >= P.stagnation) { rep.stagnated = true; break; }
        } else idle = 0;
        density = d2;
        if (cs.reps.empty()) break;
    }
    rep.empty = cs.reps.empty();
    rep.final = std::move(cs);
    return rep;
}

// Independent check: refine by every prime at once and filter representatives
// of B modulo the total lattice directly against every constraint.
inline std::vector<std::vector<Int>> sieve_bruteforce(const SieveProblem& P, std::size_t cap = 100000) {
    std::vector<Int> d;
    for (auto& m : P.B.torsion) d.push_back(m);
    for (int j = 0; j < P.B.free_rank; ++j) d.push_back(Int(1));
    Lattice L = Lattice::diagonal(d);
    for (auto& ld : P.locals) L = lattice_meet(L, local_kernel(P.B, ld));
    Lattice top = Lattice::diagonal(std::vector<Int>((size_t)P.B.dim(), Int(1)));
    std::vector<std::vector<Int>> out;
    for (auto& x : coset_reps(top, L, cap)) {
        if (!w_allows(P, x)) continue;
        bool ok = true;
        for (auto& ld : P.locals)
            if (!local_allows(ld, x)) { ok = false; break; }
        if (ok) out.push_back(L.reduce(x));
    }
    return out;
}

// small elements of the surviving cosets: torsion coordinates in their
// fundamental ranges, free coordinates bounded by |x| <= bound
inline std::vector<std::vector<Int>> residual_small_search(const CosetSet& cs, const SieveGroup& B,
                                                           long bound) {
    if (B.free_rank > 3) throw std::invalid_argument("residual_small_search: free rank > 3");
    int n = B.dim();
    std::vector<std::vector<Int>> out;
    std::vector<Int> lo((size_t)n), hi((size_t)n);
    for (size_t i = 0; i < B.torsion.size(); ++i) { lo[i] = 0; hi[i] = B.torsion[i] - 1; }
    for (int j = 0; j < B.free_rank; ++j) {
        lo[B.torsion.size() + (size_t)j] = -bound;
        hi[B.torsion.size() + (size_t)j] = bound;
    }
    for (auto& s : cs.reps) {
        std::vector<Int> x = lo;
        for (;;) {
            std::vector<Int> diff((size_t)n);
            for (int j = 0; j < n; ++j) diff[(size_t)j] = x[(size_t)j] - s[(size_t)j];
            if (cs.L.contains(diff)) out.push_back(x);
            int k = 0;
            while (k < n) {
                x[(size_t)k] += 1;
                if (x[(size_t)k] <= hi[(size_t)k]) break;
                x[(size_t)k] = lo[(size_t)k];
                ++k;
            }
            if (k == n) break;
        }
    }
    return out;
}

} // namespace ag
