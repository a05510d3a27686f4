#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ag/chabauty.hpp"

#include <random>

using namespace ag;

static const AlgebraicPoint& named_point(const std::vector<std::pair<std::string, AlgebraicPoint>>& pts,
                                         const std::string& name) {
    for (auto& [n, p] : pts)
        if (n == name) return p;
    throw std::runtime_error("no point " + name);
}

TEST_CASE("involution eigenvalues on the sextic adjoints") {
    auto cat = Catalog::load_default();
    auto S = cat.plane_equation("sextic_b5ns7");
    auto adj = cat.adjoints("sextic_b5ns7");
    auto sgn = parse_diag_involution(cat.curve("sextic_b5ns7").at("involution").get<std::string>());
    CHECK(sgn == std::array<int, 3>{1, 1, -1});

    auto diag = involution_diag_on_adjoints(S, adj, sgn);
    CHECK(diag == std::vector<int>{-1, -1, -1, 1, -1, 1});

    auto X = ChabautyProblem::from_catalog(cat, "sextic_b5ns7");
    CHECK(X.n_C == 4); // Ker(1 + w*) has dimension genus(X) - genus(X/w) = 6 - 2
    CHECK(X.omega.size() == 6);
}

TEST_CASE("projective involution lift resolved by the quotient genus") {
    auto cat = Catalog::load_default();
    auto qm = cat.quadric_model("canonical_b5ns7");
    auto diag = resolve_involution_sign(qm.involution_diag, 2);
    CHECK(diag == std::vector<int>{1, 1, -1, -1, -1, -1});
    int anti = 0;
    for (int d : diag)
        if (d == -1) ++anti;
    CHECK(anti == 4);
    // an impossible quotient genus must be rejected, not guessed
    CHECK_THROWS(resolve_involution_sign(qm.involution_diag, 3));
}

TEST_CASE("expansion coefficients transform correctly under the involution") {
    auto cat = Catalog::load_default();
    auto X = ChabautyProblem::from_catalog(cat, "sextic_b5ns7");
    // chart image of (u, v) under (u:v:w) -> (u:v:-w) is (-u, -v), so the
    // local parameter t = u - u0 pulls back to -t and eigenvalue e forces
    // a_n(sigma P) = e (-1)^{n+1} a_n(P)
    FqField F = make_fq(17, 1);
    auto div = fp_pullback_divisor(X, 17, 0);
    auto& P = div[0];
    auto& Q = div[1]; // involution image of P
    int m = 3;
    auto rp = expansion_rows(F, X, ChartPoint<FqField>{P.u, P.v}, m, 0);
    auto rq = expansion_rows(F, X, ChartPoint<FqField>{Q.u, Q.v}, m, 0);
    for (int j = 0; j < (int)X.omega.size(); ++j) {
        int e = j < X.n_C ? -1 : +1;
        for (int n = 0; n < m; ++n) {
            auto expect = rp[j][n];
            if ((e == -1) == (n % 2 == 1)) expect = F.neg(expect);
            CHECK(F.eq(rq[j][n], expect));
        }
    }
}

TEST_CASE("leading coefficients are parameter independent up to dv/du") {
    auto cat = Catalog::load_default();
    auto X = ChabautyProblem::from_catalog(cat, "sextic_b5ns7");
    FqField F = make_fq(17, 1);
    auto div = fp_pullback_divisor(X, 17, 2);
    auto& P = div[0];
    std::vector<FqField::Elt> at{P.u, P.v, F.one()};
    auto su = X.Su.eval(F, at), sv = X.Sv.eval(F, at);
    REQUIRE(!F.is_zero(su));
    REQUIRE(!F.is_zero(sv));
    auto r0 = expansion_rows(F, X, ChartPoint<FqField>{P.u, P.v}, 1, 0);
    auto r1 = expansion_rows(F, X, ChartPoint<FqField>{P.u, P.v}, 1, 1);
    // dt_1/dt_0 = dv/du = -S_u/S_v on the curve
    auto jac = F.neg(F.mul(su, F.inv(sv)));
    for (size_t j = 0; j < X.omega.size(); ++j)
        CHECK(F.eq(r0[j][0], F.mul(r1[j][0], jac)));
}

TEST_CASE("reduced orbit divisors have the right degree and lie on the curve") {
    auto cat = Catalog::load_default();
    auto X = ChabautyProblem::from_catalog(cat, "sextic_b5ns7");
    auto pts = cat.algebraic_points("sextic_b5ns7");
    for (std::uint64_t p : {17ull, 23ull}) {
        for (auto& [name, P] : pts) {
            auto red = reduce_point_mod_p(P, p);
            int deg = 0;
            for (auto& q : red) {
                deg += q.mult * q.F.d;
                std::vector<FqField::Elt> at{q.u, q.v, q.F.one()};
                CHECK(q.F.is_zero(X.S.eval(q.F, at)));
            }
            CHECK(deg == (name == "P0" ? 2 : 4));
        }
    }
}

TEST_CASE("rank certificates for the known quartic points") {
    auto cat = Catalog::load_default();
    auto X = ChabautyProblem::from_catalog(cat, "sextic_b5ns7");
    auto pts = cat.algebraic_points("sextic_b5ns7");
    for (std::uint64_t p : {17ull, 23ull}) {
        for (auto& name : {"P1", "P2", "P3", "P4"}) {
            auto red = reduce_point_mod_p(named_point(pts, name), p);
            auto rep = chabauty_ranks(X, red, p);
            CHECK(rep.deg == 4);
            CHECK(rep.rank_A == 4);
            CHECK(rep.isolated());
            for (auto& q : red) CHECK(siksek_a0_nonzero(X, q));
        }
    }
}

TEST_CASE("pullback divisors have anti-invariant rank exactly 2") {
    auto cat = Catalog::load_default();
    auto X = ChabautyProblem::from_catalog(cat, "sextic_b5ns7");
    auto pts = cat.algebraic_points("sextic_b5ns7");
    auto& P0 = named_point(pts, "P0");
    for (std::uint64_t p : {17ull, 23ull}) {
        auto red = reduce_point_mod_p(P0, p);
        for (auto& q : reduce_point_mod_p(apply_diag_involution(P0, X.sgn), p))
            red.push_back(q);
        auto rep = chabauty_ranks(X, red, p);
        CHECK(rep.deg == 4);
        CHECK(rep.rank_AC == 2);
        CHECK(rep.forces_pullback());
        CHECK(!rep.forces_partial_pullback());
    }
    // a second pullback divisor from F_17-rational orbits
    auto div = fp_pullback_divisor(X, 17, 0);
    auto rep = chabauty_ranks(X, div, 17);
    CHECK(rep.deg == 4);
    CHECK(rep.rank_A == 4);
    CHECK(rep.rank_AC == 2);
}

TEST_CASE("the residue-class criterion refuses small primes") {
    auto cat = Catalog::load_default();
    auto X = ChabautyProblem::from_catalog(cat, "sextic_b5ns7");
    CHECK_THROWS_AS(chabauty_ranks(X, {}, 13), std::invalid_argument);
}

TEST_CASE("Z_q expansions reduce to the F_q expansions") {
    auto cat = Catalog::load_default();
    auto X = ChabautyProblem::from_catalog(cat, "sextic_b5ns7");
    FqField F = make_fq(17, 1);
    ZqRing R(17, 1, 6);
    auto div = fp_pullback_divisor(X, 17, 0);
    auto& P = div[2];
    // Hensel-lift the chart point: keep u, refine v against the sextic
    auto u = R.from_int((long)(P.u.deg() >= 0 ? P.u.c[0] : 0));
    auto v = R.from_int((long)(P.v.deg() >= 0 ? P.v.c[0] : 0));
    for (int it = 0; it < 8; ++it) {
        std::vector<ZqRing::Elt> at{u, v, R.one()};
        auto err = X.S.eval(R, at);
        if (R.is_zero(err)) break;
        v = R.sub(v, R.div(err, X.Sv.eval(R, at)));
    }
    {
        std::vector<ZqRing::Elt> at{u, v, R.one()};
        REQUIRE(R.is_zero(X.S.eval(R, at)));
    }
    int m = 3;
    auto rz = expansion_rows(R, X, ChartPoint<ZqRing>{u, v}, m, 0);
    auto rf = expansion_rows(F, X, ChartPoint<FqField>{P.u, P.v}, m, 0);
    for (size_t j = 0; j < X.omega.size(); ++j)
        for (int n = 0; n < m; ++n)
            CHECK(R.residue.eq(R.residue_of(rz[j][n]), rf[j][n]));
}

// ---------------------------------------------------------------------------
// Tiny integrals

namespace {

struct TinySetup {
    ZqRing R;
    HyperellipticModel C;
    std::vector<ZqRing::Elt> f;
};

// a point of y^2 = f(x) with x in the residue disc of x0 and y a unit
HypPoint lift_point(const TinySetup& s, std::uint64_t x0, long fuzz, bool ybranch) {
    auto& R = s.R;
    auto x = R.add(R.from_int((long)x0), R.mul(R.from_int(fuzz), R.from_int((long)R.p)));
    auto fx = R.zero();
    auto pw = R.one();
    for (auto& c : s.f) {
        fx = R.add(fx, R.mul(c, pw));
        pw = R.mul(pw, x);
    }
    auto y = R.sqrt_unit(fx);
    if (ybranch) y = R.neg(y);
    return {x, y};
}

// residue x0 where f(x0) is a nonzero square and f'(x0) is a unit, scanning
// from a seed so instances vary
std::uint64_t usable_residue(const TinySetup& s, std::uint64_t seed) {
    auto& R = s.R;
    FqField res = R.residue;
    for (std::uint64_t k = 0; k < R.p; ++k) {
        std::uint64_t x0 = (seed + k) % R.p;
        auto x = res.from_rat(Rat((unsigned long)x0));
        auto fx = res.zero();
        auto fdx = res.zero();
        auto pw = res.one();
        for (size_t i = 0; i < s.C.f.size(); ++i) {
            fx = res.add(fx, res.mul(res.from_rat(s.C.f[i]), pw));
            if (i + 1 < s.C.f.size())
                fdx = res.add(fdx, res.mul(res.mul(res.from_rat(s.C.f[i + 1]), res.from_rat(Rat((unsigned long)(i + 1)))), pw));
            pw = res.mul(pw, x);
        }
        if (res.is_zero(fx) || res.is_zero(fdx)) continue;
        // Euler criterion via the field's sqrt: it throws on non-squares
        try {
            (void)res.sqrt(fx);
        } catch (...) {
            continue;
        }
        return x0;
    }
    throw std::runtime_error("no usable residue");
}

} // namespace

TEST_CASE("tiny integrals satisfy the defining identities") {
    auto cat = Catalog::load_default();
    std::vector<std::string> names;
    for (auto it = cat.root.at("curves").begin(); it != cat.root.at("curves").end(); ++it)
        if (it.value().at("type") == "hyperelliptic") names.push_back(it.key());
    REQUIRE(!names.empty());

    std::mt19937 rng(20260826);
    for (auto& name : names) {
        TinySetup s{ZqRing(13, 1, 5), cat.hyperelliptic(name), {}};
        for (auto& c : s.C.f) s.f.push_back(s.R.from_rat(c));
        const int genus = s.C.genus;
        for (int inst = 0; inst < 50; ++inst) {
            std::uint64_t x0 = usable_residue(s, rng() % 13);
            long f1 = (long)(rng() % 1000), f2 = (long)(rng() % 1000), f3 = (long)(rng() % 1000);
            auto Q = lift_point(s, x0, f1, false);
            auto Rp = lift_point(s, x0, f2, false);
            auto Sp = lift_point(s, x0, f3, false);
            int i = (int)(rng() % (std::uint64_t)genus);

            auto iQR = tiny_integral(s.R, s.C, i, Q, Rp);
            CHECK(iQR.prec >= 5); // certified modulo at least p^5

            // vanishing on equal endpoints
            CHECK(s.R.is_zero(tiny_integral(s.R, s.C, i, Q, Q)));
            // antisymmetry under swapping endpoints (other expansion center)
            CHECK(s.R.eq(iQR, s.R.neg(tiny_integral(s.R, s.C, i, Rp, Q))));
            // additivity along a third point of the disc
            auto iQS = tiny_integral(s.R, s.C, i, Q, Sp);
            auto iRS = tiny_integral(s.R, s.C, i, Rp, Sp);
            CHECK(s.R.eq(iQS, s.R.add(iQR, iRS)));
            // independence of the local parameter
            CHECK(s.R.eq(iQR, tiny_integral(s.R, s.C, i, Q, Rp, 1)));
        }
    }
}

TEST_CASE("tiny integrals reject endpoints from different residue discs") {
    auto cat = Catalog::load_default();
    TinySetup s{ZqRing(13, 1, 5), cat.hyperelliptic("x0_35"), {}};
    for (auto& c : s.C.f) s.f.push_back(s.R.from_rat(c));
    std::uint64_t x0 = usable_residue(s, 0);
    auto Q = lift_point(s, x0, 1, false);
    auto Qbar = lift_point(s, x0, 2, true); // other sheet, different disc
    CHECK_THROWS_AS(tiny_integral(s.R, s.C, 0, Q, Qbar), std::domain_error);
}
