#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ag/fp.hpp"
#include "ag/fq.hpp"
#include "ag/factor_fq.hpp"
#include "ag/linalg.hpp"

using namespace ag;

TEST_CASE("Fp basic arithmetic") {
    FpField K(101);
    CHECK(K.add(100, 2) == 1);
    CHECK(K.mul(50, 51) == (50ull * 51) % 101);
    for (uint64_t a = 1; a < 101; ++a)
        CHECK(K.mul(a, K.inv(a)) == 1);
    CHECK(K.pow(3, Int(100)) == 1); // Fermat
}

TEST_CASE("Fp sqrt") {
    for (uint64_t p : {3ull, 5ull, 13ull, 17ull, 97ull, 107ull}) {
        FpField K(p);
        int squares = 0;
        for (uint64_t a = 0; a < p; ++a) {
            if (K.is_square(a)) {
                ++squares;
                auto r = K.sqrt(a);
                CHECK(K.mul(r, r) == a);
            }
        }
        CHECK(squares == (int)((p + 1) / 2));
    }
}

TEST_CASE("polynomial division and gcd over Fp") {
    FpField K(7); // -1 is a non-residue mod 7, so x^2+1 is irreducible
    // (x^2+1)(x^3+2x+5)
    Poly<FpField> a; a.c = {1, 0, 1};
    Poly<FpField> b; b.c = {5, 2, 0, 1};
    auto ab = poly_mul(K, a, b);
    auto [q, r] = poly_divrem(K, ab, a);
    CHECK(poly_eq(K, q, b));
    CHECK(r.is_zero());

    auto g = poly_gcd(K, poly_mul(K, a, a), ab);
    CHECK(poly_eq(K, g, poly_monic(K, a)));

    auto [g2, u, v] = poly_xgcd(K, a, b);
    CHECK(g2.deg() == 0); // coprime
    auto comb = poly_add(K, poly_mul(K, u, a), poly_mul(K, v, b));
    CHECK(poly_eq(K, comb, poly_one(K)));
}

TEST_CASE("Fq field axioms and Frobenius") {
    auto K = make_fq(5, 3); // F_125
    CHECK(K.order() == 125);
    auto t = K.gen();
    auto x = K.add(K.mul(t, t), K.from_int(3));
    CHECK(K.eq(K.mul(x, K.inv(x)), K.one()));
    // Frobenius cubed is identity on F_{5^3}
    auto f = K.frobenius(K.frobenius(K.frobenius(x)));
    CHECK(K.eq(f, x));
    // norm and trace land in F_5 and norm is multiplicative
    auto y = K.add(t, K.one());
    CHECK(K.base.mul(K.norm(x), K.norm(y)) == K.norm(K.mul(x, y)));
}

TEST_CASE("Fq sqrt") {
    auto K = make_fq(7, 2); // F_49, q = 1 mod 4
    std::mt19937_64 rng(1);
    int tested = 0;
    while (tested < 20) {
        auto a = K.random_elt(rng);
        if (!K.is_square(a)) continue;
        auto r = K.sqrt(a);
        CHECK(K.eq(K.mul(r, r), a));
        ++tested;
    }
}

TEST_CASE("factorization over Fp recovers factors") {
    FpField K(11);
    // f = x(x+1)^2(x^2+1) ; x^2+1 irreducible mod 11? -1 is QR mod 11? 10^? ;
    // 11 = 3 mod 4 so -1 is a non-residue, x^2+1 is irreducible.
    Poly<FpField> x = poly_x(K);
    Poly<FpField> xp1; xp1.c = {1, 1};
    Poly<FpField> q; q.c = {1, 0, 1};
    auto f = poly_mul(K, x, poly_mul(K, poly_mul(K, xp1, xp1), q));
    auto fac = poly_factor(K, f);
    REQUIRE(fac.size() == 3);
    // reassemble
    Poly<FpField> prod = poly_one(K);
    int total = 0;
    for (auto& [g, m] : fac) {
        total += g.deg() * m;
        for (int i = 0; i < m; ++i) prod = poly_mul(K, prod, g);
    }
    CHECK(total == f.deg());
    CHECK(poly_eq(K, prod, poly_monic(K, f)));
}

TEST_CASE("factorization over Fq") {
    auto K = make_fq(3, 2);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        // random monic degree-6 poly
        Poly<FqField> f;
        f.c.resize(7);
        for (int i = 0; i < 6; ++i) f.c[i] = K.random_elt(rng);
        f.c[6] = K.one();
        auto fac = poly_factor(K, f);
        Poly<FqField> prod = poly_one(K);
        for (auto& [g, m] : fac)
            for (int i = 0; i < m; ++i) prod = poly_mul(K, prod, g);
        CHECK(poly_eq(K, prod, f));
        for (auto& [g, m] : fac) {
            (void)m;
            CHECK(poly_irreducible(K, g));
        }
    }
}

TEST_CASE("rref, kernel, solve over Fp") {
    FpField K(7);
    Mat<FpField> m(K, 3, 4);
    // rows: [1 2 3 4; 2 4 6 1; 0 0 1 1]
    uint64_t vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 2}, {0, 0, 1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = vals[i][j];
    CHECK(mat_rank(K, m) == 3);
    auto ker = kernel_basis(K, m);
    CHECK((int)ker.size() == 1);
    for (auto& v : ker) {
        for (int i = 0; i < 3; ++i) {
            uint64_t s = 0;
            for (int j = 0; j < 4; ++j) s = K.add(s, K.mul(m.at(i, j), v[j]));
            CHECK(s == 0);
        }
    }
    std::vector<uint64_t> b = {1, 1, 1}, x;
    REQUIRE(mat_solve(K, m, b, x));
    for (int i = 0; i < 3; ++i) {
        uint64_t s = 0;
        for (int j = 0; j < 4; ++j) s = K.add(s, K.mul(m.at(i, j), x[j]));
        CHECK(s == b[i]);
    }
}

TEST_CASE("HNF and SNF") {
    // (1,1),(2,0) give (0,2); with (0,3) that yields (0,1) and then (1,0):
    // the three rows generate all of Z^2.
    ZMat m = {{2, 0}, {0, 3}, {1, 1}};
    auto h = hnf(m);
    REQUIRE(h.size() == 2);
    CHECK(h[0][0] * h[1][1] == 1);

    // an index-6 sublattice keeps determinant 6
    auto h2 = hnf({{2, 0}, {0, 3}});
    REQUIRE(h2.size() == 2);
    CHECK(h2[0][0] * h2[1][1] == 6);

    auto d = snf_diagonal({{2, 0}, {0, 8}});
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 2);
    CHECK(d[1] == 8);
    auto d2 = snf_diagonal({{4, 0}, {0, 6}});
    REQUIRE(d2.size() == 2);
    CHECK(d2[0] == 2);
    CHECK(d2[1] == 12);
}
