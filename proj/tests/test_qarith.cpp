#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ag/qfactor.hpp"
#include "ag/numfield.hpp"

using namespace ag;

static QPoly qp(std::initializer_list<long> cs) {
    QPoly r;
    for (long c : cs) r.c.push_back(Rat(c));
    QField Q;
    r.trim(Q);
    return r;
}

TEST_CASE("factor x^8-4x^7-6x^6-4x^5-9x^4+4x^3-6x^2+4x+1 over Q") {
    // this octic splits as (x^2+x-1) * (degree-6)
    QPoly f = qp({1, 4, -6, 4, -9, -4, -6, -4, 1});
    auto fac = qpoly_factor(f);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first.deg() == 2);
    CHECK(fac[1].first.deg() == 6);
    CHECK(poly_eq(QField{}, fac[0].first, qp({-1, 1, 1})));
    CHECK(poly_eq(QField{}, fac[1].first, qp({-1, -5, 0, -9, 0, -5, 1})));
    QField Q;
    auto prod = poly_mul(Q, fac[0].first, fac[1].first);
    CHECK(poly_eq(Q, prod, f));
}

TEST_CASE("irreducibility of small minimal polynomials") {
    for (auto cs : {std::vector<long>{-5, 0, 1},
                    std::vector<long>{-1, 0, 2, 1, 1},
                    std::vector<long>{-5, 0, 0, 0, 1},
                    std::vector<long>{-4, 4, 1, -1, 1},
                    std::vector<long>{-2, -1, 2, -1, 1},
                    std::vector<long>{-1, -2, 1, 1}}) {
        QPoly f;
        for (long c : cs) f.c.push_back(Rat(c));
        auto fac = qpoly_factor(f);
        REQUIRE(fac.size() == 1);
        CHECK(fac[0].first.deg() == f.deg());
        CHECK(fac[0].second == 1);
    }
}

TEST_CASE("rational roots and multiplicities") {
    QField Q;
    // (x-2)^2 (x+3) (x^2+1)
    QPoly f = poly_mul(Q, poly_mul(Q, qp({-2, 1}), qp({-2, 1})),
                       poly_mul(Q, qp({3, 1}), qp({1, 0, 1})));
    auto roots = qpoly_roots(f);
    REQUIRE(roots.size() == 2);
    bool saw2 = false, sawm3 = false;
    for (auto& [r, m] : roots) {
        if (r == 2) { saw2 = true; CHECK(m == 2); }
        if (r == -3) { sawm3 = true; CHECK(m == 1); }
    }
    CHECK(saw2);
    CHECK(sawm3);
}

TEST_CASE("random products factor back") {
    QField Q;
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        // product of 2-3 random small-degree integer polys
        QPoly f = qp({1});
        int total = 0;
        int k = 2 + (int)(rng() % 2);
        for (int i = 0; i < k; ++i) {
            int d = 1 + (int)(rng() % 3);
            QPoly g;
            for (int j = 0; j < d; ++j) g.c.push_back(Rat((long)(rng() % 11) - 5));
            g.c.push_back(Rat(1 + (long)(rng() % 3)));
            g.trim(Q);
            total += g.deg();
            f = poly_mul(Q, f, g);
        }
        auto fac = qpoly_factor(f);
        QPoly prod = qp({1});
        int degsum = 0;
        for (auto& [g, m] : fac) {
            for (int i = 0; i < m; ++i) prod = poly_mul(Q, prod, g);
            degsum += g.deg() * m;
        }
        CHECK(degsum == total);
        // compare after making monic
        CHECK(poly_eq(Q, poly_monic(Q, prod), poly_monic(Q, f)));
    }
}

TEST_CASE("number field arithmetic in Q(sqrt 5)") {
    NumberField K(qp({-5, 0, 1}));
    auto t = K.gen(); // sqrt 5
    CHECK(K.eq(K.mul(t, t), K.from_int(5)));
    // golden ratio phi = (1+t)/2 satisfies x^2 - x - 1
    auto phi = K.div(K.add(K.one(), t), K.from_int(2));
    auto lhs = K.sub(K.sub(K.mul(phi, phi), phi), K.one());
    CHECK(K.is_zero(lhs));
    // inverse round trip
    auto x = K.add(K.mul(K.from_int(3), t), K.from_int(2));
    CHECK(K.eq(K.mul(x, K.inv(x)), K.one()));
}

TEST_CASE("reduction of a number field into F_{p^2}") {
    NumberField K(qp({-5, 0, 1})); // Q(sqrt 5)
    // 5 is a non-residue mod 13? 13: squares are 1,4,9,3,12,10 -> 5 not there,
    // so x^2-5 is irreducible and theta reduces into F_169.
    auto F = make_fq(13, 2);
    auto roots = qpoly_roots_in_fq(F, K.minpoly);
    REQUIRE(roots.size() == 2);
    auto th = roots[0];
    CHECK(F.eq(F.mul(th, th), F.from_int(5)));
    auto phi = K.div(K.add(K.one(), K.gen()), K.from_int(2));
    auto phibar = K.reduce(F, th, phi);
    // image satisfies x^2 - x - 1 = 0 in F_169
    auto lhs = F.sub(F.sub(F.mul(phibar, phibar), phibar), F.one());
    CHECK(F.is_zero(lhs));
}
