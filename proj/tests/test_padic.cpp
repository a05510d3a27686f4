#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ag/padic.hpp"

using namespace ag;

TEST_CASE("Zp basics (d = 1)") {
    ZqRing R(13, 1, 8);
    auto a = R.from_int(5);
    auto b = R.from_int(-3);
    CHECK(R.eq(R.add(a, b), R.from_int(2)));
    CHECK(R.eq(R.mul(a, b), R.from_int(-15)));
    // inverse of a unit to full precision
    auto ai = R.inv(a);
    CHECK(R.eq(R.mul(a, ai), R.one()));
    CHECK(ai.prec == 8);
    // 1/3 * 3 == 1 via from_rat
    auto third = R.from_rat(Rat(1, 3));
    CHECK(R.eq(R.mul(third, R.from_int(3)), R.one()));
}

TEST_CASE("valuation and division by p") {
    ZqRing R(7, 1, 10);
    auto a = R.from_int(49 * 3);
    CHECK(R.val(a) == 2);
    auto b = R.div_pow_p(a, 2);
    CHECK(R.eq(b, R.from_int(3)));
    CHECK(b.prec == 8); // two digits of precision spent
    CHECK_THROWS(R.div_pow_p(R.from_int(3), 1));
}

TEST_CASE("precision propagates through arithmetic") {
    ZqRing R(5, 1, 10);
    auto a = R.from_int(25);
    auto low = R.div_pow_p(a, 2); // 1 with prec 8
    auto c = R.mul(low, R.from_int(7));
    CHECK(c.prec == 8);
    auto d = R.add(c, R.one());
    CHECK(d.prec == 8);
}

TEST_CASE("unramified extension Zq, q = 17^2") {
    ZqRing R(17, 2, 6);
    auto t = R.gen();
    // t satisfies the lifted modulus: reduce t^2 via mul and check residue
    // field behaviour: the residue of t generates F_289 over F_17.
    auto t2 = R.mul(t, t);
    auto r = R.residue_of(t2);
    auto rt = R.residue.mul(R.residue.gen(), R.residue.gen());
    CHECK(R.residue.eq(r, rt));
    // unit inverse in the extension
    auto x = R.add(R.mul(t, R.from_int(3)), R.from_int(2));
    CHECK(R.eq(R.mul(x, R.inv(x)), R.one()));
}

TEST_CASE("Hensel square root in Zq") {
    ZqRing R(13, 3, 8);
    std::mt19937_64 rng(9);
    int done = 0;
    while (done < 10) {
        auto u = R.residue.random_elt(rng);
        if (R.residue.is_zero(u) || !R.residue.is_square(u)) continue;
        auto a = R.lift_residue(u);
        // perturb upward so a is not just a Teichmueller-ish lift
        a = R.add(a, R.mul(R.from_int(13), R.from_int((long)(rng() % 100))));
        if (R.val(a) != 0 || !R.residue.is_square(R.residue_of(a))) continue;
        auto s = R.sqrt_unit(a);
        CHECK(R.eq(R.mul(s, s), a));
        ++done;
    }
}
