#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ag/jacobian.hpp"
#include "ag/curves.hpp"

using namespace ag;

static JacFp jac_mod_p(const Catalog& cat, const std::string& name, std::uint64_t p) {
    FpField K(p);
    return JacFp(HypCurve<FpField>(K, cat.hyperelliptic(name).f_over(K)));
}

TEST_CASE("group law sanity") {
    auto cat = Catalog::load_default();
    auto J = jac_mod_p(cat, "x0_35", 3);
    std::mt19937_64 rng(7);

    auto z = J.zero();
    CHECK(J.is_zero(z));
    for (int i = 0; i < 5; ++i) {
        auto a = J.random_element(rng);
        auto b = J.random_element(rng);
        auto c = J.random_element(rng);
        CHECK(J.eq(J.add(a, b), J.add(b, a)));
        CHECK(J.eq(J.add(J.add(a, b), c), J.add(a, J.add(b, c))));
        CHECK(J.is_zero(J.add(a, J.neg(a))));
        CHECK(J.eq(J.add(a, z), a));
        // group order kills everything
        CHECK(J.is_zero(J.mul(a, 48)));
        CHECK(J.element_order(a, 48) % 1 == 0);
        CHECK(Int(48) % J.element_order(a, 48) == 0);
    }
}

TEST_CASE("structure by enumeration matches catalog fixtures") {
    auto cat = Catalog::load_default();
    auto s35 = jacobian_structure(jac_mod_p(cat, "x0_35", 3), 1, 48);
    CHECK(s35.invariants() == std::vector<Int>{2, 24});
    CHECK(s35.to_string() == "Z/2 x Z/24");

    auto s5 = jacobian_structure(jac_mod_p(cat, "xs3_b7", 5), 1, 192);
    CHECK(s5.invariants() == std::vector<Int>{2, 2, 2, 24});
}

TEST_CASE("structure by Sylow sampling agrees with enumeration") {
    auto cat = Catalog::load_default();
    // force the sampling path by setting the enumeration limit to 1
    auto s = jacobian_structure(jac_mod_p(cat, "x0_35", 3), 3, 48, 1);
    CHECK(s.invariants() == std::vector<Int>{2, 24});
}

TEST_CASE("abelian group calculus") {
    auto g = AbGroup::from_invariants({2, 24});
    CHECK(g.parts.at(2) == Partition{3, 1});
    CHECK(g.parts.at(3) == Partition{1});
    CHECK(g.invariants() == std::vector<Int>{2, 24});
    CHECK(g.order() == 48);

    auto h16 = AbGroup::from_invariants({16});
    auto h216 = AbGroup::from_invariants({2, 16});
    CHECK(ab_embeds(h16, h216));
    CHECK(!ab_embeds(h216, h16));
    CHECK(ab_embeds(h16, g) == false); // Z/16 does not embed in Z/2 x Z/24

    // meet: Z/4 x Z/8 vs Z/2 x Z/16 -> Z/2 x Z/8
    auto m = ab_meet({AbGroup::from_invariants({4, 8}), AbGroup::from_invariants({2, 16})});
    CHECK(m.invariants() == std::vector<Int>{2, 8});

    // interval [Z/16, Z/2 x Z/16] has exactly the two endpoints
    auto iv = ab_interval(h16, h216);
    REQUIRE(iv.size() == 2);
    CHECK(iv[0].invariants() == std::vector<Int>{16});
    CHECK(iv[1].invariants() == std::vector<Int>{2, 16});
}

TEST_CASE("torsion candidates from reductions") {
    // shapes of J(F_11) and J(F_13) for the degree-6 quotient curve
    auto r11 = AbGroup::from_invariants({2, 2, 60, 600});
    auto r13 = AbGroup::from_invariants({2, 6, 6, 3168});
    auto lower = AbGroup::from_invariants({6, 24});
    auto cands = torsion_candidates({r11, r13}, lower);
    REQUIRE(cands.size() == 3);
    CHECK(cands[0].invariants() == std::vector<Int>{6, 24});
    CHECK(cands[1].invariants() == std::vector<Int>{2, 6, 24});
    CHECK(cands[2].invariants() == std::vector<Int>{2, 2, 6, 24});
}

TEST_CASE("rational two-torsion rank of odd-degree models") {
    auto cat = Catalog::load_default();
    CHECK(two_torsion_rank_q(cat.hyperelliptic("q105_w7_w105").f) == 2);
    CHECK(two_torsion_rank_q(cat.hyperelliptic("q105_w7_w21").f) == 2);
}
