#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ag/series.hpp"
#include "ag/rings.hpp"
#include "ag/fp.hpp"
#include "ag/padic.hpp"

using namespace ag;

static Series<QField> qs(int val, std::initializer_list<long> cs, int prec) {
    QField Q;
    std::vector<Rat> v;
    for (long c : cs) v.push_back(Rat(c));
    return series_make(Q, val, v, prec);
}

TEST_CASE("construction trims leading zeros into the valuation") {
    QField Q;
    auto s = qs(0, {0, 0, 3, 1}, 10);
    CHECK(s.val == 2);
    CHECK(series_coeff(Q, s, 2) == 3);
    CHECK(series_coeff(Q, s, 5) == 0);
    CHECK_THROWS(series_coeff(Q, s, 10)); // beyond precision is an error
}

TEST_CASE("geometric series inverse") {
    QField Q;
    // 1 - x has inverse 1 + x + x^2 + ...
    auto s = qs(0, {1, -1}, 8);
    auto i = series_inv(Q, s);
    for (int n = 0; n < 8; ++n)
        CHECK(series_coeff(Q, i, n) == 1);
    // and s * i == 1
    auto p = series_mul(Q, s, i);
    CHECK(series_coeff(Q, p, 0) == 1);
    for (int n = 1; n < p.prec; ++n)
        CHECK(series_coeff(Q, p, n) == 0);
}

TEST_CASE("Laurent inverse tracks valuation and precision") {
    QField Q;
    auto s = qs(-2, {1, 1}, 4); // x^-2 + x^-1 + O(x^4)
    auto i = series_inv(Q, s);
    CHECK(i.val == 2);
    CHECK(i.prec == 8);
    auto p = series_mul(Q, s, i);
    CHECK(series_coeff(Q, p, 0) == 1);
}

TEST_CASE("composition") {
    QField Q;
    // a(y) = 1/(1-y), b = x + x^2 ; a(b) = 1 + (x+x^2) + (x+x^2)^2 + ...
    auto a = qs(0, {1, 1, 1, 1, 1, 1}, 6);
    auto b = qs(1, {1, 1}, 6);
    auto comp = series_compose(Q, a, b);
    // closed form: 1/(1-x-x^2) has Fibonacci coefficients 1,1,2,3,5,8
    long fib[6] = {1, 1, 2, 3, 5, 8};
    for (int n = 0; n < 6 && n < comp.prec; ++n)
        CHECK(series_coeff(Q, comp, n) == fib[n]);
}

TEST_CASE("derivative and sqrt") {
    QField Q;
    auto s = qs(0, {1, 2, 3, 4}, 4); // 1+2x+3x^2+4x^3
    auto d = series_derivative(Q, s);
    CHECK(series_coeff(Q, d, 0) == 2);
    CHECK(series_coeff(Q, d, 1) == 6);
    CHECK(series_coeff(Q, d, 2) == 12);

    // sqrt(1+x)^2 == 1+x
    auto t = qs(0, {1, 1}, 10);
    auto r = series_sqrt(Q, t, Rat(1));
    auto sq = series_mul(Q, r, r);
    CHECK(series_coeff(Q, sq, 0) == 1);
    CHECK(series_coeff(Q, sq, 1) == 1);
    for (int n = 2; n < sq.prec; ++n)
        CHECK(series_coeff(Q, sq, n) == 0);
}

TEST_CASE("series over Fp") {
    FpField K(11);
    auto s = series_make(K, 0, std::vector<uint64_t>{1, 3, 7}, 6);
    auto i = series_inv(K, s);
    auto p = series_mul(K, s, i);
    CHECK(series_coeff(K, p, 0) == 1);
    for (int n = 1; n < p.prec; ++n)
        CHECK(series_coeff(K, p, n) == 0);
}

TEST_CASE("series over truncated Zq keeps p-adic precision") {
    ZqRing R(13, 2, 6);
    auto one = R.one();
    auto s = series_make(R, 0, std::vector<ZqElt>{one, R.gen(), R.from_int(5)}, 5);
    auto i = series_inv(R, s);
    auto p = series_mul(R, s, i);
    CHECK(R.eq(series_coeff(R, p, 0), one));
    for (int n = 1; n < p.prec; ++n)
        CHECK(R.is_zero(series_coeff(R, p, n)));
}
