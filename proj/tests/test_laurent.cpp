#include "trop/laurent.hpp"
#include "trop/json_io.hpp"

#include <doctest.h>

#include <random>

using namespace trop;

namespace {

QLaurent ql(std::initializer_list<std::pair<int, long>> terms) {
    QLaurent p;
    for (const auto& [e, c] : terms) p.add_term(e, Rat(c));
    return p;
}

QLaurent plus_den() { return ql({{1, 1}, {-1, 1}}); }  // q + q^{-1}

QLaurent random_laurent(std::mt19937_64& rng) {
    QLaurent p;
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < terms; ++i) {
        int e = static_cast<int>(rng() % 9) - 4;
        long c = static_cast<long>(rng() % 7) - 3;
        p.add_term(e, Rat(c));
    }
    if (p.is_zero()) p.add_term(0, 1);
    return p;
}

} // namespace

TEST_CASE("bracket_minus expansions") {
    CHECK(bracket_minus(1) == QLaurent::one());
    CHECK(bracket_minus(3) == ql({{2, 1}, {0, 1}, {-2, 1}}));
    CHECK(bracket_minus(-2) == ql({{1, -1}, {-1, -1}}));
    CHECK(bracket_minus(0).is_zero());
    for (long long a = 1; a <= 9; ++a) CHECK(bracket_minus(-a) == -bracket_minus(a));
}

TEST_CASE("bracket_minus specializes to a at q=1 and has exponent parity a-1") {
    for (long long a = 1; a <= 12; ++a) {
        CHECK(bracket_minus(a).eval_q(1) == rat_of(a));
        if (a % 2 == 1) {
            CHECK_NOTHROW(to_y(bracket_minus(a)));
        } else {
            CHECK_THROWS_AS(to_y(bracket_minus(a)), std::domain_error);
        }
    }
}

TEST_CASE("bracket_plus") {
    CHECK(*bracket_plus(1).reduce() == QLaurent::one());
    CHECK(*bracket_plus(3).reduce() == ql({{2, 1}, {0, -1}, {-2, 1}}));
    // even argument stays an honest fraction
    CHECK_FALSE(bracket_plus(2).reduce().has_value());
    CHECK(bracket_plus(2) == QFraction(ql({{2, 1}, {-2, 1}}), plus_den()));
    CHECK(bracket_plus(-3) == bracket_plus(3));
    CHECK_THROWS_AS(bracket_plus(0), std::invalid_argument);
    for (long long a = 1; a <= 12; ++a) CHECK(bracket_plus(a).eval_q(1) == 1);
}

TEST_CASE("end multiplicities") {
    CHECK(end_mult(1, true) == QFraction::one());
    CHECK(end_mult(1, false) == QFraction::one());
    CHECK(*end_mult(3, true).reduce() == ql({{2, 1}, {0, 1}, {-2, 1}}));
    CHECK(end_mult(2, false) == QFraction::of(plus_den() * Rat(1, 2)));

    CHECK(end_mult_simple(1, true) == QFraction::one());
    CHECK(end_mult_simple(1, false) == QFraction::one());
    CHECK(end_mult_simple(2, true) == QFraction(ql({{2, 1}, {-2, 1}}), plus_den()));
    CHECK(end_mult_simple(3, false) == QFraction::of(ql({{2, 1}, {0, 1}, {-2, 1}}) * Rat(1, 3)));
}

TEST_CASE("to_y and eval_y") {
    YLaurent p = to_y(ql({{2, 1}, {0, 10}, {-2, 1}}));
    CHECK(p.coeff(1) == 1);
    CHECK(p.coeff(0) == 10);
    CHECK(p.coeff(-1) == 1);
    CHECK(eval_y(p, 1) == 12);
    CHECK(eval_y(p, -1) == 8);
    CHECK(to_y(QLaurent::one()) == YLaurent::constant(1));
    CHECK_THROWS_AS(to_y(plus_den()), std::domain_error);
    CHECK(eval_y(YLaurent(), Rat(5)) == 0);
    CHECK_THROWS_AS(eval_y(p, Rat(0)), std::domain_error);
}

TEST_CASE("plus divisibility order") {
    CHECK(plus_divisibility_order(plus_den()) == 1);
    // the oracle: attempted exact division leaves a remainder
    CHECK_FALSE(divide_exact(ql({{2, 1}, {0, 1}, {-2, 1}}), plus_den()).has_value());
    CHECK(plus_divisibility_order(ql({{2, 1}, {0, 1}, {-2, 1}})) == 0);
    CHECK(plus_divisibility_order(ql({{2, 1}, {0, 2}, {-2, 1}})) == 2);
    CHECK(*divide_exact(ql({{2, 1}, {0, 2}, {-2, 1}}), plus_den()) == plus_den());
}

TEST_CASE("symmetry predicate") {
    CHECK(is_symmetric(plus_den()));
    CHECK_FALSE(is_symmetric(ql({{2, 1}, {0, 1}})));
    CHECK(is_symmetric(QLaurent::zero()));
}

TEST_CASE("minus/plus product identity for even arguments up to 12") {
    auto big_minus = [](long long n) {
        return QLaurent::monomial(static_cast<int>(n), 1) - QLaurent::monomial(static_cast<int>(-n), 1);
    };
    QLaurent den2 = ql({{2, 1}, {-2, -1}});  // q^2 - q^{-2}
    for (long long a = 2; a <= 12; a += 2) {
        for (long long b = 2; b <= 12; b += 2) {
            QFraction lhs = QFraction::of(bracket_minus(a)) * bracket_plus(b);
            QFraction rhs(big_minus(a + b) + big_minus(a - b), den2);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("fraction inverse products") {
    std::mt19937_64 rng(20240915);
    for (int i = 0; i < 50; ++i) {
        QLaurent p = random_laurent(rng);
        QLaurent r = random_laurent(rng);
        QFraction f(p, r);
        QFraction g(r, p);
        CHECK(f * g == QFraction::one());
    }
}

TEST_CASE("fraction normalization anchors the denominator") {
    QFraction f(ql({{3, 2}, {1, 2}}), ql({{0, -2}, {-2, -2}}));
    CHECK(f.den().min_exp() == 0);
    CHECK(f.den().coeff(0) == 1);
    CHECK(f == QFraction::of(ql({{5, -1}, {3, -1}})) * QFraction(QLaurent::one(), ql({{2, 1}, {0, 1}})));
}

TEST_CASE("laurent json round trip") {
    QLaurent p = ql({{3, 5}, {0, -2}, {-4, 7}}) * Rat(1, 6);
    json j = to_json(p);
    CHECK(qlaurent_from_json(j) == p);
    CHECK(j.dump() == json::parse(j.dump()).dump());

    YLaurent y = to_y(ql({{2, 1}, {0, 10}, {-2, 1}}));
    json jy = to_json(y);
    CHECK(jy.at("variable") == "y");
    CHECK(ylaurent_from_json(jy) == y);
}
