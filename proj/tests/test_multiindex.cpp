#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicr/multiindex.hpp"

using namespace padicr;

namespace {
auto Q5 = Field::make(FieldDescriptor{5, 1, 1}, 12);
auto R32 = Field::make(FieldDescriptor{3, 1, 2}, 16);
auto U32 = Field::make(FieldDescriptor{3, 2, 1}, 16);
}  // namespace

TEST_CASE("index_set examples") {
    auto s1 = index_set(Rel::LE, 2, 1);
    REQUIRE(s1.size() == 3);
    CHECK(s1[0] == MultiIndex({0}));
    CHECK(s1[2] == MultiIndex({2}));

    auto s2 = index_set(Rel::EQ, 2, 2);
    REQUIRE(s2.size() == 3);
    CHECK(s2[0] == MultiIndex({2, 0}));
    CHECK(s2[1] == MultiIndex({1, 1}));
    CHECK(s2[2] == MultiIndex({0, 2}));

    Caps caps = {std::optional<int>(0), std::nullopt};
    auto s3 = index_set(Rel::LE, 1, 2, caps);
    REQUIRE(s3.size() == 2);
    CHECK(s3[0] == MultiIndex({0, 0}));
    CHECK(s3[1] == MultiIndex({0, 1}));

    CHECK_THROWS_AS(index_set(Rel::GE, 1, 2), UnboundedSet);
    CHECK(index_set(Rel::GT, 1, 2, std::nullopt, 3).size() ==
          index_set(Rel::LE, 3, 2).size() - index_set(Rel::LE, 1, 2).size());
}

TEST_CASE("mi_binom") {
    CHECK(mi_binom(MultiIndex({2, 1}), MultiIndex({1, 0})) == 2);
    CHECK(mi_binom(MultiIndex({3, 2}), MultiIndex({0, 0})) == 1);
    CHECK(mi_binom(MultiIndex({3, 2}), MultiIndex({1, 1})) == 6);
    CHECK_THROWS_AS(mi_binom(MultiIndex({1, 0}), MultiIndex({0, 1})), IndexOrderViolation);
}

TEST_CASE("monomial_eval basics") {
    CHECK(eq_to_prec(monomial_eval(Scalar::from_int(Q5, 2), MultiIndex({3})),
                     Scalar::from_int(Q5, 8)));
    CHECK(eq_to_prec(monomial_eval(Scalar::from_int(Q5, 13), MultiIndex({0})), Scalar::one(Q5)));
    // pi^{(1,1)} = pi * (-pi) = -3 in the ramified quadratic; |.| = q^{-2}
    Scalar m = monomial_eval(Scalar::pi_pow(R32, 1), MultiIndex({1, 1}));
    CHECK(eq_to_prec(m, Scalar::from_int(R32, -3)));
    CHECK(m.abs().pexp == Rational(2));
}

TEST_CASE("property: monomial_eval is multiplicative in the index") {
    std::mt19937_64 g(17);
    for (int t = 0; t < 100; ++t) {
        const auto& F = (t % 2) ? R32 : U32;
        Scalar z = Scalar::from_int(F, (long long)(g() % 40) + 1).shift_pi((long long)(g() % 2));
        MultiIndex m({(int)(g() % 3), (int)(g() % 3)});
        MultiIndex n({(int)(g() % 3), (int)(g() % 3)});
        CHECK(eq_to_prec(monomial_eval(z, m + n), monomial_eval(z, m) * monomial_eval(z, n)));
        // |z^m| <= 1 for z in O_F
        bool bounded = !(monomial_eval(z, m).abs().pexp < Rational(0));
        CHECK(bounded);
    }
}

TEST_CASE("valuation of monomials on shells: |z^n| = q^{-h|n|}") {
    for (const auto& F : {R32, U32}) {
        for (int h = 0; h < 3; ++h) {
            Scalar z = (Scalar::one(F) + Scalar::pi_pow(F, 1)).shift_pi(h);
            MultiIndex n({1, 2});
            CHECK(monomial_eval(z, n).abs().pexp == Rational((long long)F->f() * h * n.total()));
        }
    }
}

TEST_CASE("pi_monomial matches monomial_eval on uniformizer powers") {
    for (const auto& F : {R32, U32}) {
        for (long long t = 0; t <= 3; ++t)
            for (const auto& n : index_set(Rel::LE, 3, F->d()))
                CHECK(eq_to_prec(pi_monomial(F, t, n), monomial_eval(Scalar::pi_pow(F, t), n)));
    }
}
