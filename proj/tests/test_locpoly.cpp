#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicr/locpoly.hpp"

using namespace padicr;

namespace {
auto Q2 = Field::make(FieldDescriptor{2, 1, 1}, 16);
auto Q3 = Field::make(FieldDescriptor{3, 1, 1}, 16);
auto U32 = Field::make(FieldDescriptor{3, 2, 1}, 16);

LocPolyFun rnd_fun(const std::shared_ptr<const Field>& F, std::mt19937_64& g, int level,
                   int maxdeg) {
    LocPolyFun f(F, level);
    auto idxs = index_set(Rel::LE, maxdeg, F->d());
    uint64_t reps = 1;
    for (int t = 0; t < level; ++t) reps *= (uint64_t)F->q();
    int n = 1 + (int)(g() % 4);
    for (int t = 0; t < n; ++t) {
        CosetRep a = F->unpack_rep(g() % reps, level);
        long long v = (long long)(g() % 39) - 19;
        if (!v) v = 3;
        f.set_coeff(a, idxs[g() % idxs.size()], Scalar::from_int(F, v));
    }
    return f;
}

Scalar rnd_point(const std::shared_ptr<const Field>& F, std::mt19937_64& g) {
    std::vector<uint16_t> d(6);
    for (auto& x : d) x = (uint16_t)(g() % F->q());
    d.resize(12, 0);
    bool allz = true;
    for (auto x : d) allz = allz && x == 0;
    return allz ? Scalar::zero(F) : Scalar::from_digits(F, 0, d);
}
}  // namespace

TEST_CASE("eval basics") {
    LocPolyFun one = LocPolyFun::constant(Q3, Scalar::one(Q3));
    CHECK(eq_to_prec(eval(one, Scalar::from_int(Q3, 7)), Scalar::one(Q3)));

    CosetRep a1;
    a1.digits = {1};
    LocPolyFun ind = LocPolyFun::indicator(Q2, a1);
    CHECK(eq_to_prec(eval(ind, Scalar::from_int(Q2, 3)), Scalar::one(Q2)));
    CHECK(eval(ind, Scalar::from_int(Q2, 2)).is_zero_like());

    LocPolyFun z2 = LocPolyFun::monomial(Q3, MultiIndex({2}), Scalar::one(Q3));
    CHECK(eq_to_prec(eval(z2, Scalar::from_int(Q3, 4)), Scalar::from_int(Q3, 16)));
}

TEST_CASE("eval needs the coset to be resolved") {
    CosetRep a1;
    a1.digits = {1};
    LocPolyFun ind = LocPolyFun::indicator(Q2, a1);
    Scalar fuzzy = Scalar::one(Q2) - Scalar::one(Q2);  // O(2^16), fine
    CHECK_NOTHROW(eval(ind, fuzzy));
    // a point known to zero digits cannot be located at level 1
    Scalar vague = Scalar::zero_to_prec(Q2, 0);
    CHECK_THROWS_AS(eval(ind, vague), PrecisionExhausted);
}

TEST_CASE("refine: constants, z at level 0 -> 1 + (z-1) on coset 1") {
    LocPolyFun fz = LocPolyFun::monomial(Q2, MultiIndex({1}), Scalar::one(Q2));
    LocPolyFun r = refine(fz);
    CosetRep one_rep;
    one_rep.digits = {1};
    CHECK(eq_to_prec(r.coeff(one_rep, MultiIndex({0})), Scalar::one(Q2)));
    CHECK(eq_to_prec(r.coeff(one_rep, MultiIndex({1})), Scalar::one(Q2)));
}

TEST_CASE("property: eval after refine is pointwise identical") {
    std::mt19937_64 g(23);
    for (int t = 0; t < 20; ++t) {
        const auto& F = (t % 2) ? Q3 : U32;
        LocPolyFun f = rnd_fun(F, g, (int)(g() % 3), 3);
        LocPolyFun rf = refine(f);
        for (int s = 0; s < 5; ++s) {
            Scalar z = rnd_point(F, g);
            CHECK(eq_to_prec(eval(rf, z), eval(f, z)));
        }
    }
}

TEST_CASE("derived on monomials: binom(m,i) z^{m-i}") {
    LocPolyFun f = LocPolyFun::monomial(Q3, MultiIndex({3}), Scalar::one(Q3));
    LocPolyFun d = derived(f, MultiIndex({1}));
    CHECK(eq_to_prec(d.coeff(CosetRep{}, MultiIndex({2})), Scalar::from_int(Q3, 3)));
    CHECK(eq_to_prec(derived(f, MultiIndex({0})).coeff(CosetRep{}, MultiIndex({3})),
                     Scalar::one(Q3)));
    CHECK(derived(f, MultiIndex({4})).empty());
}

TEST_CASE("remainder: triviality below the degree and at y = 0") {
    std::mt19937_64 g(29);
    LocPolyFun f = rnd_fun(Q3, g, 0, 2);
    // total degree <= [r]: remainder vanishes identically
    for (int t = 0; t < 5; ++t) {
        Scalar x = rnd_point(Q3, g), y = rnd_point(Q3, g);
        CHECK(remainder(f, Rational(2), x, y).is_zero_like());
        CHECK(remainder(f, Rational(1), x, Scalar::zero(Q3)).is_zero_like());
    }
}

TEST_CASE("remainder of z^m matches the explicit binomial tail") {
    // oracle: sum over l <= m, |l| >= [r]+1 of binom(m,l) y^l x^{m-l}
    std::mt19937_64 g(31);
    for (const auto& F : {Q3, U32}) {
        MultiIndex m = (F->d() == 1) ? MultiIndex({3}) : MultiIndex({2, 1});
        LocPolyFun f = LocPolyFun::monomial(F, m, Scalar::one(F));
        Rational r(3, 2);
        for (int t = 0; t < 8; ++t) {
            Scalar x = rnd_point(F, g), y = rnd_point(F, g);
            Scalar expect = Scalar::zero(F);
            for (const auto& l : index_set(Rel::LE, m.total(), F->d())) {
                if (!l.leq(m) || l.total() < (int)r.floor() + 1) continue;
                expect = expect + F->int_scalar(mi_binom(m, l)) * monomial_eval(y, l) *
                                      monomial_eval(x, m - l);
            }
            CHECK(eq_to_prec(remainder(f, r, x, y), expect));
        }
    }
}

TEST_CASE("product: identity, squares, and the pointwise oracle") {
    std::mt19937_64 g(37);
    LocPolyFun fz = LocPolyFun::monomial(Q3, MultiIndex({1}), Scalar::one(Q3));
    LocPolyFun sq = product(fz, fz);
    CHECK(eq_to_prec(sq.coeff(CosetRep{}, MultiIndex({2})), Scalar::one(Q3)));
    for (int t = 0; t < 10; ++t) {
        const auto& F = (t % 2) ? Q3 : U32;
        LocPolyFun f = rnd_fun(F, g, (int)(g() % 2), 2);
        LocPolyFun h = rnd_fun(F, g, (int)(g() % 3), 2);
        LocPolyFun fh = product(f, h);
        LocPolyFun onef = product(f, LocPolyFun::constant(F, Scalar::one(F)));
        CHECK(eq_to_prec(onef, f));
        for (int s = 0; s < 4; ++s) {
            Scalar z = rnd_point(F, g);
            CHECK(eq_to_prec(eval(fh, z), eval(f, z) * eval(h, z)));
        }
    }
}

TEST_CASE("fh_norm examples and refine monotonicity") {
    LocPolyFun fz = LocPolyFun::monomial(Q2, MultiIndex({1}), Scalar::one(Q2));
    CHECK(fh_norm(fz).pexp == Rational(0));

    // (z - a) on a single coset at level h: q^{-h}
    CosetRep a;
    a.digits = {1, 1};
    LocPolyFun g2(Q2, 2);
    g2.set_coeff(a, MultiIndex({1}), Scalar::one(Q2));
    CHECK(fh_norm(g2).pexp == Rational(2));

    std::mt19937_64 g(41);
    for (int t = 0; t < 20; ++t) {
        const auto& F = (t % 2) ? Q3 : U32;
        LocPolyFun f = rnd_fun(F, g, (int)(g() % 2), 3);
        // continuous inclusion: norm does not grow under refinement
        CHECK(!value_less(fh_norm(f), fh_norm(refine(f))));
    }
}

TEST_CASE("D_{i+j} composition holds on tables") {
    std::mt19937_64 g(43);
    for (int t = 0; t < 20; ++t) {
        const auto& F = (t % 2) ? Q3 : U32;
        LocPolyFun f = rnd_fun(F, g, (int)(g() % 2), 3);
        auto idxs = index_set(Rel::LE, 2, F->d());
        MultiIndex i = idxs[g() % idxs.size()], j = idxs[g() % idxs.size()];
        LocPolyFun lhs = derived(derived(f, i), j);
        LocPolyFun rhs = scalar_mul(F->int_scalar(mi_binom(i + j, i)), derived(f, i + j));
        CHECK(eq_to_prec(lhs, rhs));
    }
}

TEST_CASE("boundary profile: J' enlargement") {
    BoundaryProfile bp;
    bp.in_J = {false, false};
    bp.caps = {std::optional<int>(1), std::optional<int>(0)};
    // r = 3/2: d+1 > r iff d+1 > 1.5: cap 1 -> 2 > 1.5 joins J'; cap 0 -> 1 < 1.5 stays out
    auto jp = bp.j_prime(Rational(3, 2));
    CHECK(jp[0] == true);
    CHECK(jp[1] == false);
}
