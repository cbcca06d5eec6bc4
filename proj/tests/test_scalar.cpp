#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicr/multiindex.hpp"

using namespace padicr;

namespace {
auto Q5 = Field::make(FieldDescriptor{5, 1, 1}, 16);
auto Q2 = Field::make(FieldDescriptor{2, 1, 1}, 16);
auto R32 = Field::make(FieldDescriptor{3, 1, 2}, 16);  // ramified quadratic
auto U32 = Field::make(FieldDescriptor{3, 2, 1}, 16);  // unramified quadratic

Scalar rnd_scalar(const std::shared_ptr<const Field>& F, std::mt19937_64& g) {
    long long v = (long long)(g() % 199) - 99;
    if (v == 0) v = 7;
    return Scalar::from_int(F, v).shift_pi((long long)(g() % 3));
}
}  // namespace

TEST_CASE("additive inverse is zero to precision") {
    Scalar z = Scalar::one(Q5) + Scalar::from_int(Q5, -1);
    CHECK(z.kind() == Scalar::Kind::ZeroToPrec);
    CHECK(z.abs().kind == AbsValue::Kind::UpperBound);
}

TEST_CASE("valuation multiplicativity: p*p in Q_3") {
    auto Q3 = Field::make(FieldDescriptor{3, 1, 1}, 16);
    Scalar p = Scalar::from_int(Q3, 3);
    Scalar p2 = p * p;
    CHECK(p2.lead_val() == Rational(2));
    CHECK(eq_to_prec(p2, Scalar::from_int(Q3, 9)));
}

TEST_CASE("uniformizer square in the ramified quadratic") {
    Scalar pi = Scalar::pi_pow(R32, 1);
    Scalar pi2 = pi * pi;
    // e f = 2, |pi^2| = q^{-2}
    CHECK(pi2.lead_val() == Rational(2));
    CHECK(eq_to_prec(pi2, Scalar::from_int(R32, 3)));
    CHECK(Scalar::pi_pow(R32, 1).abs().pexp == Rational(1));  // |pi| = q^{-1} = p^{-f}
}

TEST_CASE("divide: p^2 / p and negative valuations") {
    Scalar p = Scalar::from_int(Q5, 5);
    CHECK(eq_to_prec((p * p) / p, p));
    Scalar inv_p = Scalar::one(Q5) / p;
    CHECK(inv_p.lead_val() == Rational(-1));
}

TEST_CASE("geometric series digits of 1/(1-p), precision window") {
    // oracle: multiply back and compare to 1
    Scalar denom = Scalar::one(Q5) - Scalar::from_int(Q5, 5);
    Scalar g = Scalar::one(Q5) / denom;
    CHECK(eq_to_prec(g * denom, Scalar::one(Q5)));
    // frozen digits 1 + 5 + 25 + 125 + ...
    for (int k = 0; k < 4; ++k) CHECK(g.digits()[(size_t)k] == 1);
}

TEST_CASE("division by zero-to-precision rejected") {
    Scalar z = Scalar::one(Q5) - Scalar::one(Q5);
    CHECK_THROWS_AS(Scalar::one(Q5) / z, DivisionByZeroToPrecision);
}

TEST_CASE("abs: zero to precision gives an upper bound") {
    Scalar z = Scalar::one(Q5) - Scalar::one(Q5);
    AbsValue a = z.abs();
    CHECK(a.kind == AbsValue::Kind::UpperBound);
    CHECK(a.pexp == Rational(16));  // p^{-M f}, M = 16, f = 1
}

TEST_CASE("abs of 1/q by repeated division") {
    // |q^{-n}| = p^{n f d}
    for (const auto& F : {Q5, R32, U32}) {
        Scalar x = Scalar::one(F);
        Scalar q = Scalar::from_int(F, F->q());
        for (int n = 1; n <= 3; ++n) {
            x = x / q;
            CHECK(x.abs().pexp == Rational(-(long long)n * F->f() * F->d()));
        }
    }
}

TEST_CASE("teichmuller representatives") {
    CHECK(Scalar::teichmuller(Q5, 1) == Scalar::one(Q5));
    CHECK(Scalar::teichmuller(Q5, 0).is_exact_zero());
    // oracle: omega = teich(2) satisfies omega^4 = 1 and omega = 2 mod 5
    Scalar w = Scalar::teichmuller(Q5, 2);
    CHECK(w.digits()[0] == 2);
    CHECK(eq_to_prec(w.pow(4), Scalar::one(Q5)));
    // all nonzero residues, all fields
    for (const auto& F : {Q2, R32, U32}) {
        for (uint16_t t = 1; t < F->q(); ++t) {
            Scalar wt = Scalar::teichmuller(F, t);
            CHECK(eq_to_prec(wt.pow((unsigned)(F->q() - 1)), Scalar::one(F)));
        }
    }
}

TEST_CASE("property: |xy| = |x||y| and ultrametric bound") {
    std::mt19937_64 g(42);
    for (int t = 0; t < 200; ++t) {
        const auto& F = (t % 2) ? R32 : U32;
        Scalar x = rnd_scalar(F, g), y = rnd_scalar(F, g);
        CHECK((x * y).abs().pexp == x.abs().pexp + y.abs().pexp);
        AbsValue s = (x + y).abs();
        Rational m = std::min(x.abs().pexp, y.abs().pexp);
        if (s.kind != AbsValue::Kind::UpperBound) CHECK(s.pexp >= m);
        if (!(x.abs().pexp == y.abs().pexp)) CHECK(s.pexp == m);
        // divide(mul(x,y), y) = x
        CHECK(eq_to_prec((x * y) / y, x));
    }
}

TEST_CASE("scalar string round trip is bit exact") {
    std::mt19937_64 g(7);
    for (int t = 0; t < 100; ++t) {
        const auto& F = (t % 3 == 0) ? Q5 : ((t % 3 == 1) ? R32 : U32);
        Scalar x = rnd_scalar(F, g);
        CHECK(Scalar::parse(F, x.str()) == x);
    }
    Scalar z = Scalar::zero(Q5);
    CHECK(Scalar::parse(Q5, z.str()) == z);
    Scalar zp = Scalar::one(Q5) - Scalar::one(Q5);
    CHECK(Scalar::parse(Q5, zp.str()) == zp);
}

TEST_CASE("field mismatch rejected") {
    CHECK_THROWS_AS(Scalar::one(Q5) + Scalar::one(Q2), FieldMismatch);
}
