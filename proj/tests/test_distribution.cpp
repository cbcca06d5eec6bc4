#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicr/counterexample.hpp"
#include "padicr/distribution.hpp"
#include "padicr/wavelet.hpp"

using namespace padicr;

namespace {
auto Q3 = Field::make(FieldDescriptor{3, 1, 1}, 24);
auto Q5 = Field::make(FieldDescriptor{5, 1, 1}, 24);

LocPolyFun rnd_fun(const std::shared_ptr<const Field>& F, std::mt19937_64& g, int level,
                   int maxdeg) {
    LocPolyFun f(F, level);
    auto idxs = index_set(Rel::LE, maxdeg, F->d());
    uint64_t reps = 1;
    for (int t = 0; t < level; ++t) reps *= (uint64_t)F->q();
    for (int t = 0, n = 1 + (int)(g() % 4); t < n; ++t) {
        long long v = (long long)(g() % 25) - 12;
        if (!v) v = 2;
        f.set_coeff(F->unpack_rep(g() % reps, level), idxs[g() % idxs.size()],
                    Scalar::from_int(F, v));
    }
    return f;
}

// corrupted wrapper: one moment entry overridden
class FaultOracle : public MomentOracle {
  public:
    FaultOracle(const MomentOracle& base, CosetRep where, MultiIndex which)
        : base_(base), where_(std::move(where)), which_(std::move(which)) {}
    Scalar moment(const CosetRep& a, const MultiIndex& i) const override {
        if (a == where_ && i == which_)
            return base_.moment(a, i) + Scalar::one(base_.field());
        return base_.moment(a, i);
    }
    const std::shared_ptr<const Field>& field() const override { return base_.field(); }
    int max_degree() const override { return base_.max_degree(); }
    std::string name() const override { return "fault"; }

  private:
    const MomentOracle& base_;
    CosetRep where_;
    MultiIndex which_;
};
}  // namespace

TEST_CASE("dirac: moments, additivity, pairing") {
    CosetRep origin;
    DiracOracle d0(Q3, origin, 6);
    CHECK(validate_additivity(d0, 4).ok);
    // pair(delta_0, f) = f(0)
    std::mt19937_64 g(89);
    for (int t = 0; t < 20; ++t) {
        LocPolyFun f = rnd_fun(Q3, g, (int)(g() % 3), 3);
        CHECK(eq_to_prec(pair(d0, f), eval(f, Scalar::zero(Q3))));
    }
    // monomials vanish at 0
    LocPolyFun zm = LocPolyFun::monomial(Q3, MultiIndex({2}), Scalar::one(Q3));
    CHECK(pair(d0, zm).is_zero_like());
    // off-origin point
    CosetRep pt;
    pt.digits = {2, 1};
    DiracOracle dp(Q3, pt, 6);
    CHECK(validate_additivity(dp, 3).ok);
    for (int t = 0; t < 10; ++t) {
        LocPolyFun f = rnd_fun(Q3, g, (int)(g() % 2), 3);
        CHECK(eq_to_prec(pair(dp, f), eval(f, Scalar::from_rep(Q3, pt))));
    }
}

TEST_CASE("haar: total mass, first moment, additivity") {
    HaarOracle haar(Q5, 16, 6);
    CosetRep whole;
    CHECK(eq_to_prec(haar.moment(whole, MultiIndex({0})), Scalar::one(Q5)));
    // independent oracle: integer Riemann sums p^{-m} sum_{a < p^m} a = (p^m - 1)/2
    long long pm = 1;
    for (int i = 0; i < 10; ++i) pm *= 5;
    Scalar riemann = Scalar::from_int(Q5, (pm - 1) / 2);
    Scalar m1 = haar.base_moment(MultiIndex({1}));
    Scalar diff = m1 - riemann;
    CHECK((diff.is_zero_like() || diff.pi_val() >= 9));
    // and the closed form -1/2
    Scalar mhalf = Scalar::from_int(Q5, -1) / Scalar::from_int(Q5, 2);
    Scalar d2 = m1 - mhalf;
    CHECK((d2.is_zero_like() || d2.pi_val() >= 10));
    CHECK(validate_additivity(haar, 3).ok);
    // pair(haar, 1_{Z_p}) = 1
    CHECK(eq_to_prec(pair(haar, LocPolyFun::constant(Q5, Scalar::one(Q5))), Scalar::one(Q5)));
}

TEST_CASE("fault injection is caught with a witness") {
    HaarOracle haar(Q3, 14, 4);
    CosetRep bad;
    bad.digits = {1};
    FaultOracle fault(haar, bad, MultiIndex({1}));
    AdditivityReport rep = validate_additivity(fault, 3);
    CHECK(!rep.ok);
    CHECK(!rep.violation.empty());
}

TEST_CASE("avv: dirac passes with C = 1 for several r") {
    CosetRep origin;
    DiracOracle d0(Q5, origin, 4);
    for (const auto& r : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
        AvvReport rep = avv_check(d0, r, std::max(1, (int)r.floor()), 5);
        CHECK(rep.pass);
        CHECK(rep.C_estimate.pexp == Rational(0));
        CHECK(rep.argmax_n == 0);
    }
}

TEST_CASE("avv: haar passes at r = 1 and fails at r = 1/2") {
    HaarOracle haar(Q3, 16, 4);
    AvvReport ok = avv_check(haar, Rational(1), 1, 5);
    CHECK(ok.pass);
    CHECK(ok.C_estimate.pexp == Rational(0));
    CHECK(ok.non_increasing);

    AvvReport bad = avv_check(haar, Rational(1, 2), 1, 5);
    CHECK(!bad.pass);
    CHECK(bad.argmax_n == 5);
    CHECK(bad.C_estimate.pexp == Rational(-5, 2));  // q^{n/2} at n = depth
}

TEST_CASE("extend_pair: unit vectors and agreement with pair") {
    std::mt19937_64 g(97);
    HaarOracle haar(Q3, 16, 6);
    CosetRep origin;
    DiracOracle d0(Q3, origin, 6);
    Rational r(2);
    // unit coordinate vector at (a, i)
    CosetRep a;
    a.digits = {2};
    MultiIndex i({1});
    WaveletCoeffs c;
    c.r = r;
    c.field = Q3;
    c.set(a, i, Scalar::one(Q3));
    long long sc = (r * Rational(a.l_of())).floor();
    Scalar expect = Scalar::pi_pow(Q3, sc) * haar.moment(a, i);
    CHECK(eq_to_prec(extend_pair(haar, c, r), expect));
    // dirac against analyze(z^{[r]}) vanishes at 0
    LocPolyFun zr = LocPolyFun::monomial(Q3, MultiIndex({2}), Scalar::one(Q3));
    CHECK(extend_pair(d0, analyze(zr, r), r).is_zero_like());
    // agreement with pair on random degree <= [r] functions
    for (int t = 0; t < 30; ++t) {
        LocPolyFun f = rnd_fun(Q3, g, (int)(g() % 3), 2);
        CHECK(eq_to_prec(extend_pair(haar, analyze(f, r), r), pair(haar, f)));
        CHECK(eq_to_prec(extend_pair(d0, analyze(f, r), r), pair(d0, f)));
    }
}

TEST_CASE("pairing is linear and refine-invariant for additive oracles") {
    std::mt19937_64 g(101);
    HaarOracle haar(Q5, 16, 6);
    for (int t = 0; t < 15; ++t) {
        LocPolyFun f = rnd_fun(Q5, g, (int)(g() % 2), 3);
        LocPolyFun h = rnd_fun(Q5, g, (int)(g() % 3), 3);
        CHECK(eq_to_prec(pair(haar, lp_add(f, h)), pair(haar, f) + pair(haar, h)));
        CHECK(eq_to_prec(pair(haar, refine(f)), pair(haar, f)));
    }
}

TEST_CASE("dual norm: dirac is 1; unit scaling leaves it unchanged") {
    CosetRep origin;
    DiracOracle d0(Q5, origin, 4);
    DualNormEstimate est = dual_norm(d0, Rational(1), 2, 5);
    CHECK(est.pass);
    CHECK(est.lower.pexp == Rational(0));

    // 2 * mu has the same dual norm (|2| = 1 for p = 5)
    class Scaled : public MomentOracle {
      public:
        Scaled(const MomentOracle& base, Scalar s) : base_(base), s_(std::move(s)) {}
        Scalar moment(const CosetRep& a, const MultiIndex& i) const override {
            return s_ * base_.moment(a, i);
        }
        const std::shared_ptr<const Field>& field() const override { return base_.field(); }
        int max_degree() const override { return base_.max_degree(); }
        std::string name() const override { return "scaled"; }

      private:
        const MomentOracle& base_;
        Scalar s_;
    };
    Scaled two(d0, Scalar::from_int(Q5, 2));
    DualNormEstimate est2 = dual_norm(two, Rational(1), 2, 5);
    CHECK(value_eq(est2.lower, est.lower));
    // and |5 mu| scales by |5| = q^{-1}
    Scaled five(d0, Scalar::from_int(Q5, 5));
    DualNormEstimate est5 = dual_norm(five, Rational(1), 2, 5);
    CHECK(est5.lower.pexp == est.lower.pexp + Rational(1));
}

TEST_CASE("counterexample: seed, recursion values, additivity") {
    CounterexampleOracle mu(3, 2, {Rational(3, 2), Rational(1, 2)}, 0, {1, 1}, 32);
    CHECK(mu.exact_exponents());
    MultiIndex j0({0, 0});
    // seed value 1 at level 0
    CHECK(eq_to_prec(mu.raw_moment({0, 0}, 0, j0), Scalar::one(mu.scalar_field())));
    // level 1: continuing child p^{-r}, sibling 1 - p^{-r}, others 0
    Scalar v1 = mu.raw_moment({0, 0}, 1, j0);
    CHECK(mu.report_pexp(v1) == Rational(-4));  // |p^{-2}| = p^{4} in val(p)=d=2 units
    Scalar s1 = mu.raw_moment({1, 1}, 1, j0);
    CHECK(eq_to_prec(s1 + v1, Scalar::one(mu.scalar_field())));
    CHECK(mu.raw_moment({2, 0}, 1, j0).is_exact_zero());
    CHECK(validate_additivity(mu, 4, 2).ok);
    // |mu(1_{p^n Z^d})| = q^{e n r} = p^{d n r}
    for (int n = 1; n <= 4; ++n)
        CHECK(mu.report_pexp(mu.raw_moment({0, 0}, n, j0)) == Rational(-4LL * n));
}

TEST_CASE("counterexample: uniform bounded, tensor unbounded") {
    CounterexampleOracle mu(3, 2, {Rational(3, 2), Rational(1, 2)}, 0, {1, 1}, 32);
    auto uni = uniform_check(mu, 2, 5);
    CHECK(uni.pass);
    auto ten = tensor_check(mu, 2, 5);
    CHECK(!ten.pass);
    // X_n ratio pexp = -d n r_k with r_k = 3/2, d = 2
    for (int n = 1; n <= 5; ++n) {
        CHECK(ten.xn_ratio_nonzero[(size_t)n - 1]);
        CHECK(ten.xn_ratio_pexp[(size_t)n - 1] == Rational(-3LL * n));
    }
}

TEST_CASE("counterexample parameter validation") {
    using RV = std::vector<Rational>;
    CHECK_THROWS_AS(CounterexampleOracle(3, 2, RV{Rational(2), Rational(0)}, 0, {1, 1}, 16),
                    InvalidParameters);  // r_k = r
    CHECK_THROWS_AS(CounterexampleOracle(3, 2, RV{Rational(3, 2), Rational(1, 2)}, 0, {1, 0}, 16),
                    InvalidParameters);  // alpha in X_1 for k = 0
}
