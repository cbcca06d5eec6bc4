#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicr/supnorm.hpp"

using namespace padicr;

namespace {
auto Q5 = Field::make(FieldDescriptor{5, 1, 1}, 16);
auto U32 = Field::make(FieldDescriptor{3, 2, 1}, 16);
}  // namespace

TEST_CASE("max_scan: serial and parallel agree, including tie-breaks") {
    std::mt19937_64 g(53);
    for (int t = 0; t < 25; ++t) {
        size_t n = 1 + (size_t)(g() % 3000);
        std::vector<long long> vals(n);
        for (auto& v : vals) v = (long long)(g() % 17) - 8;
        auto fn = [&](size_t i) -> std::optional<Rational> {
            if (vals[i] == -8) return std::nullopt;
            return Rational(vals[i]);
        };
        ScanBest a = max_scan_serial(n, fn);
        ScanBest b = max_scan_parallel(n, fn);
        CHECK(a.has == b.has);
        if (a.has) {
            CHECK(a.pexp == b.pexp);
            CHECK(a.index == b.index);
        }
    }
}

TEST_CASE("max_scan: early stop at a certified bound") {
    auto fn = [&](size_t i) -> std::optional<Rational> { return Rational((long long)(i % 5)); };
    ScanBest a = max_scan_serial(1000, fn, Rational(0));
    CHECK(a.has);
    CHECK(a.pexp == Rational(0));
    CHECK(a.index == 0);
    ScanBest b = max_scan_parallel(1000, fn, Rational(0));
    CHECK(b.pexp == Rational(0));
    CHECK(b.index == 0);
}

TEST_CASE("max_scan propagates exceptions") {
    auto fn = [&](size_t i) -> std::optional<Rational> {
        if (i == 531) throw PrecisionExhausted("boom");
        return Rational(1);
    };
    CHECK_THROWS_AS(max_scan_serial(1000, fn), PrecisionExhausted);
    CHECK_THROWS_AS(max_scan_parallel(1000, fn), PrecisionExhausted);
}

TEST_CASE("sup_abs: linear and quadratic examples, tight") {
    LocPolyFun fz = LocPolyFun::monomial(Q5, MultiIndex({1}), Scalar::one(Q5));
    CosetRep whole;
    SupInterval s = sup_abs(fz, whole, 2);
    CHECK(s.tight());
    CHECK(s.lower.pexp == Rational(0));

    LocPolyFun fz2 = LocPolyFun::monomial(Q5, MultiIndex({2}), Scalar::one(Q5));
    CosetRep shell;
    shell.digits = {0, 0, 0};  // pi^3 O_F
    SupInterval s2 = sup_abs(fz2, shell, 5);
    CHECK(s2.tight());
    CHECK(s2.lower.pexp == Rational(6));
}

TEST_CASE("sup_abs: multi-embedding coefficient bound attained by enumeration") {
    // z^{(1,1)} on the unramified quadratic: Gauss bound 1, attained at a unit
    LocPolyFun f = LocPolyFun::monomial(U32, MultiIndex({1, 1}), Scalar::one(U32));
    CosetRep whole;
    SupInterval s = sup_abs(f, whole, 2);
    CHECK(s.tight());
    CHECK(s.lower.pexp == Rational(0));
    // cancellation case: sigma_1(z) - sigma_2(z) vanishes on Z_p but not on O_F
    LocPolyFun g(U32, 0);
    g.set_coeff(CosetRep{}, MultiIndex({1, 0}), Scalar::one(U32));
    g.set_coeff(CosetRep{}, MultiIndex({0, 1}), Scalar::from_int(U32, -1));
    SupInterval s2 = sup_abs(g, whole, 2);
    CHECK(s2.tight());
    CHECK(s2.lower.pexp == Rational(0));
    // on Z_p (digit strings with F_p digits) the difference is below 1; check a point
    CHECK(eval(g, Scalar::from_int(U32, 2)).is_zero_like());
}

TEST_CASE("sup_abs of the zero function is [0,0]") {
    LocPolyFun z(Q5, 1);
    CosetRep whole;
    SupInterval s = sup_abs(z, whole, 2);
    CHECK(s.lower.is_zero());
    CHECK(s.upper.is_zero());
    CHECK(s.tight());
}

TEST_CASE("sup_abs rejects depth below the region level") {
    LocPolyFun fz = LocPolyFun::monomial(Q5, MultiIndex({1}), Scalar::one(Q5));
    CosetRep region;
    region.digits = {0, 0};
    CHECK_THROWS_AS(sup_abs(fz, region, 1), InvalidParameters);
}

TEST_CASE("region finer than the table level recenters correctly") {
    // f(z) = z on Q_5, region 1 + pi^2 O_F: |f| = 1 on the whole region
    LocPolyFun fz = LocPolyFun::monomial(Q5, MultiIndex({1}), Scalar::one(Q5));
    CosetRep region;
    region.digits = {1, 0};
    SupInterval s = sup_abs(fz, region, 4);
    CHECK(s.tight());
    CHECK(s.lower.pexp == Rational(0));
    // f(z) = z - 1 on the same region: sup is q^{-2}... the offset starts at level 2
    LocPolyFun fm(Q5, 0);
    fm.set_coeff(CosetRep{}, MultiIndex({1}), Scalar::one(Q5));
    fm.set_coeff(CosetRep{}, MultiIndex({0}), Scalar::from_int(Q5, -1));
    SupInterval s2 = sup_abs(fm, region, 4);
    CHECK(s2.tight());
    CHECK(s2.lower.pexp == Rational(2));
}
