#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicr/serialization.hpp"

using namespace padicr;

namespace {
auto Q3 = Field::make(FieldDescriptor{3, 1, 1}, 16);
auto U32 = Field::make(FieldDescriptor{3, 2, 1}, 16);
}  // namespace

TEST_CASE("field and rep json round trips") {
    FieldDescriptor fd{3, 2, 1};
    CHECK(field_from_json(field_to_json(fd)) == fd);
    CosetRep a;
    a.digits = {2, 0, 7};
    CHECK(rep_from_json(rep_to_json(a)) == a);
    CHECK(rational_from_json(rational_to_json(Rational(-5, 3))) == Rational(-5, 3));
}

TEST_CASE("locpoly json round trip") {
    std::mt19937_64 g(137);
    for (int t = 0; t < 10; ++t) {
        const auto& F = (t % 2) ? Q3 : U32;
        LocPolyFun f(F, 2);
        auto idxs = index_set(Rel::LE, 2, F->d());
        for (int s = 0; s < 4; ++s) {
            CosetRep a = F->unpack_rep(g() % (uint64_t)(F->q() * F->q()), 2);
            long long v = (long long)(g() % 19) - 9;
            if (!v) v = 4;
            f.set_coeff(a, idxs[g() % idxs.size()], Scalar::from_int(F, v));
        }
        json j = locpoly_to_json(f);
        LocPolyFun back = locpoly_from_json(F, j);
        CHECK(back.level() == f.level());
        CHECK(eq_to_prec(back, f));
        // byte-identical reserialization
        CHECK(locpoly_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("wavelet json round trip") {
    WaveletCoeffs c;
    c.r = Rational(3, 2);
    c.field = U32;
    CosetRep a;
    a.digits = {1, 2};
    c.set(a, MultiIndex({1, 0}), Scalar::from_int(U32, 7));
    c.set(CosetRep{}, MultiIndex({0, 0}), Scalar::from_int(U32, -2));
    json j = wavelet_to_json(c);
    WaveletCoeffs back = wavelet_from_json(U32, j);
    CHECK(eq_to_prec(back, c));
    CHECK(wavelet_to_json(back).dump() == j.dump());
}

TEST_CASE("moment table oracle from json") {
    json rows = json::array();
    CosetRep a;
    a.digits = {1};
    rows.push_back(json{{"a", rep_to_json(a)},
                        {"n", 1},
                        {"i", json::array({1})},
                        {"val", Scalar::from_int(Q3, 5).str()}});
    auto oracle = table_oracle_from_json(Q3, rows, 4);
    CHECK(eq_to_prec(oracle->moment(a, MultiIndex({1})), Scalar::from_int(Q3, 5)));
    CHECK(oracle->moment(CosetRep{}, MultiIndex({0})).is_exact_zero());
    // inconsistent level is rejected
    json bad = rows;
    bad[0]["n"] = 2;
    CHECK_THROWS_AS(table_oracle_from_json(Q3, bad, 4), ParseError);
}

TEST_CASE("interval and report json contain exact exponents") {
    LocPolyFun f = LocPolyFun::monomial(Q3, MultiIndex({1}), Scalar::one(Q3));
    CrNormReport rep = cr_norm(f, Rational(1, 2), 3, 2);
    json j = crnorm_to_json(rep, *Q3);
    CHECK(j["value"]["tight"].get<bool>());
    CHECK(j["value"]["lower"]["qexp"]["num"].get<long long>() == 0);
    CHECK(j["profile"].size() == 3);
}
