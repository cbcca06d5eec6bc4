#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "padicr/multiindex.hpp"

using namespace padicr;

namespace {
auto Qp = Field::make(FieldDescriptor{7, 1, 1}, 12);
auto U32 = Field::make(FieldDescriptor{3, 2, 1}, 16);
auto R32 = Field::make(FieldDescriptor{3, 1, 2}, 16);
}  // namespace

TEST_CASE("embedding counts and identities") {
    CHECK(Qp->embeddings().size() == 1);
    CHECK(Qp->embeddings()[0].is_identity());
    CHECK(U32->embeddings().size() == 2);
    CHECK(R32->embeddings().size() == 2);
    auto R52 = Field::make(FieldDescriptor{5, 1, 2}, 8);  // 2 | 5-1
    CHECK(R52->embeddings().size() == 2);
    CHECK_THROWS_AS(Field::make(FieldDescriptor{5, 1, 3}, 8), UnsupportedField);
    CHECK_THROWS_AS(Field::make(FieldDescriptor{4, 1, 1}, 8), UnsupportedField);
}

TEST_CASE("ramified conjugation: pi -> -pi") {
    auto embs = R32->embeddings();
    Scalar pi = Scalar::pi_pow(R32, 1);
    Scalar spi = pi.apply_embedding(embs[1]);
    CHECK((spi + pi).is_zero_like());
    // sigma(a + b pi) = a - b pi pattern on a sample
    Scalar x = Scalar::from_int(R32, 1) + Scalar::from_int(R32, 2) * pi;
    Scalar sx = x.apply_embedding(embs[1]);
    Scalar expect = Scalar::from_int(R32, 1) - Scalar::from_int(R32, 2) * pi;
    CHECK(eq_to_prec(sx, expect));
}

TEST_CASE("frobenius is an involution and a ring morphism fixing Q_p") {
    auto embs = U32->embeddings();
    std::mt19937_64 g(11);
    for (int t = 0; t < 100; ++t) {
        uint16_t a = (uint16_t)(g() % U32->q()), b = (uint16_t)(g() % U32->q());
        Scalar x = Scalar::teichmuller(U32, a) +
                   Scalar::teichmuller(U32, b).shift_pi((long long)(g() % 3));
        Scalar y = Scalar::from_int(U32, (long long)(g() % 50) - 25 + 51);
        Scalar sx = x.apply_embedding(embs[1]);
        CHECK(eq_to_prec(sx.apply_embedding(embs[1]), x));
        CHECK(eq_to_prec((x + y).apply_embedding(embs[1]),
                         sx + y.apply_embedding(embs[1])));
        CHECK(eq_to_prec((x * y).apply_embedding(embs[1]),
                         sx * y.apply_embedding(embs[1])));
    }
    // Q_p is fixed
    Scalar c = Scalar::from_int(U32, 17);
    CHECK(eq_to_prec(c.apply_embedding(embs[1]), c));
}

TEST_CASE("residue systems: counts, nesting, incongruence") {
    CHECK(R32->residue_system(0).size() == 1);
    CHECK(R32->residue_system(1).size() == 3);
    auto Q2 = Field::make(FieldDescriptor{2, 1, 1}, 8);
    auto a2 = Q2->residue_system(2);
    REQUIRE(a2.size() == 4);
    // counting order 0,1,2,3 as digit strings (lsd first)
    CHECK(a2[0].digits == std::vector<uint16_t>{0, 0});
    CHECK(a2[1].digits == std::vector<uint16_t>{1, 0});
    CHECK(a2[2].digits == std::vector<uint16_t>{0, 1});
    CHECK(a2[3].digits == std::vector<uint16_t>{1, 1});
    // nesting: zero-padded A_1 members are the first block of A_2
    auto a1 = Q2->residue_system(1);
    for (size_t i = 0; i < a1.size(); ++i) CHECK(a1[i].padded(2) == a2[i]);
    // pairwise incongruent mod pi^2: all packed keys distinct
    std::set<uint64_t> keys;
    for (const auto& a : a2) keys.insert(Q2->pack_rep(a));
    CHECK(keys.size() == 4);
}

TEST_CASE("l_of") {
    CosetRep zero;
    zero.digits = {0, 0};
    CHECK(zero.l_of() == 0);
    CosetRep two;
    two.digits = {0, 1};  // value 2 in Q_2
    CHECK(two.l_of() == 2);
    CosetRep three;
    three.digits = {1, 1};
    CHECK(three.l_of() == 2);
    CosetRep one;
    one.digits = {1, 0};
    CHECK(one.l_of() == 1);
}

TEST_CASE("partition property: a in A_{l(a)} but not A_{l(a)-1}") {
    for (const auto& a : U32->residue_system(3)) {
        int l = a.l_of();
        // truncation to l reproduces the value; truncation below loses a digit
        CHECK(a.truncated(l).padded(3) == a);
        if (l > 0) CHECK(a.digits[(size_t)l - 1] != 0);
    }
}
