#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicr/deltaops.hpp"

using namespace padicr;

namespace {
auto Q5 = Field::make(FieldDescriptor{5, 1, 1}, 16);
auto U32 = Field::make(FieldDescriptor{3, 2, 1}, 16);
auto R32 = Field::make(FieldDescriptor{3, 1, 2}, 16);

GlobalPoly rnd_poly(const std::shared_ptr<const Field>& F, std::mt19937_64& g, int maxdeg) {
    GlobalPoly P = GlobalPoly::zero(F);
    auto idxs = index_set(Rel::LE, maxdeg, F->d());
    for (int t = 0, n = 2 + (int)(g() % 4); t < n; ++t) {
        long long v = (long long)(g() % 39) - 19;
        if (!v) v = 7;
        P.set(idxs[g() % idxs.size()], Scalar::from_int(F, v));
    }
    return P;
}

Scalar rnd_point(const std::shared_ptr<const Field>& F, std::mt19937_64& g) {
    return Scalar::from_int(F, (long long)(g() % 60) + 1);
}

// definition oracle: Delta_{tau,h}P(z) = [tau-shifted P](z) - P(z), evaluated
// directly from the coefficients without the symbolic operator
Scalar delta_eval_oracle(const GlobalPoly& P, const Embedding& tau, int h, const Scalar& z) {
    const auto& F = P.field;
    auto embs = F->embeddings();
    Scalar acc = Scalar::zero(F);
    Scalar shift = Scalar::pi_pow(F, h);
    for (const auto& [m, c] : P.coeffs) {
        Scalar term = c;
        for (size_t s = 0; s < embs.size(); ++s) {
            Scalar sz = z.apply_embedding(embs[s]);
            if (embs[s] == tau) sz = sz + shift.apply_embedding(tau);
            term = term * sz.pow((unsigned)m.v[s]);
        }
        acc = acc + term;
    }
    return acc - gp_eval(P, z);
}
}  // namespace

TEST_CASE("delta_tau on Q_p: first and second differences") {
    Embedding id;
    GlobalPoly z = GlobalPoly::zero(Q5);
    z.set(MultiIndex({1}), Scalar::one(Q5));
    for (int h : {0, 1, 2}) {
        GlobalPoly d = delta_tau(z, id, h);
        REQUIRE(d.coeffs.size() == 1);
        CHECK(eq_to_prec(d.coeff(MultiIndex({0})), Scalar::pi_pow(Q5, h)));
    }
    // z^2 -> 2 z p^h + p^{2h}, via the evaluation oracle
    GlobalPoly z2 = GlobalPoly::zero(Q5);
    z2.set(MultiIndex({2}), Scalar::one(Q5));
    std::mt19937_64 g(103);
    for (int h : {1, 2}) {
        GlobalPoly d = delta_tau(z2, id, h);
        CHECK(eq_to_prec(d.coeff(MultiIndex({1})),
                         Scalar::from_int(Q5, 2) * Scalar::pi_pow(Q5, h)));
        CHECK(eq_to_prec(d.coeff(MultiIndex({0})), Scalar::pi_pow(Q5, 2 * h)));
        for (int t = 0; t < 5; ++t) {
            Scalar pt = rnd_point(Q5, g);
            CHECK(eq_to_prec(gp_eval(d, pt), delta_eval_oracle(z2, id, h, pt)));
        }
    }
}

TEST_CASE("delta operators: evaluation oracle, commutativity, linearity") {
    std::mt19937_64 g(107);
    for (int t = 0; t < 15; ++t) {
        const auto& F = (t % 2) ? U32 : R32;
        auto embs = F->embeddings();
        GlobalPoly P = rnd_poly(F, g, 3);
        GlobalPoly Q = rnd_poly(F, g, 3);
        int h = 1 + (int)(g() % 2);
        const Embedding& s0 = embs[0];
        const Embedding& s1 = embs[1];
        // symbolic output equals the definition pointwise
        for (int s = 0; s < 3; ++s) {
            Scalar pt = rnd_point(F, g);
            CHECK(eq_to_prec(gp_eval(delta_tau(P, s1, h), pt),
                             delta_eval_oracle(P, s1, h, pt)));
        }
        // commutativity
        GlobalPoly ab = delta_tau(delta_tau(P, s0, h), s1, h);
        GlobalPoly ba = delta_tau(delta_tau(P, s1, h), s0, h);
        for (const auto& [m, c] : ab.coeffs) CHECK(eq_to_prec(c, ba.coeff(m)));
        for (const auto& [m, c] : ba.coeffs) CHECK(eq_to_prec(c, ab.coeff(m)));
        // linearity
        Scalar lam = Scalar::from_int(F, 4), mu = Scalar::from_int(F, -7);
        GlobalPoly lin = delta_tau(gp_add(gp_scale(lam, P), gp_scale(mu, Q)), s1, h);
        GlobalPoly rhs = gp_add(gp_scale(lam, delta_tau(P, s1, h)),
                                gp_scale(mu, delta_tau(Q, s1, h)));
        for (const auto& [m, c] : lin.coeffs) CHECK(eq_to_prec(c, rhs.coeff(m)));
    }
}

TEST_CASE("delta_multi: empty composition, degree kill, diagonal value") {
    std::mt19937_64 g(109);
    GlobalPoly P = rnd_poly(U32, g, 2);
    CHECK(eq_to_prec(gp_eval(delta_multi(P, MultiIndex({0, 0}), 1), Scalar::one(U32)),
                     gp_eval(P, Scalar::one(U32))));
    GlobalPoly dead = delta_multi(P, MultiIndex({3, 3}), 1);
    for (const auto& [m, c] : dead.coeffs) CHECK(c.is_zero_like());
    // diagonal: Delta_{m,h}(z^m/m!) = (pi^h)^m exactly, so the recovery divides out
    GlobalPoly top = GlobalPoly::zero(U32);
    MultiIndex m({1, 1});
    top.set(m, Scalar::one(U32));  // z^{(1,1)} / (1,1)! = z^{(1,1)}
    GlobalPoly dm = delta_multi(top, m, 2);
    CHECK(eq_to_prec(dm.coeff(MultiIndex({0, 0})), pi_monomial(U32, 2, m)));
}

TEST_CASE("recover_leading: examples and invariance in (h, z)") {
    // P = z^2 = 2 * z^2/2!: divided-power coefficient a_2 = 2
    std::map<MultiIndex, Scalar> a;
    a[MultiIndex({2})] = Scalar::from_int(Q5, 2);
    GlobalPoly P = divided_power_poly(Q5, a);
    std::mt19937_64 g(113);
    for (int h : {1, 2, 3}) {
        Scalar rec = recover_leading(P, MultiIndex({2}), h, rnd_point(Q5, g));
        CHECK(eq_to_prec(rec, Scalar::from_int(Q5, 2)));
    }
    // single top term over the unramified quadratic
    std::map<MultiIndex, Scalar> b;
    b[MultiIndex({1, 1})] = Scalar::one(U32);
    GlobalPoly PU = divided_power_poly(U32, b);
    for (int zi = 0; zi < 5; ++zi)
        CHECK(eq_to_prec(recover_leading(PU, MultiIndex({1, 1}), 1, rnd_point(U32, g)),
                         Scalar::one(U32)));
    CHECK_THROWS_AS(recover_leading(PU, MultiIndex({1, 0}), 1, Scalar::one(U32)), NotTopDegree);
}

TEST_CASE("property: recovery returns every stored top coefficient") {
    std::mt19937_64 g(127);
    for (int t = 0; t < 40; ++t) {
        const auto& F = (t % 3 == 0) ? Q5 : ((t % 3 == 1) ? U32 : R32);
        std::map<MultiIndex, Scalar> a;
        auto idxs = index_set(Rel::LE, 4, F->d());
        for (int s = 0, n = 2 + (int)(g() % 4); s < n; ++s) {
            long long v = (long long)(g() % 25) - 12;
            if (!v) v = 3;
            a[idxs[g() % idxs.size()]] = Scalar::from_int(F, v);
        }
        GlobalPoly P = divided_power_poly(F, a);
        if (P.coeffs.empty()) continue;
        int N = P.max_total_degree();
        int h = 1 + (int)(g() % 3);
        for (const auto& [m, c] : a) {
            if (m.total() != N || P.coeff(m).is_exact_zero()) continue;
            CHECK(eq_to_prec(recover_leading(P, m, h, rnd_point(F, g)), c));
        }
        // peeling recovers the whole divided-power table
        auto rec = recover_all(P, h);
        for (const auto& [m, c] : a)
            if (!P.coeff(m).is_exact_zero()) CHECK(eq_to_prec(rec.at(m), c));
    }
}

TEST_CASE("inequality probe: P = z gives ratio exactly 1 at every h") {
    std::map<MultiIndex, Scalar> a;
    a[MultiIndex({1})] = Scalar::one(Q5);
    ProbeReport rep = inequality_probe(Q5, a, 1, 5, 3);
    CHECK(rep.N1 == 1);
    CHECK(rep.N2 == 1);
    CHECK(!rep.any_violation);
    for (const auto& row : rep.rows) {
        CHECK(row.corollary_ratio_pexp == Rational(0));
        CHECK(row.ultratec_ratio_pexp == Rational(0));
    }
}

TEST_CASE("inequality probe: constants stabilize on mixed-degree inputs") {
    // P = 1 + z^N exercises the N2 = 0 branch
    std::map<MultiIndex, Scalar> a;
    a[MultiIndex({0})] = Scalar::one(Q5);
    a[MultiIndex({3})] = Scalar::one(Q5);
    ProbeReport rep = inequality_probe(Q5, a, 1, 4, 3);
    CHECK(rep.N2 == 0);
    CHECK(!rep.any_violation);
    // sup over pi^h O_F is 1 (the constant term dominates): corollary ratio 1
    for (const auto& row : rep.rows) CHECK(row.corollary_ratio_pexp == Rational(0));
    // two-embedding probe
    std::mt19937_64 g(131);
    std::map<MultiIndex, Scalar> b;
    b[MultiIndex({1, 0})] = Scalar::one(U32);
    b[MultiIndex({0, 1})] = Scalar::one(U32);
    ProbeReport rep2 = inequality_probe(U32, b, 1, 3, 3);
    CHECK(!rep2.any_violation);
}
