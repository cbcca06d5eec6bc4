#include "padicr/deltaops.hpp"

#include <algorithm>

namespace padicr {

Scalar gp_eval(const GlobalPoly& P, const Scalar& z) {
    Scalar acc = Scalar::zero(P.field);
    for (const auto& [m, c] : P.coeffs) acc = acc + c * monomial_eval(z, m);
    return acc;
}

GlobalPoly gp_add(const GlobalPoly& P, const GlobalPoly& Q) {
    GlobalPoly out = P;
    for (const auto& [m, c] : Q.coeffs) out.set(m, out.coeff(m) + c);
    return out;
}

GlobalPoly gp_scale(const Scalar& c, const GlobalPoly& P) {
    GlobalPoly out = GlobalPoly::zero(P.field);
    for (const auto& [m, v] : P.coeffs) out.set(m, c * v);
    return out;
}

GlobalPoly divided_power_poly(const std::shared_ptr<const Field>& F,
                              const std::map<MultiIndex, Scalar>& a) {
    GlobalPoly out = GlobalPoly::zero(F);
    for (const auto& [i, c] : a) out.set(i, c / F->int_scalar(mi_factorial(i)));
    return out;
}

GlobalPoly delta_tau(const GlobalPoly& P, const Embedding& tau, int h) {
    if (h < 0) throw InvalidParameters("delta_tau: h < 0");
    const auto& F = P.field;
    int s = tau.frob_power * F->e() + tau.root_twist;  // canonical position of tau
    GlobalPoly out = GlobalPoly::zero(F);
    for (const auto& [m, c] : P.coeffs) {
        int mt = m.v[(size_t)s];
        // tau(z + pi^h)^{mt} - tau(z)^{mt} expanded binomially
        for (int n = 1; n <= mt; ++n) {
            MultiIndex shift = MultiIndex::unit(F->d(), s, n);
            long long binom = 1;
            for (int t = 1; t <= n; ++t) binom = binom * (mt - t + 1) / t;
            Scalar term = c * F->int_scalar(binom) * pi_monomial(F, h, shift);
            out.set(m - shift, out.coeff(m - shift) + term);
        }
    }
    return out;
}

GlobalPoly delta_multi(const GlobalPoly& P, const MultiIndex& m, int h) {
    const auto& F = P.field;
    auto embs = F->embeddings();
    GlobalPoly cur = P;
    for (size_t s = 0; s < embs.size(); ++s)
        for (int t = 0; t < m.v[s]; ++t) cur = delta_tau(cur, embs[s], h);
    return cur;
}

Scalar recover_leading(const GlobalPoly& P, const MultiIndex& m, int h, const Scalar& z) {
    const int N = P.max_total_degree();
    if (m.total() != N)
        throw NotTopDegree("recover_leading: |m| = " + std::to_string(m.total()) +
                           " but max degree is " + std::to_string(N));
    GlobalPoly D = delta_multi(P, m, h);
    Scalar val = gp_eval(D, z);
    return val / pi_monomial(P.field, h, m);
}

std::map<MultiIndex, Scalar> recover_all(const GlobalPoly& P, int h) {
    const auto& F = P.field;
    std::map<MultiIndex, Scalar> out;
    GlobalPoly cur = P;
    Scalar z = Scalar::from_int(F, 1);
    while (!cur.coeffs.empty()) {
        int N = cur.max_total_degree();
        std::vector<MultiIndex> tops;
        for (const auto& [m, c] : cur.coeffs)
            if (m.total() == N) tops.push_back(m);
        for (const auto& m : tops) {
            Scalar am = recover_leading(cur, m, h, z);
            if (!am.is_exact_zero()) out.emplace(m, am);
            cur.set(m, Scalar::zero(F));
        }
        // subtract the recovered layer contributions already removed by set();
        // remaining coefficients are untouched because Delta only consumed the
        // top layer symbolically
    }
    return out;
}

ProbeReport inequality_probe(const std::shared_ptr<const Field>& F,
                             const std::map<MultiIndex, Scalar>& divided_coeffs, int h_min,
                             int h_max, int depth, ExecPolicy pol) {
    if (h_min < 0 || h_max < h_min) throw InvalidParameters("inequality_probe: bad h range");
    GlobalPoly P = divided_power_poly(F, divided_coeffs);
    LocPolyFun lp = P.as_locpoly();

    ProbeReport rep;
    rep.N1 = 0;
    rep.N2 = 1 << 20;
    for (const auto& [m, c] : P.coeffs) {
        rep.N1 = std::max(rep.N1, m.total());
        rep.N2 = std::min(rep.N2, m.total());
    }
    if (P.coeffs.empty()) {
        rep.N2 = 0;
        return rep;
    }

    CosetRep whole;
    SupInterval sup_global;
    for (int d = depth; d <= depth + 4; ++d) {
        sup_global = sup_abs(lp, whole, d, pol);
        if (sup_global.tight()) break;
    }
    if (!sup_global.tight())
        throw DepthInsufficient("inequality_probe: global sup not tight at depth " +
                                std::to_string(depth));

    bool first = true;
    for (int h = h_min; h <= h_max; ++h) {
        ProbeRow row;
        row.h = h;
        CosetRep region;
        region.digits.assign((size_t)h, 0);
        for (int extra = std::max(1, depth - h_min); extra <= depth + 4; ++extra) {
            row.sup_small = sup_abs(lp, region, h + extra, pol);
            if (row.sup_small.tight()) break;
        }
        row.sup_global = sup_global;
        if (!row.sup_small.tight())
            throw DepthInsufficient("inequality_probe: sup over pi^h not tight, h = " +
                                    std::to_string(h));

        // lemmatec lhs: sup_i |a_i| q^{-h|i|} over the divided-power coefficients
        GaussAcc lhs;
        for (const auto& [i, c] : divided_coeffs) {
            AbsValue a = c.abs();
            if (!a.is_zero()) a.pexp = a.pexp + Rational((long long)F->f() * h * i.total());
            lhs.feed(a);
        }
        AbsValue lhs_av = lhs.settle("inequality_probe");
        row.lemmatec_lhs_zero = lhs_av.is_zero();
        if (!lhs_av.is_zero()) row.lemmatec_lhs_pexp = lhs_av.pexp;

        // lemmacorollariotec: sup_small >= C q^{-h N2} sup_global
        row.corollary_ratio_pexp = row.sup_small.lower.pexp -
                                   (Rational((long long)F->f() * h * rep.N2) +
                                    row.sup_global.lower.pexp);
        // ultratec1: |a_m| q^{-h N1} <= C sup_small for |m| = N1
        GaussAcc top;
        for (const auto& [i, c] : divided_coeffs)
            if (i.total() == rep.N1) top.feed(c.abs());
        AbsValue top_av = top.settle("inequality_probe");
        row.ultratec_ratio_pexp = (top_av.pexp + Rational((long long)F->f() * h * rep.N1)) -
                                  row.sup_small.lower.pexp;

        if (first) {
            rep.corollary_C_pexp = row.corollary_ratio_pexp;
            rep.ultratec_C_pexp = row.ultratec_ratio_pexp;
            rep.lemmatec_C_pexp = row.lemmatec_lhs_pexp - row.sup_small.lower.pexp;
            first = false;
        } else {
            // C for the >= inequality: the smallest observed ratio value
            if (rep.corollary_C_pexp < row.corollary_ratio_pexp)
                rep.corollary_C_pexp = row.corollary_ratio_pexp;
            // C for the <= inequalities: the largest observed ratio value
            if (row.ultratec_ratio_pexp < rep.ultratec_C_pexp)
                rep.ultratec_C_pexp = row.ultratec_ratio_pexp;
            Rational lr = row.lemmatec_lhs_pexp - row.sup_small.lower.pexp;
            if (lr < rep.lemmatec_C_pexp) rep.lemmatec_C_pexp = lr;
        }

        // certified-interval violation: sup over the smaller region must not
        // certifiably exceed the global sup
        if (value_less(row.sup_global.upper, row.sup_small.lower)) rep.any_violation = true;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace padicr
