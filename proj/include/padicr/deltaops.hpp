#pragma once

#include "padicr/supnorm.hpp"

namespace padicr {

// Global polynomial P(z) = sum_m a_m z^m on O_F (a level-0 table).
struct GlobalPoly {
    std::shared_ptr<const Field> field;
    std::map<MultiIndex, Scalar> coeffs;

    static GlobalPoly zero(const std::shared_ptr<const Field>& F) { return GlobalPoly{F, {}}; }
    void set(const MultiIndex& m, Scalar c) {
        if (c.is_exact_zero())
            coeffs.erase(m);
        else
            coeffs[m] = std::move(c);
    }
    Scalar coeff(const MultiIndex& m) const {
        auto it = coeffs.find(m);
        return it == coeffs.end() ? Scalar::zero(field) : it->second;
    }
    int max_total_degree() const {
        int n = 0;
        for (const auto& [m, c] : coeffs) n = std::max(n, m.total());
        return n;
    }
    LocPolyFun as_locpoly() const {
        LocPolyFun f(field, 0);
        for (const auto& [m, c] : coeffs) f.set_coeff(CosetRep{}, m, c);
        return f;
    }
};

Scalar gp_eval(const GlobalPoly& P, const Scalar& z);
GlobalPoly gp_add(const GlobalPoly& P, const GlobalPoly& Q);
GlobalPoly gp_scale(const Scalar& c, const GlobalPoly& P);

// divided-power assembly: sum a_i z^i / i!
GlobalPoly divided_power_poly(const std::shared_ptr<const Field>& F,
                              const std::map<MultiIndex, Scalar>& a);

// Delta_{tau,h} P (z) = [tau-coordinate shifted by pi^h] - P, on coefficients
GlobalPoly delta_tau(const GlobalPoly& P, const Embedding& tau, int h);
// iterated in the canonical embedding order; order-independent
GlobalPoly delta_multi(const GlobalPoly& P, const MultiIndex& m, int h);

// top divided-power coefficient: a_m = pi^{-mh} Delta_{m,h}P(z), any z, h.
// P must be given as sum a_i z^i / i! with |m| = max total degree.
Scalar recover_leading(const GlobalPoly& P, const MultiIndex& m, int h, const Scalar& z);

// peeling: all divided-power coefficients, top degree first
std::map<MultiIndex, Scalar> recover_all(const GlobalPoly& P, int h);

struct ProbeRow {
    int h = 0;
    SupInterval sup_small;        // sup over pi^h O_F of |P|
    SupInterval sup_global;       // sup over O_F of |P|
    Rational lemmatec_lhs_pexp;   // sup_i |a_i| q^{-h|i|} (divided-power coeffs)
    bool lemmatec_lhs_zero = true;
    Rational corollary_ratio_pexp;  // sup_small / (q^{-h N2} sup_global)
    Rational ultratec_ratio_pexp;   // (|a_top| q^{-hN}) / sup_small
    bool decided = true;
};

struct ProbeReport {
    int N1 = 0;  // max total degree
    int N2 = 0;  // min total degree present
    std::vector<ProbeRow> rows;
    // empirical constants: max over h of each ratio (as p-exponents)
    Rational corollary_C_pexp;  // lemmacorollariotec
    Rational ultratec_C_pexp;   // ultratec1
    Rational lemmatec_C_pexp;   // lemmatec
    bool any_violation = false;
};

// probes run on P = sum a_i z^i / i! given by its divided-power coefficients
ProbeReport inequality_probe(const std::shared_ptr<const Field>& F,
                             const std::map<MultiIndex, Scalar>& divided_coeffs, int h_min,
                             int h_max, int depth, ExecPolicy pol = default_policy());

}  // namespace padicr
