#include "padicr/distribution.hpp"

#include <algorithm>

namespace padicr {

Scalar DiracOracle::moment(const CosetRep& a, const MultiIndex& i) const {
    const int n = a.level();
    // digit strings are exact: membership and the offset are decidable
    for (int t = 0; t < n; ++t) {
        uint16_t pd = t < point_.level() ? point_.digits[(size_t)t] : 0;
        if (pd != a.digits[(size_t)t]) return Scalar::zero(F_);
    }
    std::vector<uint16_t> tail;
    for (int t = n; t < point_.level(); ++t) tail.push_back(point_.digits[(size_t)t]);
    bool allz = std::all_of(tail.begin(), tail.end(), [](uint16_t x) { return x == 0; });
    if (tail.empty() || allz) return monomial_eval(Scalar::zero(F_), i);
    tail.resize(std::max<size_t>(tail.size(), (size_t)F_->precision()), 0);  // exact value
    return monomial_eval(Scalar::from_digits(F_, 0, tail), i);
}

Scalar HaarOracle::base_moment(const MultiIndex& i) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(i);
        if (it != memo_.end()) return it->second;
    }
    // Volkenborn-style Riemann sums over the standard (integer-coordinate)
    // representatives:  M_m = q^{-m} sum_{w in St_m} w^i, power sums advanced
    // one digit at a time; stops on a run of digit agreements.
    std::vector<MultiIndex> down;  // the lattice interval {j <= i}
    {
        std::vector<int> j(i.dim(), 0);
        for (;;) {
            down.emplace_back(j);
            int s = 0;
            while (s < i.dim() && ++j[(size_t)s] > i.v[(size_t)s]) j[(size_t)s++] = 0;
            if (s == i.dim()) break;
        }
        std::sort(down.begin(), down.end());
    }
    std::map<MultiIndex, Scalar> P;
    for (const auto& j : down) P.emplace(j, j.total() == 0 ? Scalar::one(F_) : Scalar::zero(F_));

    std::vector<Scalar> std_digits;  // integer-coordinate lifts of k_F
    for (uint16_t u = 0; u < F_->q(); ++u) std_digits.push_back(F_->standard_lift(u));

    Scalar qinv = Scalar::from_int(F_, F_->q()).inv();
    Scalar qm = Scalar::one(F_);
    Scalar prev = Scalar::zero(F_);
    int agree_streak = 0;
    for (int m = 1; m <= 64; ++m) {
        // digit sums T_t = sum_{u} (lift(u) pi^{m-1})^t
        std::map<MultiIndex, Scalar> T;
        for (const auto& t : down) {
            Scalar s = Scalar::zero(F_);
            for (uint16_t u = 0; u < F_->q(); ++u)
                s = s + monomial_eval(std_digits[u].shift_pi(m - 1), t);
            T.emplace(t, s);
        }
        std::map<MultiIndex, Scalar> Pn;
        for (const auto& j : down) {
            Scalar s = Scalar::zero(F_);
            for (const auto& k : down) {
                if (!k.leq(j)) continue;
                s = s + F_->int_scalar(mi_binom(j, k)) * T.at(j - k) * P.at(k);
            }
            Pn.emplace(j, s);
        }
        P = std::move(Pn);
        qm = qm * qinv;
        Scalar M = qm * P.at(i);
        Scalar diff = M - prev;
        long long agree = diff.is_unit_form() ? diff.pi_val() : diff.known_pi();
        if (m > 1 && agree >= target_)
            ++agree_streak;
        else
            agree_streak = 0;
        prev = M;
        if (agree_streak >= 2) {
            Scalar out = M.truncate(std::min<long long>(M.known_pi(), target_));
            std::lock_guard<std::mutex> lock(mu_);
            memo_.emplace(i, out);
            return out;
        }
    }
    throw PrecisionExhausted("haar moment did not stabilize: i = " + i.str());
}

Scalar HaarOracle::moment(const CosetRep& a, const MultiIndex& i) const {
    // cells of a + pi^n O_F carry the standard representatives s + pi^n w, so
    //   moment = q^{-n} sum_{k<=i} binom(i,k) delta^{i-k} m_k,
    // with delta = (s - a)/pi^n the exact recentering offset of the standard
    // coset representative s against the canonical one.
    const int n = a.level();
    Scalar av = Scalar::from_rep(F_, a);
    Scalar rem = av;  // a - (standard partial sums)
    for (int u = 0; u < n; ++u) {
        uint16_t t = rem.digit_at(u);
        if (t) rem = rem - F_->standard_lift(t).shift_pi(u);
    }
    // rem = a - s, divisible by pi^n
    Scalar delta = Scalar::zero(F_);
    if (!rem.is_zero_like()) delta = (-rem).shift_pi(-n);

    Scalar acc = Scalar::zero(F_);
    std::vector<int> k(i.dim(), 0);
    for (;;) {
        MultiIndex ki(k);
        Scalar term = F_->int_scalar(mi_binom(i, ki)) * base_moment(ki);
        MultiIndex rest = i - ki;
        if (rest.total() > 0) term = term * monomial_eval(delta, rest);
        acc = acc + term;
        int s = 0;
        while (s < i.dim() && ++k[(size_t)s] > i.v[(size_t)s]) k[(size_t)s++] = 0;
        if (s == i.dim()) break;
    }
    Scalar qinv_n = Scalar::from_int(F_, F_->q()).inv().pow((unsigned)n);
    return qinv_n * acc;
}

AdditivityReport validate_additivity(const MomentOracle& mu, int depth) {
    const auto& F = mu.field();
    AdditivityReport rep;
    rep.depth = depth;
    auto bp = mu.caps();
    std::vector<MultiIndex> idxs;
    for (const auto& i : index_set(Rel::LE, mu.max_degree(), F->d()))
        if (bp.admits(i, std::nullopt)) idxs.push_back(i);

    for (int n = 0; n < depth; ++n) {
        for (const auto& a : F->residue_system(n)) {
            for (const auto& i : idxs) {
                Scalar lhs = mu.moment(a, i);
                Scalar rhs = Scalar::zero(F);
                for (uint16_t b = 0; b < F->q(); ++b) {
                    CosetRep child = a.child(b);
                    CosetRep boff;
                    boff.digits = {b};
                    // ((z-a)/pi^n)^i = sum_{m<=i} binom(i,m) [b]^{i-m} (pi ((z-c)/pi^{n+1}))^m
                    for (const auto& m : idxs) {
                        if (!m.leq(i)) continue;
                        const Scalar& bmono = F->rep_monomial(boff, (i - m).v);
                        if (bmono.is_exact_zero()) continue;
                        rhs = rhs + F->int_scalar(mi_binom(i, m)) * bmono * pi_monomial(F, 1, m) *
                                        mu.moment(child, m);
                    }
                }
                if (!eq_to_prec(lhs, rhs)) {
                    rep.ok = false;
                    rep.violation = "a=" + a.str() + " n=" + std::to_string(n) + " i=" + i.str();
                    return rep;
                }
            }
        }
    }
    return rep;
}

AvvReport avv_check(const MomentOracle& mu, const Rational& r, int N, int depth, ExecPolicy pol) {
    const auto& F = mu.field();
    if (N < (int)r.floor()) throw InvalidParameters("avv_check: N < [r]");
    if (N > mu.max_degree()) throw InvalidParameters("avv_check: N beyond the oracle's degree cap");
    AvvReport rep;
    rep.r = r;
    rep.N = N;
    rep.depth = depth;

    auto bp = mu.caps();
    std::vector<MultiIndex> idxs;
    for (const auto& i : index_set(Rel::LE, N, F->d()))
        if (bp.admits(i, std::nullopt)) idxs.push_back(i);

    AbsValue cbest = AbsValue::zero();
    std::string cwit;
    for (int n = 0; n <= depth; ++n) {
        uint64_t reps = 1;
        for (int t = 0; t < n; ++t) reps *= (uint64_t)F->q();
        std::mutex ub_mu;
        GaussAcc ub_acc;
        Rational scale((long long)F->f() * n);  // * q^{-nr} => pexp += f n r
        auto fn = [&](size_t raw) -> std::optional<Rational> {
            uint64_t akey = raw / idxs.size();
            const MultiIndex& i = idxs[raw % idxs.size()];
            CosetRep a = F->unpack_rep(akey, n);
            Scalar m = mu.moment(a, i);
            AbsValue v = m.abs();
            if (v.is_zero()) return std::nullopt;
            v.pexp = v.pexp + scale * r;
            if (v.kind == AbsValue::Kind::UpperBound) {
                std::lock_guard<std::mutex> lk(ub_mu);
                ub_acc.feed(v);
                return std::nullopt;
            }
            return v.pexp;
        };
        ScanBest sb = max_scan(reps * idxs.size(), fn, std::nullopt, pol);
        AbsValue env = sb.has ? AbsValue::exact(sb.pexp) : AbsValue::zero();
        {
            GaussAcc check = ub_acc;
            check.feed(env);
            check.settle("avv_check");  // undecidable moments must stay dominated
        }
        rep.envelope.push_back(env);
        if (sb.has && value_less(cbest, env)) {
            cbest = env;
            rep.argmax_n = n;
            uint64_t akey = sb.index / idxs.size();
            cwit = "a=" + F->unpack_rep(akey, n).str() + " n=" + std::to_string(n) +
                   " i=" + idxs[sb.index % idxs.size()].str();
        }
    }
    rep.C_estimate = cbest;
    rep.witness = cwit;
    rep.non_increasing = true;
    for (int n = rep.argmax_n; n + 1 <= depth; ++n)
        if (value_less(rep.envelope[(size_t)n], rep.envelope[(size_t)n + 1]))
            rep.non_increasing = false;
    bool growth = depth >= 1 && rep.argmax_n == depth &&
                  value_less(rep.envelope.front(), rep.envelope.back());
    rep.pass = !growth && rep.non_increasing;
    return rep;
}

Scalar pair(const MomentOracle& mu, const LocPolyFun& f) {
    const auto& F = f.field();
    if (!(F->desc() == mu.field()->desc())) throw FieldMismatch("pair: oracle vs function");
    auto bp = mu.caps();
    const int h = f.level();
    Scalar acc = Scalar::zero(F);
    for (const auto& [key, coeffs] : f.cosets()) {
        CosetRep a = F->unpack_rep(key, h);
        for (const auto& [m, c] : coeffs) {
            if (m.total() > mu.max_degree() || !bp.admits(m, std::nullopt))
                throw DegreeTooHigh("pair: index " + m.str() + " outside oracle caps");
            // (z-a)^m = (pi^h)^m ((z-a)/pi^h)^m
            acc = acc + c * pi_monomial(F, h, m) * mu.moment(a, m);
        }
    }
    return acc;
}

Scalar extend_pair(const MomentOracle& mu, const WaveletCoeffs& c, const Rational& r) {
    const auto& F = c.field;
    Scalar acc = Scalar::zero(F);
    for (const auto& [key, b] : c.support) {
        const CosetRep& a = key.first;
        const MultiIndex& i = key.second;
        if (i.total() > mu.max_degree() || !mu.caps().admits(i, std::nullopt))
            throw DegreeTooHigh("extend_pair: index " + i.str() + " outside oracle caps");
        long long sc = (r * Rational(a.l_of())).floor();
        acc = acc + b * Scalar::pi_pow(F, sc) * mu.moment(a.truncated(a.l_of()), i);
    }
    return acc;
}

DualNormEstimate dual_norm(const MomentOracle& mu, const Rational& r, int N, int depth,
                           ExecPolicy pol) {
    AvvReport rep = avv_check(mu, r, N, depth, pol);
    DualNormEstimate est;
    est.lower = rep.C_estimate;
    est.upper = rep.C_estimate;
    if (!est.upper.is_zero()) est.upper.kind = AbsValue::Kind::UpperBound;
    est.depth = depth;
    est.pass = rep.pass;
    est.witness = rep.witness;
    return est;
}

}  // namespace padicr
