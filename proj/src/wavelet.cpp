#include "padicr/wavelet.hpp"

#include <algorithm>

namespace padicr {

bool eq_to_prec(const WaveletCoeffs& a, const WaveletCoeffs& b) {
    if (!(a.r == b.r)) return false;
    std::vector<std::pair<CosetRep, MultiIndex>> keys;
    for (const auto& [k, v] : a.support) keys.push_back(k);
    for (const auto& [k, v] : b.support) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (const auto& k : keys)
        if (!eq_to_prec(a.get(k.first, k.second), b.get(k.first, k.second))) return false;
    return true;
}

LocPolyFun basis_fn(const std::shared_ptr<const Field>& F, const CosetRep& a, const MultiIndex& i,
                    const Rational& r) {
    if (r < Rational(0)) throw InvalidParameters("basis_fn: r < 0");
    if (i.total() > (int)r.floor())
        throw IndexTooLarge("basis_fn: |i| = " + std::to_string(i.total()) + " > [r]");
    const int l = a.l_of();
    CosetRep rep = a.truncated(l);
    // pi^{[l r]} ((z-a)/pi^l)^i  =  pi^{[l r]} (pi^l)^{-i} (z-a)^i
    long long scale_pow = (r * Rational(l)).floor();
    Scalar coeff = Scalar::pi_pow(F, scale_pow);
    if (i.total() > 0) coeff = coeff / pi_monomial(F, l, i);
    LocPolyFun f(F, l);
    f.set_coeff(rep, i, coeff);
    return f;
}

LocPolyFun synthesize(const WaveletCoeffs& c) {
    const auto& F = c.field;
    int level = 0;
    for (const auto& [key, b] : c.support) level = std::max(level, key.first.l_of());
    LocPolyFun out(F, level);
    for (const auto& [key, b] : c.support) {
        LocPolyFun e = refine_to(basis_fn(F, key.first, key.second, c.r), level);
        out = lp_add(out, scalar_mul(b, e));
    }
    return out;
}

WaveletCoeffs analyze(const LocPolyFun& f, const Rational& r) {
    const auto& F = f.field();
    const int d = F->d();
    const int rfloor = (int)r.floor();
    if (f.max_total_degree() > rfloor)
        throw DegreeTooHigh("analyze: degree " + std::to_string(f.max_total_degree()) +
                            " exceeds [r] = " + std::to_string(rfloor));
    const int h = f.level();

    WaveletCoeffs out;
    out.r = r;
    out.field = F;
    if (f.empty()) return out;

    // rhs in the coordinates of the level-h centered monomials
    //   f_{c,m} = 1_{c+pi^h}((z-c)/pi^h)^m:  rhs_{c,m} = a_m(c) * (pi^h)^m
    std::map<uint64_t, LocPolyFun::CoeffMap> rhs;
    for (const auto& [key, coeffs] : f.cosets())
        for (const auto& [m, c] : coeffs) rhs[key][m] = c * pi_monomial(F, h, m);

    // ancestors of c: canonical truncations, one per distinct level value
    auto ancestors = [&](const CosetRep& c) {
        std::vector<CosetRep> anc;
        int prev = -1;
        for (int t = 0; t <= h; ++t) {
            CosetRep a = c.truncated(std::min(t, c.level()));
            int la = a.l_of();
            if (la == t && la != prev) {
                anc.push_back(a.truncated(la));
                prev = la;
            }
        }
        return anc;
    };

    auto idxs = index_set(Rel::LE, rfloor, d);  // graded ascending

    // all level-h reps in level-ascending counting order (rows and unknowns
    // biject: the unknown at the A-member of c is driven by the row at c)
    std::vector<uint64_t> all_keys;
    {
        uint64_t count = 1;
        for (int t = 0; t < h; ++t) count *= (uint64_t)F->q();
        all_keys.reserve(count);
        for (uint64_t n = 0; n < count; ++n) all_keys.push_back(n);
        std::sort(all_keys.begin(), all_keys.end(), [&](uint64_t a, uint64_t b) {
            int la = F->unpack_rep(a, h).l_of(), lb = F->unpack_rep(b, h).l_of();
            if (la != lb) return la < lb;
            return a < b;
        });
    }

    for (auto it = idxs.rbegin(); it != idxs.rend(); ++it) {
        const MultiIndex& i = *it;
        // betas of this block, keyed by the packed level-h key of the member
        std::map<uint64_t, Scalar> beta_blk;
        for (uint64_t key : all_keys) {
            CosetRep c = F->unpack_rep(key, h);
            CosetRep a = c.truncated(c.l_of());
            Scalar val = Scalar::zero(F);
            auto rit = rhs.find(key);
            if (rit != rhs.end()) {
                auto cit = rit->second.find(i);
                if (cit != rit->second.end()) val = cit->second;
            }
            // subtract the diagonal-in-i contributions of strict ancestors
            for (const auto& anc : ancestors(c)) {
                if (anc.level() == a.level()) continue;
                auto bit = beta_blk.find(F->pack_rep(anc.padded(h)));
                if (bit == beta_blk.end()) continue;
                val = val - bit->second * pi_monomial(F, h - anc.l_of(), i);
            }
            if (val.is_exact_zero()) continue;
            Scalar beta = val / pi_monomial(F, h - a.l_of(), i);
            if (beta.is_exact_zero()) continue;
            beta_blk.emplace(key, beta);
            // coordinates in the e-basis carry the extra pi^{[l(a) r]}
            long long sc = (r * Rational(a.l_of())).floor();
            out.set(a, i, beta.shift_pi(-sc));
            // push the g_{a,i} column into lower blocks on all children
            if (i.total() > 0) {
                int la = a.l_of();
                uint64_t nkids = 1;
                for (int t = 0; t < h - la; ++t) nkids *= (uint64_t)F->q();
                for (uint64_t bi = 0; bi < nkids; ++bi) {
                    auto tb = tail_digits(bi, h - la, F->q());
                    CosetRep child = a;
                    child.digits.resize(h, 0);
                    for (int t = 0; t < h - la; ++t) child.digits[la + t] = tb[(size_t)t];
                    CosetRep boff;
                    boff.digits = tb;
                    uint64_t ckey = F->pack_rep(child);
                    for (const auto& m : idxs) {
                        if (m == i || !m.leq(i)) continue;
                        const Scalar& bmono = F->rep_monomial(boff, (i - m).v);
                        if (bmono.is_exact_zero()) continue;
                        Scalar s = beta * F->int_scalar(mi_binom(i, m)) *
                                   pi_monomial(F, h - la, m) * bmono;
                        auto& cell = rhs[ckey];
                        auto cit = cell.find(m);
                        if (cit == cell.end())
                            cell.emplace(m, -s);
                        else
                            cit->second = cit->second - s;
                    }
                }
            }
        }
    }
    return out;
}

LocPolyFun approximant(const LocPolyFun& f, const Rational& r, int h) {
    if (h < 0) throw InvalidParameters("approximant: h < 0");
    const auto& F = f.field();
    LocPolyFun out(F, h);
    for (const auto& a : F->residue_system(h)) {
        for (auto& [m, c] : approximant_coset(f, r, a)) out.set_coeff(a, m, c);
    }
    return out;
}

LocPolyFun::CoeffMap approximant_coset(const LocPolyFun& f, const Rational& r, const CosetRep& a) {
    const auto& F = f.field();
    const int rfloor = (int)r.floor();
    LocPolyFun::CoeffMap out;
    Scalar az = Scalar::from_rep(F, a);
    for (const auto& i : index_set(Rel::LE, rfloor, F->d())) {
        Scalar v = eval(derived(f, i), az);
        if (!v.is_exact_zero()) out.emplace(i, v);
    }
    return out;
}

std::vector<MultiIndex> subfamily_indices(const std::shared_ptr<const Field>& F, const Rational& r,
                                          const BoundaryProfile& bp) {
    const int rfloor = (int)r.floor();
    std::vector<MultiIndex> out;
    for (const auto& i : index_set(Rel::LE, rfloor, F->d())) {
        bool in_yprime = bp.admits(i, r);
        bool in_y = bp.admits(i, std::nullopt);
        if (in_y != in_yprime)
            throw InvalidParameters("subfamily_indices: Y and Y' disagree below [r]");
        if (in_yprime) out.push_back(i);
    }
    return out;
}

}  // namespace padicr
