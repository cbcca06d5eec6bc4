#include "padicr/crnorm.hpp"

#include <algorithm>
#include <cassert>

namespace padicr {

namespace {

// one candidate worth refining: a coset/annulus combination with its bound
struct Candidate {
    AbsValue bound;          // upper bound for |eps| * weight over this slice
    uint64_t a_key = 0;      // coset of x (level h), valid unless a_any
    bool a_any = false;      // x unconstrained (bound driven by the target coset)
    uint64_t c_key = 0;      // coset of x+y, valid unless c_any
    bool c_any = false;
    int annulus = 0;         // val(y) = annulus
};

struct PointSet {
    std::vector<Scalar> pts;
    std::vector<std::string> tags;
};

// small set of points inside the coset rep + pi^h O_F: the rep itself plus
// one and two extra digits
PointSet coset_points(const std::shared_ptr<const Field>& F, const CosetRep& rep, int budget) {
    PointSet ps;
    const int h = rep.level();
    auto push = [&](const std::vector<uint16_t>& tail) {
        CosetRep full = rep;
        for (auto t : tail) full.digits.push_back(t);
        ps.pts.push_back(Scalar::from_rep(F, full));
        ps.tags.push_back(full.str());
    };
    push({});
    for (uint16_t u = 1; u < F->q(); ++u) push({u});
    if (budget > 1 && F->q() <= 16) {
        for (uint16_t u = 0; u < F->q(); ++u)
            for (uint16_t v = 1; v < F->q(); ++v) push({u, v});
    }
    (void)h;
    return ps;
}

Rational weight_exp(const Field& F, const Rational& r, int k, bool per_y_weight, int y_min) {
    // multiplies |eps| by q^{r*k} (per-annulus) or q^{r*y_min} (profile)
    Rational qe = per_y_weight ? r * Rational(k) : r * Rational(y_min);
    return qe * Rational(F.f());  // as a p-exponent credit
}

// Gauss bound for eps(x, v) = P_c(v) - sum_{i <= [r]} d_i^{(a)}(x) (v-x)^i over
// x in a + pi^h O, v in c + pi^h O, expanded exactly in the two offsets
// xi = x - a, eta = v - c with D = c - a.  triangle_only forgoes cancellation
// between terms (a bound valid for every coset at val(c-a) = val(D)).
AbsValue pair_eps_bound(const std::shared_ptr<const Field>& F,
                        const std::map<MultiIndex, LocPolyFun>& g,
                        const std::vector<MultiIndex>& low_idx, uint64_t akey,
                        const LocPolyFun::CoeffMap* c_coeffs, const Scalar& D, int h,
                        bool triangle_only) {
    const Rational fh((long long)F->f() * h);
    std::map<std::pair<MultiIndex, MultiIndex>, Scalar> combined;  // (xi-idx, eta-idx)
    GaussAcc triangle;
    auto add_term = [&](const MultiIndex& xi, const MultiIndex& eta, const Scalar& val) {
        if (val.is_exact_zero()) return;
        if (triangle_only) {
            AbsValue a = val.abs();
            if (!a.is_zero())
                a.pexp = a.pexp + fh * Rational(xi.total() + eta.total());
            triangle.feed(a);
            return;
        }
        auto key = std::make_pair(xi, eta);
        auto it = combined.find(key);
        if (it == combined.end())
            combined.emplace(key, val);
        else
            it->second = it->second + val;
    };

    if (c_coeffs)
        for (const auto& [m, c] : *c_coeffs) add_term(MultiIndex::zeros(F->d()), m, c);

    for (const auto& i : low_idx) {
        auto git = g.find(i);
        if (git == g.end()) continue;
        auto cit = git->second.cosets().find(akey);
        if (cit == git->second.cosets().end()) continue;
        // (D + eta - xi)^i = sum_{u+s+t=i} binom(i,u) binom(i-u,s) D^u eta^s (-xi)^t
        std::vector<int> u(i.dim(), 0);
        for (;;) {
            MultiIndex ui(u);
            if (ui.leq(i)) {
                MultiIndex rest = i - ui;
                Scalar du = ui.total() ? monomial_eval(D, ui) : Scalar::one(F);
                std::vector<int> s(i.dim(), 0);
                for (;;) {
                    MultiIndex si(s);
                    if (si.leq(rest)) {
                        MultiIndex ti = rest - si;
                        long long mult = mi_binom(i, ui) * mi_binom(rest, si);
                        Scalar coef = F->int_scalar(mult) * du;
                        if (ti.total() % 2) coef = -coef;
                        for (const auto& [m, b] : cit->second)
                            add_term(m + ti, si, -(coef * b));
                    }
                    int w = 0;
                    while (w < i.dim() && ++s[(size_t)w] > rest.v[(size_t)w]) s[(size_t)w++] = 0;
                    if (w == i.dim()) break;
                }
            }
            int w = 0;
            while (w < i.dim() && ++u[(size_t)w] > i.v[(size_t)w]) u[(size_t)w++] = 0;
            if (w == i.dim()) break;
        }
    }
    if (triangle_only) return triangle.settle_upper();
    GaussAcc acc;
    for (const auto& [key, val] : combined) {
        AbsValue a = val.abs();
        if (!a.is_zero())
            a.pexp = a.pexp + fh * Rational(key.first.total() + key.second.total());
        acc.feed(a);
    }
    return acc.settle_upper();
}

}  // namespace

SupInterval remainder_sup(const LocPolyFun& f, const Rational& r, int y_min_level,
                          bool per_y_weight, int depth, ExecPolicy pol) {
    const auto& F = f.field();
    const int h = f.level();
    const int d = F->d();
    const int rfloor = (int)r.floor();
    if (r < Rational(0)) throw InvalidParameters("remainder_sup: r < 0");

    SupInterval out;
    out.lower = AbsValue::zero();
    out.upper = AbsValue::zero();
    if (f.empty()) return out;

    const int N = f.max_total_degree();
    auto low_idx = index_set(Rel::LE, rfloor, d);
    std::vector<MultiIndex> high_idx;
    for (const auto& m : index_set(Rel::LE, N, d))
        if (m.total() > rfloor) high_idx.push_back(m);

    // derived tables D_i f / i! and their per-coset Gauss bounds
    std::map<MultiIndex, LocPolyFun> g;
    for (const auto& i : index_set(Rel::LE, N, d)) g.emplace(i, derived(f, i));

    auto coset_bound = [&](const LocPolyFun& t, uint64_t key) -> AbsValue {
        auto it = t.cosets().find(key);
        if (it == t.cosets().end()) return AbsValue::zero();
        return coset_gauss_upper(*F, it->second, h);
    };
    // global sup bounds S_i = sup_x |D_i f / i!|
    std::map<MultiIndex, AbsValue> S;
    for (auto& [i, t] : g) {
        AbsValue best = AbsValue::zero();
        for (const auto& [key, coeffs] : t.cosets()) {
            AbsValue gv = coset_gauss_upper(*F, coeffs, h);
            if (value_less(best, gv)) best = gv;
        }
        S.emplace(i, best);
    }

    // exact epsilon evaluation from the definition
    auto eps_exact = [&](const Scalar& x, const Scalar& y) -> Scalar {
        Scalar total = eval(f, x + y);
        for (const auto& i : low_idx) {
            auto it = g.find(i);
            if (it == g.end() || it->second.empty()) continue;
            total = total - eval(it->second, x) * monomial_eval(y, i);
        }
        return total;
    };

    AbsValue best = AbsValue::zero();
    Witness best_wit;
    GaussAcc upper_acc;

    auto try_pair = [&](const Scalar& x, const std::string& xtag, const Scalar& y,
                        const std::string& ytag, int k) {
        Scalar e = eps_exact(x, y);
        if (e.kind() != Scalar::Kind::Unit) return;
        AbsValue v = e.abs();
        v.pexp = v.pexp - weight_exp(*F, r, k, per_y_weight, y_min_level);
        if (value_less(best, v)) {
            best = v;
            best_wit.x = xtag;
            best_wit.y = ytag + " (val " + std::to_string(k) + ")";
        }
    };

    // ---- region B: annuli k < h, x and x+y in different cosets ----
    if (y_min_level < h) {
        // |eps| <= max( |(P_c - P_a)(x+y)| , tail_{>r} ); for small tables the
        // coset difference is bounded exactly pairwise (the coarse per-coset
        // bounds overshoot whenever neighbouring values cancel)
        std::vector<uint64_t> keys;
        for (const auto& [key, coeffs] : f.cosets()) keys.push_back(key);
        const bool pairwise = keys.size() <= 200;

        auto taylor_bound = [&](uint64_t akey, int k) {
            AbsValue u2 = AbsValue::zero();
            for (const auto& i : low_idx) {
                auto it = g.find(i);
                if (it == g.end()) continue;
                AbsValue s = coset_bound(it->second, akey);
                if (s.is_zero()) continue;
                s.pexp = s.pexp + Rational((long long)F->f() * k * i.total());
                if (value_less(u2, s)) u2 = s;
            }
            return u2;
        };
        auto first_diff = [&](const CosetRep& a, const CosetRep& b) {
            for (int t = 0; t < h; ++t)
                if (a.digits[(size_t)t] != b.digits[(size_t)t]) return t;
            return h;
        };

        // a coset at prefix distance exactly k from c where f vanishes
        auto find_zero_partner = [&](const CosetRep& c, int k) -> std::optional<CosetRep> {
            uint64_t tails = 1;
            for (int t = k + 1; t < h; ++t) tails *= (uint64_t)F->q();
            uint64_t scanned = 0;
            for (uint16_t delta = 1; delta < F->q(); ++delta) {
                for (uint64_t ti = 0; ti < tails; ++ti) {
                    CosetRep other = c;
                    other.digits[(size_t)k] = F->fq_add(other.digits[(size_t)k], delta);
                    auto tl = tail_digits(ti, h - k - 1, F->q());
                    for (int t = k + 1; t < h; ++t)
                        other.digits[(size_t)t] = tl[(size_t)(t - k - 1)];
                    if (!f.cosets().count(F->pack_rep(other))) return other;
                    if (++scanned > 4096) return std::nullopt;
                }
            }
            return std::nullopt;
        };

        std::vector<Candidate> cands;
        for (int k = y_min_level; k < h; ++k) {
            Rational wk = weight_exp(*F, r, k, per_y_weight, y_min_level);
            uint64_t partners_total = (uint64_t)(F->q() - 1);
            for (int t = k + 1; t < h; ++t) partners_total *= (uint64_t)F->q();
            if (pairwise) {
                for (uint64_t ckey : keys) {
                    CosetRep crep = F->unpack_rep(ckey, h);
                    uint64_t in_table_partners = 0;
                    // pairs (a, c), both nonzero cosets: exact joint bound
                    for (uint64_t akey : keys) {
                        if (akey == ckey) continue;
                        CosetRep arep = F->unpack_rep(akey, h);
                        if (first_diff(arep, crep) != k) continue;
                        ++in_table_partners;
                        Scalar D = Scalar::from_rep(F, crep) - Scalar::from_rep(F, arep);
                        AbsValue b = pair_eps_bound(F, g, low_idx, akey, &f.cosets().at(ckey), D,
                                                    h, false);
                        if (b.is_zero()) continue;
                        b.pexp = b.pexp - wk;
                        cands.push_back(Candidate{b, akey, false, ckey, false, k});
                    }
                    if (in_table_partners < partners_total) {
                        // x inside a vanishing partner: eps = P_c(x+y)
                        AbsValue b = coset_gauss_upper(*F, f.cosets().at(ckey), h);
                        if (!b.is_zero()) {
                            b.pexp = b.pexp - wk;
                            cands.push_back(Candidate{b, 0, true, ckey, false, k});
                        }
                        // x inside c, target vanishing: class bound over all
                        // partners (no cancellation credit)
                        Scalar D = Scalar::pi_pow(F, k);
                        AbsValue tb =
                            pair_eps_bound(F, g, low_idx, ckey, nullptr, D, h, true);
                        if (!tb.is_zero()) {
                            tb.pexp = tb.pexp - wk;
                            cands.push_back(Candidate{tb, ckey, false, 0, true, k});
                        }
                    }
                }
            } else {
                for (uint64_t ckey : keys) {
                    AbsValue u1 = coset_gauss_upper(*F, f.cosets().at(ckey), h);
                    if (!u1.is_zero()) {
                        u1.pexp = u1.pexp - wk;
                        cands.push_back(Candidate{u1, 0, true, ckey, false, k});
                    }
                    AbsValue u2 = taylor_bound(ckey, k);
                    if (!u2.is_zero()) {
                        u2.pexp = u2.pexp - wk;
                        cands.push_back(Candidate{u2, ckey, false, 0, true, k});
                    }
                }
            }
        }
        for (const auto& c : cands) upper_acc.feed(c.bound);

        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            if (!value_eq(a.bound, b.bound)) return value_less(b.bound, a.bound);
            if (a.annulus != b.annulus) return a.annulus < b.annulus;
            return std::make_tuple(a.a_any, a.a_key, a.c_any, a.c_key) <
                   std::make_tuple(b.a_any, b.a_key, b.c_any, b.c_key);
        });

        int budget = std::max(1, depth - h);
        for (const auto& cand : cands) {
            if (!best.is_zero() && value_leq(cand.bound, best)) break;
            const int k = cand.annulus;
            // assemble concrete (a, c) pairs with val(c - a) = k
            std::vector<std::pair<CosetRep, CosetRep>> coset_pairs;
            auto bump = [&](const CosetRep& base) {
                std::vector<CosetRep> res;
                for (uint16_t delta = 1; delta < F->q(); ++delta) {
                    CosetRep other = base;
                    other.digits[(size_t)k] = F->fq_add(other.digits[(size_t)k], (uint16_t)delta);
                    res.push_back(other);
                }
                return res;
            };
            if (!cand.a_any && !cand.c_any) {
                coset_pairs.emplace_back(F->unpack_rep(cand.a_key, h),
                                         F->unpack_rep(cand.c_key, h));
            } else if (!cand.c_any) {
                CosetRep c = F->unpack_rep(cand.c_key, h);
                if (pairwise) {
                    // the bound assumed a vanishing partner; probe a real one
                    if (auto z = find_zero_partner(c, k)) coset_pairs.emplace_back(*z, c);
                } else {
                    for (auto& a : bump(c)) coset_pairs.emplace_back(a, c);
                }
            } else {
                CosetRep a = F->unpack_rep(cand.a_key, h);
                if (pairwise) {
                    if (auto z = find_zero_partner(a, k)) coset_pairs.emplace_back(a, *z);
                } else {
                    for (auto& c : bump(a)) coset_pairs.emplace_back(a, c);
                }
            }
            for (const auto& [arep, crep] : coset_pairs) {
                if (!best.is_zero() && value_leq(cand.bound, best)) break;
                PointSet xs = coset_points(F, arep, budget);
                PointSet vs = coset_points(F, crep, budget);
                for (size_t xi = 0; xi < xs.pts.size(); ++xi) {
                    for (size_t vi = 0; vi < vs.pts.size(); ++vi) {
                        Scalar y = vs.pts[vi] - xs.pts[xi];
                        if (!y.is_unit_form() || y.pi_val() != k) continue;
                        try_pair(xs.pts[xi], xs.tags[xi], y, vs.tags[vi] + "-" + xs.tags[xi], k);
                        if (!best.is_zero() && value_leq(cand.bound, best)) break;
                    }
                    if (!best.is_zero() && value_leq(cand.bound, best)) break;
                }
            }
        }
    }

    // ---- region A: annuli k >= max(h, y_min), same coset, tail certified ----
    if (!high_idx.empty()) {
        // witnesses of the top derived sups, reused as x candidates
        std::vector<std::pair<Scalar, std::string>> xcands;
        {
            CosetRep whole;  // O_F
            for (const auto& i : high_idx) {
                auto it = g.find(i);
                if (it == g.end() || it->second.empty()) continue;
                SupInterval si = sup_abs(it->second, whole, std::min(depth, h + 2), pol);
                if (!si.lower.is_zero()) {
                    CosetRep w;
                    w.digits = si.witness.x_digits;
                    xcands.emplace_back(Scalar::from_rep(F, w), w.str());
                }
            }
            if (xcands.empty())
                for (const auto& [key, coeffs] : f.cosets()) {
                    CosetRep a = F->unpack_rep(key, h);
                    xcands.emplace_back(Scalar::from_rep(F, a), a.str());
                    break;
                }
        }

        const int k0 = std::max(h, y_min_level);
        const int kcap = k0 + std::max(rfloor, 1) * (depth + 4) + 64;
        for (int k = k0;; ++k) {
            AbsValue uk = AbsValue::zero();
            for (const auto& i : high_idx) {
                auto it = S.find(i);
                if (it == S.end() || it->second.is_zero()) continue;
                AbsValue t = it->second;
                t.pexp = t.pexp + Rational((long long)F->f() * k * i.total());
                if (value_less(uk, t)) uk = t;
            }
            if (uk.is_zero()) break;
            uk.pexp = uk.pexp - weight_exp(*F, r, k, per_y_weight, y_min_level);
            // tail below the achieved sup: stop (nothing beyond k can matter)
            if (!best.is_zero() && value_leq(uk, best)) break;
            upper_acc.feed(uk);
            // probe candidates on this annulus
            for (const auto& [x, xtag] : xcands) {
                for (uint16_t u = 1; u < F->q(); ++u) {
                    Scalar y = Scalar::teichmuller(F, u).shift_pi(k);
                    try_pair(x, xtag, y, "[" + std::to_string(u) + "]*pi^" + std::to_string(k), k);
                }
                for (uint16_t u = 1; u < F->q() && F->q() <= 16; ++u)
                    for (uint16_t v = 1; v < F->q(); ++v) {
                        Scalar y = Scalar::teichmuller(F, u).shift_pi(k) +
                                   Scalar::teichmuller(F, v).shift_pi(k + 1);
                        try_pair(x, xtag, y, "2-digit y at " + std::to_string(k), k);
                    }
            }
            if (k >= kcap) {
                if (best.is_zero())
                    throw PrecisionExhausted("remainder_sup: no nonzero remainder witness found");
                break;
            }
        }
    }

    out.lower = best;
    out.witness = best_wit;
    AbsValue ub = upper_acc.settle("remainder_sup");
    // the enumerated lower never exceeds the analytic upper
    out.upper = value_less(ub, best) ? best : ub;
    return out;
}

CrNormReport cr_norm(const LocPolyFun& f, const Rational& r, int depth, int profile_hmax,
                     ExecPolicy pol) {
    if (r < Rational(0)) throw InvalidParameters("cr_norm: r < 0");
    const auto& F = f.field();
    CrNormReport rep;
    rep.r = r;
    rep.depth = depth;

    const int rfloor = (int)r.floor();
    CosetRep whole;
    SupInterval taylor;
    taylor.lower = AbsValue::zero();
    taylor.upper = AbsValue::zero();
    for (const auto& i : index_set(Rel::LE, rfloor, F->d())) {
        LocPolyFun gi = derived(f, i);
        if (gi.empty()) continue;
        taylor = interval_max(taylor, sup_abs(gi, whole, depth, pol));
    }
    rep.taylor_part = taylor;
    rep.remainder_part = remainder_sup(f, r, 0, /*per_y_weight=*/true, depth, pol);
    rep.value = interval_max(rep.taylor_part, rep.remainder_part);
    if (profile_hmax >= 0)
        rep.profile = remainder_profile(f, r, profile_hmax, depth, pol);
    return rep;
}

void require_tight(const CrNormReport& rep) {
    if (!rep.value.tight())
        throw DepthInsufficient("cr_norm interval not tight at depth " + std::to_string(rep.depth));
}

std::map<int, SupInterval> remainder_profile(const LocPolyFun& f, const Rational& r, int h_max,
                                             int depth, ExecPolicy pol) {
    if (h_max < 0) throw InvalidParameters("remainder_profile: h_max < 0");
    std::map<int, SupInterval> out;
    for (int h = 0; h <= h_max; ++h)
        out.emplace(h, remainder_sup(f, r, h, /*per_y_weight=*/false, depth, pol));
    return out;
}

CrNormReport norm_downgrade(const CrNormReport& report_r, const LocPolyFun& f, const Rational& l,
                            ExecPolicy pol) {
    if (report_r.r < l) throw InvalidParameters("norm_downgrade: l > r");
    int hmax = report_r.profile.empty() ? -1 : report_r.profile.rbegin()->first;
    return cr_norm(f, l, report_r.depth, hmax, pol);
}

bool subspace_member(const LocPolyFun& f, const Rational& r, const BoundaryProfile& bp,
                     int depth) {
    (void)depth;
    const auto& F = f.field();
    auto jp = bp.j_prime(r);
    for (int s = 0; s < F->d(); ++s) {
        if (jp[s]) continue;
        int cap = bp.caps[s] ? *bp.caps[s] : -1;
        if (cap < 0) continue;
        LocPolyFun ds = derived(f, MultiIndex::unit(F->d(), s, cap + 1));
        if (ds.empty()) continue;
        bool any_unit = false, any_ub = false;
        for (const auto& [key, coeffs] : ds.cosets())
            for (const auto& [m, c] : coeffs) {
                if (c.kind() == Scalar::Kind::Unit) any_unit = true;
                if (c.kind() == Scalar::Kind::ZeroToPrec) any_ub = true;
            }
        if (any_unit) return false;
        if (any_ub) throw PrecisionExhausted("subspace_member: derivative not decidably zero");
    }
    return true;
}

}  // namespace padicr
