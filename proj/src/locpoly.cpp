#include "padicr/locpoly.hpp"

#include <algorithm>

namespace padicr {

LocPolyFun LocPolyFun::constant(const std::shared_ptr<const Field>& F, const Scalar& c) {
    LocPolyFun f(F, 0);
    f.set_coeff(CosetRep{}, MultiIndex::zeros(F->d()), c);
    return f;
}

LocPolyFun LocPolyFun::monomial(const std::shared_ptr<const Field>& F, const MultiIndex& m,
                                const Scalar& c) {
    LocPolyFun f(F, 0);
    f.set_coeff(CosetRep{}, m, c);
    return f;
}

LocPolyFun LocPolyFun::indicator(const std::shared_ptr<const Field>& F, const CosetRep& a) {
    LocPolyFun f(F, a.level());
    f.set_coeff(a, MultiIndex::zeros(F->d()), Scalar::one(F));
    return f;
}

int LocPolyFun::max_total_degree() const {
    int n = 0;
    for (const auto& [key, coeffs] : tab_)
        for (const auto& [m, c] : coeffs) n = std::max(n, m.total());
    return n;
}

const LocPolyFun::CoeffMap* LocPolyFun::coset_table(const CosetRep& a) const {
    auto it = tab_.find(F_->pack_rep(a.padded(level_)));
    return it == tab_.end() ? nullptr : &it->second;
}

Scalar LocPolyFun::coeff(const CosetRep& a, const MultiIndex& m) const {
    const CoeffMap* t = coset_table(a);
    if (!t) return Scalar::zero(F_);
    auto it = t->find(m);
    return it == t->end() ? Scalar::zero(F_) : it->second;
}

void LocPolyFun::set_coeff(const CosetRep& a, const MultiIndex& m, Scalar c) {
    if (a.level() > level_) throw InvalidParameters("set_coeff: rep finer than function level");
    if (m.dim() != F_->d()) throw InvalidParameters("set_coeff: index arity mismatch");
    uint64_t key = F_->pack_rep(a.padded(level_));
    if (c.is_exact_zero()) {
        auto it = tab_.find(key);
        if (it != tab_.end()) {
            it->second.erase(m);
            if (it->second.empty()) tab_.erase(it);
        }
        return;
    }
    tab_[key][m] = std::move(c);
}

void LocPolyFun::add_coeff(const CosetRep& a, const MultiIndex& m, const Scalar& c) {
    set_coeff(a, m, coeff(a, m) + c);
}

bool eq_to_prec(const LocPolyFun& f, const LocPolyFun& g) {
    if (f.level() != g.level()) {
        int L = std::max(f.level(), g.level());
        return eq_to_prec(refine_to(f, L), refine_to(g, L));
    }
    auto keys = [](const LocPolyFun& h) {
        std::vector<uint64_t> k;
        for (const auto& [key, coeffs] : h.cosets()) k.push_back(key);
        return k;
    };
    std::vector<uint64_t> all = keys(f), gk = keys(g);
    all.insert(all.end(), gk.begin(), gk.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    const auto& F = f.field();
    for (uint64_t key : all) {
        CosetRep a = F->unpack_rep(key, f.level());
        std::vector<MultiIndex> idx;
        if (const auto* t = f.coset_table(a))
            for (const auto& [m, c] : *t) idx.push_back(m);
        if (const auto* t = g.coset_table(a))
            for (const auto& [m, c] : *t) idx.push_back(m);
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        for (const auto& m : idx)
            if (!eq_to_prec(f.coeff(a, m), g.coeff(a, m))) return false;
    }
    return true;
}

CosetRep coset_of_scalar(const std::shared_ptr<const Field>& F, const Scalar& z, int level) {
    if (z.known_pi() < level)
        throw PrecisionExhausted("point known only mod pi^" + std::to_string(z.known_pi()) +
                                 ", need level " + std::to_string(level));
    if (z.is_unit_form() && z.pi_val() < 0)
        throw InvalidParameters("point outside O_F");
    CosetRep a;
    a.digits.resize(level);
    for (int t = 0; t < level; ++t) a.digits[t] = z.digit_at(t);
    return a;
}

CosetRep coset_of(const LocPolyFun& f, const Scalar& z) {
    return coset_of_scalar(f.field(), z, f.level());
}

Scalar eval(const LocPolyFun& f, const Scalar& z) {
    const auto& F = f.field();
    CosetRep a = coset_of(f, z);
    const auto* t = f.coset_table(a);
    if (!t) return Scalar::zero(F);
    Scalar w = z - Scalar::from_rep(F, a);
    Scalar acc = Scalar::zero(F);
    for (const auto& [m, c] : *t) acc = acc + c * monomial_eval(w, m);
    return acc;
}

LocPolyFun::CoeffMap recenter_coeffs(const std::shared_ptr<const Field>& F,
                                     const LocPolyFun::CoeffMap& coeffs, const Scalar& delta) {
    LocPolyFun::CoeffMap out;
    for (const auto& [i, c] : coeffs) {
        // (z-c)^i = sum_{m<=i} binom(i,m) delta^{i-m} (z-c-delta)^m
        std::vector<int> upto = i.v;
        std::vector<int> m(i.dim(), 0);
        for (;;) {
            MultiIndex mi(m);
            Scalar term = c * F->int_scalar(mi_binom(i, mi)) * monomial_eval(delta, i - mi);
            auto it = out.find(mi);
            if (it == out.end())
                out.emplace(mi, term);
            else
                it->second = it->second + term;
            int s = 0;
            while (s < i.dim() && ++m[s] > upto[s]) m[s++] = 0;
            if (s == i.dim()) break;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_exact_zero() ? out.erase(it) : std::next(it);
    return out;
}

LocPolyFun refine(const LocPolyFun& f) {
    const auto& F = f.field();
    const int h = f.level();
    LocPolyFun out(F, h + 1);
    for (const auto& [key, coeffs] : f.cosets()) {
        CosetRep a = F->unpack_rep(key, h);
        for (uint16_t b = 0; b < F->q(); ++b) {
            CosetRep child = a.child(b);
            if (b == 0) {
                for (const auto& [m, c] : coeffs) out.set_coeff(child, m, c);
                continue;
            }
            Scalar delta = Scalar::teichmuller(F, b).shift_pi(h);
            for (auto& [m, c] : recenter_coeffs(F, coeffs, delta)) out.set_coeff(child, m, c);
        }
    }
    return out;
}

LocPolyFun refine_to(const LocPolyFun& f, int level) {
    if (level < f.level()) throw InvalidParameters("refine_to: cannot coarsen");
    LocPolyFun g = f;
    while (g.level() < level) g = refine(g);
    return g;
}

LocPolyFun derived(const LocPolyFun& f, const MultiIndex& i) {
    if (i.total() == 0) return f;
    const auto& F = f.field();
    LocPolyFun out(F, f.level());
    for (const auto& [key, coeffs] : f.cosets()) {
        CosetRep a = F->unpack_rep(key, f.level());
        for (const auto& [m, c] : coeffs) {
            if (!i.leq(m)) continue;
            out.add_coeff(a, m - i, c * F->int_scalar(mi_binom(m, i)));
        }
    }
    return out;
}

Scalar remainder(const LocPolyFun& f, const Rational& r, const Scalar& x, const Scalar& y) {
    const auto& F = f.field();
    if (r < Rational(0)) throw InvalidParameters("remainder: r < 0");
    Scalar total = eval(f, x + y);
    int rfloor = (int)r.floor();
    for (const auto& i : index_set(Rel::LE, rfloor, F->d()))
        total = total - eval(derived(f, i), x) * monomial_eval(y, i);
    return total;
}

LocPolyFun product(const LocPolyFun& f, const LocPolyFun& g) {
    if (!(f.field()->desc() == g.field()->desc()))
        throw FieldMismatch("product of functions over different fields");
    int L = std::max(f.level(), g.level());
    LocPolyFun a = refine_to(f, L), b = refine_to(g, L);
    const auto& F = a.field();
    LocPolyFun out(F, L);
    for (const auto& [key, ca] : a.cosets()) {
        auto it = b.cosets().find(key);
        if (it == b.cosets().end()) continue;
        CosetRep rep = F->unpack_rep(key, L);
        for (const auto& [mi, ci] : ca)
            for (const auto& [mj, cj] : it->second) out.add_coeff(rep, mi + mj, ci * cj);
    }
    return out;
}

LocPolyFun lp_add(const LocPolyFun& f, const LocPolyFun& g) {
    int L = std::max(f.level(), g.level());
    LocPolyFun a = refine_to(f, L), b = refine_to(g, L);
    const auto& F = a.field();
    LocPolyFun out = a;
    for (const auto& [key, cb] : b.cosets()) {
        CosetRep rep = F->unpack_rep(key, L);
        for (const auto& [m, c] : cb) out.add_coeff(rep, m, c);
    }
    return out;
}

LocPolyFun scalar_mul(const Scalar& c, const LocPolyFun& f) {
    LocPolyFun out(f.field(), f.level());
    if (c.is_exact_zero()) return out;
    for (const auto& [key, coeffs] : f.cosets()) {
        CosetRep rep = f.field()->unpack_rep(key, f.level());
        for (const auto& [m, v] : coeffs) out.set_coeff(rep, m, c * v);
    }
    return out;
}

LocPolyFun lp_sub(const LocPolyFun& f, const LocPolyFun& g) {
    return lp_add(f, scalar_mul(Scalar::from_int(f.field(), -1), g));
}

AbsValue fh_norm(const LocPolyFun& f) {
    const auto& F = f.field();
    const Rational fh((long long)F->f() * f.level());
    AbsValue best = AbsValue::zero();
    AbsValue worst_ub = AbsValue::zero();
    bool have_ub = false;
    for (const auto& [key, coeffs] : f.cosets()) {
        for (const auto& [m, c] : coeffs) {
            AbsValue a = c.abs();
            if (a.is_zero()) continue;
            a.pexp = a.pexp + fh * Rational(m.total());
            if (a.kind == AbsValue::Kind::UpperBound) {
                if (!have_ub || value_less(worst_ub, a)) worst_ub = a;
                have_ub = true;
            } else if (value_less(best, a)) {
                best = a;
            }
        }
    }
    if (have_ub && value_less(best, worst_ub))
        throw PrecisionExhausted("fh_norm: coefficient valuation undecidable");
    return best;
}

}  // namespace padicr
