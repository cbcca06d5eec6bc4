#include "padicr/counterexample.hpp"

#include <algorithm>
#include <set>

namespace padicr {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

CounterexampleOracle::CounterexampleOracle(int p, int d, std::vector<Rational> r_vec, int k,
                                           std::vector<long long> alpha, int precision)
    : p_(p), d_(d), k_(k), r_vec_(std::move(r_vec)), alpha_(std::move(alpha)) {
    if (d_ < 1 || (int)r_vec_.size() != d_ || k_ < 0 || k_ >= d_)
        throw InvalidParameters("counterexample: bad dimension data");
    r_ = Rational(0);
    for (const auto& ri : r_vec_) {
        if (ri < Rational(0)) throw InvalidParameters("counterexample: r_i < 0");
        r_ = r_ + ri;
    }
    if (!(r_vec_[(size_t)k_] < r_))
        throw InvalidParameters("counterexample: need r_k < r");
    if ((int)alpha_.size() != d_) throw InvalidParameters("counterexample: alpha arity");
    bool outside = false;
    for (int i = 0; i < d_; ++i) {
        if (alpha_[(size_t)i] < 0 || alpha_[(size_t)i] >= p_)
            throw InvalidParameters("counterexample: alpha not reduced mod p");
        if (i != k_ && alpha_[(size_t)i] % p_ != 0) outside = true;
    }
    if (!outside) throw InvalidParameters("counterexample: alpha lies in X_1");

    // scalar field: tame e' | p-1 clearing den(r) when possible
    int eprime = 1;
    if (r_.den > 1 && (p_ - 1) % (int)r_.den == 0)
        eprime = (int)r_.den;
    else if (r_.den > 1)
        exact_exponents_ = false;
    SF_ = Field::make(FieldDescriptor{p_, 1, eprime}, precision);
}

Scalar CounterexampleOracle::level_value(int n, const MultiIndex& j) const {
    // p^{-n(r - |j|)} = pi^{-e' n (r - |j|)}, floored when not integral
    Rational t = Rational(-(long long)n) * (r_ - Rational(j.total())) * Rational(SF_->e());
    return Scalar::pi_pow(SF_, t.floor());
}

Scalar CounterexampleOracle::raw_moment(const std::vector<long long>& b, int n,
                                        const MultiIndex& j) const {
    if ((int)b.size() != d_ || n < 0) throw InvalidParameters("raw_moment: bad coset");
    if (j.dim() != d_) throw InvalidParameters("raw_moment: index arity");
    if (n == 0) return Scalar::one(SF_);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(std::make_tuple(b, n, j));
        if (it != memo_.end()) return it->second;
    }
    long long pn1 = ipow(p_, n - 1);
    std::vector<long long> parent(b.size());
    for (size_t i = 0; i < b.size(); ++i) parent[i] = b[i] % pn1;
    Scalar pm = raw_moment(parent, n - 1, j);
    Scalar out = Scalar::zero(SF_);
    if (!pm.is_exact_zero()) {
        bool is_parent = true, is_alpha = true;
        for (size_t i = 0; i < b.size(); ++i) {
            long long top = b[i] / pn1;  // digit at position n-1
            if (top != 0) is_parent = false;
            if (top != alpha_[i]) is_alpha = false;
        }
        if (is_parent)
            out = level_value(n, j);
        else if (is_alpha)
            out = pm - level_value(n, j);
        // exact-representation hygiene: a value that cancelled to precision is
        // recorded as exact zero only when the subtraction was structurally 1-1
        if (out.kind() == Scalar::Kind::ZeroToPrec && is_alpha) {
            Scalar v = level_value(n, j);
            if (pm == v) out = Scalar::zero(SF_);
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(std::make_tuple(b, n, j), out);
    return out;
}

std::vector<std::vector<long long>> CounterexampleOracle::support_nodes(int n,
                                                                        const MultiIndex& j) const {
    std::vector<std::vector<long long>> cur;
    cur.push_back(std::vector<long long>(d_, 0));
    for (int t = 1; t <= n; ++t) {
        long long pt1 = ipow(p_, t - 1);
        std::vector<std::vector<long long>> next;
        for (const auto& c : cur) {
            std::vector<long long> same = c, off = c;
            for (int i = 0; i < d_; ++i) off[(size_t)i] += alpha_[(size_t)i] * pt1;
            if (!raw_moment(same, t, j).is_zero_like()) next.push_back(same);
            if (!raw_moment(off, t, j).is_zero_like()) next.push_back(off);
        }
        cur = std::move(next);
    }
    return cur;
}

Rational CounterexampleOracle::report_pexp(const Scalar& x) const {
    return x.abs().pexp * Rational(d_, SF_->d());
}

Scalar CounterexampleOracle::mixed_moment(const std::vector<long long>& a,
                                          const std::vector<int>& levels,
                                          const MultiIndex& j) const {
    if ((int)a.size() != d_ || (int)levels.size() != d_)
        throw InvalidParameters("mixed_moment: arity");
    int N = *std::max_element(levels.begin(), levels.end());
    // 1_U = sum of the level-N cells inside U; cells off the support vanish
    Scalar acc = Scalar::zero(SF_);
    for (const auto& b : support_nodes(N, j)) {
        bool in_U = true;
        for (int i = 0; i < d_ && in_U; ++i) {
            long long pi = ipow(p_, levels[(size_t)i]);
            if (((b[(size_t)i] - a[(size_t)i]) % pi + pi) % pi != 0) in_U = false;
        }
        if (in_U) acc = acc + raw_moment(b, N, j);
    }
    return acc;
}

CounterAdditivityReport validate_additivity(const CounterexampleOracle& mu, int depth, int N) {
    CounterAdditivityReport rep;
    rep.depth = depth;
    const int d = mu.dim();
    const int p = mu.p();
    auto idxs = index_set(Rel::LE, N, d);
    for (int n = 0; n < depth; ++n) {
        for (const auto& j : idxs) {
            for (const auto& c : mu.support_nodes(n, j)) {
                Scalar lhs = mu.raw_moment(c, n, j);
                Scalar rhs = Scalar::zero(mu.scalar_field());
                long long pn = ipow(p, n);
                std::vector<int> beta(d, 0);
                for (;;) {
                    std::vector<long long> child = c;
                    for (int i = 0; i < d; ++i) child[(size_t)i] += (long long)beta[(size_t)i] * pn;
                    rhs = rhs + mu.raw_moment(child, n + 1, j);
                    int s = 0;
                    while (s < d && ++beta[(size_t)s] == p) beta[(size_t)s++] = 0;
                    if (s == d) break;
                }
                if (!eq_to_prec(lhs, rhs)) {
                    rep.ok = false;
                    rep.violation = "n=" + std::to_string(n) + " j=" + j.str();
                    return rep;
                }
            }
        }
    }
    return rep;
}

UniformCheckReport uniform_check(const CounterexampleOracle& mu, int N, int depth) {
    // envelope of |mu(1_{b+p^n} z^j)| q^{-enr} over the support; the recursion
    // keeps |values| <= p^{d n (r - |j|)} so this stays bounded by 1
    UniformCheckReport rep;
    rep.depth = depth;
    const int d = mu.dim();
    auto idxs = index_set(Rel::LE, N, d);
    bool have_max = false;
    Rational best;
    int best_n = 0;
    for (int n = 0; n <= depth; ++n) {
        bool have_env = false;
        Rational env;
        for (const auto& j : idxs) {
            for (const auto& b : mu.support_nodes(n, j)) {
                Scalar m = mu.raw_moment(b, n, j);
                if (m.is_zero_like()) continue;
                Rational v = mu.report_pexp(m) + Rational((long long)d * n) * mu.r();
                if (!have_env || v < env) {
                    env = v;
                    have_env = true;
                }
                if (!have_max || v < best) {
                    best = v;
                    best_n = n;
                    have_max = true;
                    rep.witness = "n=" + std::to_string(n) + " j=" + j.str();
                }
            }
        }
        rep.envelope_pexp.push_back(have_env ? env : Rational(0));
        rep.envelope_nonzero.push_back(have_env);
    }
    rep.C_pexp = have_max ? best : Rational(0);
    bool growth = have_max && best_n == depth && depth >= 1;
    rep.pass = !growth;
    return rep;
}

TensorCheckReport tensor_check(const CounterexampleOracle& mu, int N, int depth) {
    TensorCheckReport rep;
    rep.depth = depth;
    const int d = mu.dim();
    auto idxs = index_set(Rel::LE, N, d);

    int smax = depth * d;
    rep.env_pexp.assign((size_t)smax + 1, Rational(0));
    rep.env_nonzero.assign((size_t)smax + 1, false);

    // level vectors (n_1..n_d), each <= depth
    std::vector<int> lv(d, 0);
    bool have_best = false;
    Rational best;
    int best_s = 0;
    for (;;) {
        int s = 0;
        for (int i = 0; i < d; ++i) s += lv[(size_t)i];
        int nmax = *std::max_element(lv.begin(), lv.end());
        Rational credit(0);
        for (int i = 0; i < d; ++i)
            credit = credit + Rational(lv[(size_t)i]) * mu.r_vec()[(size_t)i];
        credit = credit * Rational(d);
        for (const auto& j : idxs) {
            // candidate product cosets: projections of the support
            std::set<std::vector<long long>> seen;
            for (const auto& b : mu.support_nodes(nmax, j)) {
                std::vector<long long> a(d);
                for (int i = 0; i < d; ++i) a[(size_t)i] = b[(size_t)i] % ipow(mu.p(), lv[(size_t)i]);
                if (!seen.insert(a).second) continue;
                Scalar m = mu.mixed_moment(a, lv, j);
                if (m.is_zero_like()) continue;
                Rational v = mu.report_pexp(m) + credit;
                if (!rep.env_nonzero[(size_t)s] || v < rep.env_pexp[(size_t)s]) {
                    rep.env_pexp[(size_t)s] = v;
                    rep.env_nonzero[(size_t)s] = true;
                }
                if (!have_best || v < best) {
                    best = v;
                    best_s = s;
                    have_best = true;
                    rep.witness = "levels=(";
                    for (int i = 0; i < d; ++i)
                        rep.witness += (i ? "," : "") + std::to_string(lv[(size_t)i]);
                    rep.witness += ") j=" + j.str();
                }
            }
        }
        int t = 0;
        while (t < d && ++lv[(size_t)t] > depth) lv[(size_t)t++] = 0;
        if (t == d) break;
    }

    // X_n series: levels n everywhere except coordinate k, j = 0
    MultiIndex j0 = MultiIndex::zeros(d);
    for (int n = 1; n <= depth; ++n) {
        std::vector<int> lx(d, n);
        lx[(size_t)mu.k()] = 0;
        std::vector<long long> a0(d, 0);
        Scalar m = mu.mixed_moment(a0, lx, j0);
        Rational credit(0);
        for (int i = 0; i < d; ++i)
            if (i != mu.k()) credit = credit + Rational(n) * mu.r_vec()[(size_t)i];
        credit = credit * Rational(d);
        if (m.is_zero_like()) {
            rep.xn_ratio_pexp.push_back(Rational(0));
            rep.xn_ratio_nonzero.push_back(false);
        } else {
            rep.xn_ratio_pexp.push_back(mu.report_pexp(m) + credit);
            rep.xn_ratio_nonzero.push_back(true);
        }
    }

    // growth witnesses: scan the coordinate families U = prod with one
    // coordinate free; the ratio along any such family must stay bounded
    bool family_growth = false;
    for (int free = 0; free < d && !family_growth; ++free) {
        bool strict = depth >= 2;
        Rational prev;
        bool have_prev = false;
        for (int t = 1; t <= depth && strict; ++t) {
            std::vector<int> lf(d, t);
            lf[(size_t)free] = 0;
            Scalar m = mu.mixed_moment(std::vector<long long>(d, 0), lf, MultiIndex::zeros(d));
            if (m.is_zero_like()) {
                strict = false;
                break;
            }
            Rational credit(0);
            for (int i = 0; i < d; ++i)
                if (i != free) credit = credit + Rational(t) * mu.r_vec()[(size_t)i];
            Rational v = mu.report_pexp(m) + credit * Rational(d);
            if (have_prev && !(v < prev)) strict = false;
            prev = v;
            have_prev = true;
        }
        family_growth = strict;
    }
    (void)best_s;
    (void)smax;
    rep.pass = !family_growth;
    return rep;
}

}  // namespace padicr
