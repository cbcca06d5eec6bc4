#include "padicr/multiindex.hpp"

#include <algorithm>

namespace padicr {

namespace {

void enumerate_total(int dim, int total, const Caps& caps, std::vector<int>& cur, int pos,
                     std::vector<MultiIndex>& out) {
    if (pos == dim - 1) {
        if (!caps[pos] || total <= *caps[pos]) {
            cur[pos] = total;
            out.emplace_back(cur);
        }
        return;
    }
    int top = caps[pos] ? std::min(*caps[pos], total) : total;
    for (int x = 0; x <= top; ++x) {
        cur[pos] = x;
        enumerate_total(dim, total - x, caps, cur, pos + 1, out);
    }
}

}  // namespace

std::vector<MultiIndex> index_set(Rel star, int n, int dim, const std::optional<Caps>& caps_in,
                                  std::optional<int> total_bound) {
    if (n < 0) throw InvalidParameters("index_set: n < 0");
    if (dim < 1) throw InvalidParameters("index_set: dim < 1");
    Caps caps = caps_in.value_or(Caps(dim, std::nullopt));
    if ((int)caps.size() != dim) throw InvalidParameters("index_set: caps arity mismatch");

    int lo = 0, hi = 0;
    switch (star) {
        case Rel::LT: lo = 0; hi = n - 1; break;
        case Rel::LE: lo = 0; hi = n; break;
        case Rel::EQ: lo = n; hi = n; break;
        case Rel::GT:
        case Rel::GE: {
            lo = (star == Rel::GT) ? n + 1 : n;
            long long cap_sum = 0;
            bool all_capped = true;
            for (const auto& c : caps) {
                if (!c) { all_capped = false; break; }
                cap_sum += *c;
            }
            if (total_bound)
                hi = *total_bound;
            else if (all_capped)
                hi = (int)cap_sum;
            else
                throw UnboundedSet("index_set: > / >= with uncapped directions");
            break;
        }
    }

    std::vector<MultiIndex> out;
    std::vector<int> cur(dim, 0);
    for (int t = std::max(lo, 0); t <= hi; ++t) enumerate_total(dim, t, caps, cur, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

long long mi_binom(const MultiIndex& n, const MultiIndex& m) {
    if (n.dim() != m.dim()) throw InvalidParameters("mi_binom: arity mismatch");
    if (!m.leq(n)) throw IndexOrderViolation("mi_binom: m !<= n");
    long long prod = 1;
    for (int s = 0; s < n.dim(); ++s) {
        long long c = 1;
        for (int k = 1; k <= m.v[s]; ++k) c = c * (n.v[s] - k + 1) / k;
        prod *= c;
    }
    return prod;
}

Scalar mi_binom_scalar(const std::shared_ptr<const Field>& F, const MultiIndex& n,
                       const MultiIndex& m) {
    return Scalar::from_int(F, mi_binom(n, m));
}

long long mi_factorial(const MultiIndex& n) {
    long long prod = 1;
    for (int s = 0; s < n.dim(); ++s)
        for (int k = 2; k <= n.v[s]; ++k) prod *= k;
    return prod;
}

}  // namespace padicr
