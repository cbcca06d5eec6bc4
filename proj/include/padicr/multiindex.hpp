#pragma once

#include <optional>
#include <vector>

#include "padicr/errors.hpp"
#include "padicr/scalar.hpp"

namespace padicr {

// Multi-index over the embedding set S, entries in the canonical embedding
// order.  Canonical total order is graded lexicographic: by |i|, then
// lexicographically with the earlier embedding dominant, descending.
struct MultiIndex {
    std::vector<int> v;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries) : v(std::move(entries)) {}
    static MultiIndex zeros(int d) { return MultiIndex(std::vector<int>(d, 0)); }
    static MultiIndex unit(int d, int sigma, int amount = 1) {
        MultiIndex m = zeros(d);
        m.v[sigma] = amount;
        return m;
    }

    int dim() const { return (int)v.size(); }
    int total() const {
        int s = 0;
        for (int x : v) s += x;
        return s;
    }
    bool leq(const MultiIndex& o) const {
        for (int i = 0; i < dim(); ++i)
            if (v[i] > o.v[i]) return false;
        return true;
    }
    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r = a;
        for (int i = 0; i < a.dim(); ++i) r.v[i] += b.v[i];
        return r;
    }
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        if (!b.leq(a)) throw IndexOrderViolation("multi-index subtraction would go negative");
        MultiIndex r = a;
        for (int i = 0; i < a.dim(); ++i) r.v[i] -= b.v[i];
        return r;
    }
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.v == b.v; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.v != b.v; }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        int ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb;
        return a.v > b.v;  // within a grade: lexicographically descending
    }
    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < dim(); ++i) {
            if (i) s += ",";
            s += std::to_string(v[i]);
        }
        return s + ")";
    }
};

enum class Rel { LT, LE, GT, GE, EQ };

// Per-sigma degree caps; nullopt = unbounded in that direction.
using Caps = std::vector<std::optional<int>>;

// All multi-indices i with |i| * n (and i_sigma <= cap), canonical order.
// Throws UnboundedSet for GT/GE with some direction uncapped and no
// total_bound.
std::vector<MultiIndex> index_set(Rel star, int n, int dim,
                                  const std::optional<Caps>& caps = std::nullopt,
                                  std::optional<int> total_bound = std::nullopt);

long long mi_binom(const MultiIndex& n, const MultiIndex& m);
Scalar mi_binom_scalar(const std::shared_ptr<const Field>& F, const MultiIndex& n,
                       const MultiIndex& m);
long long mi_factorial(const MultiIndex& n);

inline Scalar monomial_eval(const Scalar& z, const MultiIndex& n) {
    return monomial_eval(z, n.v);
}
inline Scalar pi_monomial(const std::shared_ptr<const Field>& F, long long t,
                          const MultiIndex& n) {
    return pi_monomial(F, t, n.v);
}

}  // namespace padicr
