#pragma once

#include <mutex>

#include "padicr/distribution.hpp"

namespace padicr {

// Distribution on Z_p^d built by the dyadic-style recursion that is bounded
// on uniform-level cosets but unbounded across mixed levels.  Coset data are
// integer digit vectors (coordinates of B_n = {0..p^n-1}^d); scalar values
// live in a tame field over p whose value group accommodates p^{n(r-|j|)},
// with a floored exponent (and a flag) when it does not.
class CounterexampleOracle {
  public:
    CounterexampleOracle(int p, int d, std::vector<Rational> r_vec, int k,
                         std::vector<long long> alpha, int precision = 64);

    int p() const { return p_; }
    int dim() const { return d_; }
    int k() const { return k_; }
    const Rational& r() const { return r_; }
    const std::vector<Rational>& r_vec() const { return r_vec_; }
    bool exact_exponents() const { return exact_exponents_; }
    const std::shared_ptr<const Field>& scalar_field() const { return SF_; }

    // mu(1_{b + p^n Z^d} prod_i z_i^{j_i}); b given coordinate-wise, b_i < p^n
    Scalar raw_moment(const std::vector<long long>& b, int n, const MultiIndex& j) const;

    // mu(1_U prod_i z_i^{j_i}) over the product coset U = prod (a_i + p^{n_i} Z_p),
    // summed over the support refinement at level max(n_i)
    Scalar mixed_moment(const std::vector<long long>& a, const std::vector<int>& levels,
                        const MultiIndex& j) const;

    // coset reps at level n with nonzero moment for some monomial
    std::vector<std::vector<long long>> support_nodes(int n, const MultiIndex& j) const;

    // report-normalized exponent: |x| = p^{-pexp} with val(p) = d
    Rational report_pexp(const Scalar& x) const;

  private:
    int p_, d_, k_;
    Rational r_;
    std::vector<Rational> r_vec_;
    std::vector<long long> alpha_;
    std::shared_ptr<const Field> SF_;
    bool exact_exponents_ = true;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<std::vector<long long>, int, MultiIndex>, Scalar> memo_;

    Scalar level_value(int n, const MultiIndex& j) const;  // p^{-n(r - |j|)}
};

struct CounterAdditivityReport {
    bool ok = true;
    int depth = 0;
    std::string violation;
};

CounterAdditivityReport validate_additivity(const CounterexampleOracle& mu, int depth, int N);

// uniform-level envelope: |centered moment| p^{-d n r} over the support
struct UniformCheckReport {
    int depth = 0;
    std::vector<Rational> envelope_pexp;  // per n; pexp in the val(p)=d units
    std::vector<bool> envelope_nonzero;
    Rational C_pexp;
    bool pass = false;
    std::string witness;
};

UniformCheckReport uniform_check(const CounterexampleOracle& mu, int N, int depth);

// mixed-level envelope: |moment| p^{-d sum n_i r_i}; the X_n series is the
// designated growth witness
struct TensorCheckReport {
    int depth = 0;
    std::vector<Rational> env_pexp;  // indexed by s = sum n_i
    std::vector<bool> env_nonzero;
    bool pass = false;
    std::string witness;
    std::vector<Rational> xn_ratio_pexp;      // n = 1..depth
    std::vector<bool> xn_ratio_nonzero;
};

TensorCheckReport tensor_check(const CounterexampleOracle& mu, int N, int depth);

}  // namespace padicr
