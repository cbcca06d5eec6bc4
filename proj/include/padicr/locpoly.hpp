#pragma once

#include <map>
#include <optional>

#include "padicr/multiindex.hpp"

namespace padicr {

// Analytic-direction subset J of S with per-sigma degree caps on S\J.
// J' = J + {sigma in S\J : d_sigma + 1 > r}.
struct BoundaryProfile {
    std::vector<bool> in_J;  // size |S|
    Caps caps;               // caps[s] meaningful for s not in J

    static BoundaryProfile full(int d) {
        BoundaryProfile bp;
        bp.in_J.assign(d, true);
        bp.caps.assign(d, std::nullopt);
        return bp;
    }
    std::vector<bool> j_prime(const Rational& r) const {
        std::vector<bool> jp = in_J;
        for (size_t s = 0; s < in_J.size(); ++s)
            if (!in_J[s] && caps[s] && Rational(*caps[s] + 1) > r) jp[s] = true;
        return jp;
    }
    // multi-index admissible for Y (use_jprime=false) or Y' (true)
    bool admits(const MultiIndex& i, const std::optional<Rational>& r_for_jprime) const {
        std::vector<bool> J = r_for_jprime ? j_prime(*r_for_jprime) : in_J;
        for (int s = 0; s < i.dim(); ++s)
            if (!J[s] && caps[s] && i.v[s] > *caps[s]) return false;
        return true;
    }
};

// Element of F_h(O_F, J, (d_sigma)): per-coset polynomial coefficient tables,
//   f(z) = sum_m a_m(a) (z-a)^m   on a + pi^h O_F.
// Sparse: absent cosets and indices are exactly zero.
class LocPolyFun {
  public:
    using CoeffMap = std::map<MultiIndex, Scalar>;

    LocPolyFun() = default;
    LocPolyFun(std::shared_ptr<const Field> F, int level) : F_(std::move(F)), level_(level) {}

    static LocPolyFun zero(const std::shared_ptr<const Field>& F, int level = 0) {
        return LocPolyFun(F, level);
    }
    static LocPolyFun constant(const std::shared_ptr<const Field>& F, const Scalar& c);
    // c * z^m at level 0
    static LocPolyFun monomial(const std::shared_ptr<const Field>& F, const MultiIndex& m,
                               const Scalar& c);
    static LocPolyFun indicator(const std::shared_ptr<const Field>& F, const CosetRep& a);

    const std::shared_ptr<const Field>& field() const { return F_; }
    int level() const { return level_; }
    const std::map<uint64_t, CoeffMap>& cosets() const { return tab_; }
    bool empty() const { return tab_.empty(); }
    int max_total_degree() const;

    const CoeffMap* coset_table(const CosetRep& a) const;
    Scalar coeff(const CosetRep& a, const MultiIndex& m) const;

    // builder; drops exact zeros, keeps zero-to-precision entries
    void set_coeff(const CosetRep& a, const MultiIndex& m, Scalar c);
    void add_coeff(const CosetRep& a, const MultiIndex& m, const Scalar& c);

    friend bool eq_to_prec(const LocPolyFun& f, const LocPolyFun& g);

  private:
    std::shared_ptr<const Field> F_;
    int level_ = 0;
    std::map<uint64_t, CoeffMap> tab_;
};

CosetRep coset_of(const LocPolyFun& f, const Scalar& z);
CosetRep coset_of_scalar(const std::shared_ptr<const Field>& F, const Scalar& z, int level);

Scalar eval(const LocPolyFun& f, const Scalar& z);
LocPolyFun refine(const LocPolyFun& f);
LocPolyFun refine_to(const LocPolyFun& f, int level);
// table of D_i f / i!  (same level)
LocPolyFun derived(const LocPolyFun& f, const MultiIndex& i);
// epsilon_{f,[r]}(x,y), exact
Scalar remainder(const LocPolyFun& f, const Rational& r, const Scalar& x, const Scalar& y);
LocPolyFun product(const LocPolyFun& f, const LocPolyFun& g);
LocPolyFun lp_add(const LocPolyFun& f, const LocPolyFun& g);
LocPolyFun lp_sub(const LocPolyFun& f, const LocPolyFun& g);
LocPolyFun scalar_mul(const Scalar& c, const LocPolyFun& f);
AbsValue fh_norm(const LocPolyFun& f);

// coefficients of P recentered: sum_m a_m (z-c)^m = sum_m b_m (z-c-delta)^m
LocPolyFun::CoeffMap recenter_coeffs(const std::shared_ptr<const Field>& F,
                                     const LocPolyFun::CoeffMap& coeffs, const Scalar& delta);

}  // namespace padicr
