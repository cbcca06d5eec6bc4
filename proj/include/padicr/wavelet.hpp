#pragma once

#include "padicr/crnorm.hpp"

namespace padicr {

// Coordinates in the basis e_{a,i,r}: finite map (a, i) -> scalar.
struct WaveletCoeffs {
    Rational r;
    std::shared_ptr<const Field> field;
    std::map<std::pair<CosetRep, MultiIndex>, Scalar> support;

    void set(const CosetRep& a, const MultiIndex& i, Scalar b) {
        CosetRep key = a.truncated(a.l_of());  // canonical A-member: no trailing zeros
        if (b.is_exact_zero())
            support.erase({key, i});
        else
            support[{key, i}] = std::move(b);
    }
    Scalar get(const CosetRep& a, const MultiIndex& i) const {
        auto it = support.find({a.truncated(a.l_of()), i});
        return it == support.end() ? Scalar::zero(field) : it->second;
    }
};

bool eq_to_prec(const WaveletCoeffs& a, const WaveletCoeffs& b);

// e_{a,i,r} = pi^{[l(a) r]} 1_{a + pi^{l(a)} O_F} ((z-a)/pi^{l(a)})^i
LocPolyFun basis_fn(const std::shared_ptr<const Field>& F, const CosetRep& a, const MultiIndex& i,
                    const Rational& r);

LocPolyFun synthesize(const WaveletCoeffs& c);

// unique coefficients of f (total degree <= [r]) in the basis e_{a,i,r};
// level-by-level peeling with per-coset triangular solves
WaveletCoeffs analyze(const LocPolyFun& f, const Rational& r);

// Taylor approximant f_h at level h, degree <= [r]
LocPolyFun approximant(const LocPolyFun& f, const Rational& r, int h);
// one coset of the approximant, for streaming norms over large levels
LocPolyFun::CoeffMap approximant_coset(const LocPolyFun& f, const Rational& r, const CosetRep& a);

// Y' cap filter intersected with I_{<=[r]}; asserts Y and Y' agree there
std::vector<MultiIndex> subfamily_indices(const std::shared_ptr<const Field>& F, const Rational& r,
                                          const BoundaryProfile& bp);

}  // namespace padicr
