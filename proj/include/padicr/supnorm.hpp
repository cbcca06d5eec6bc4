#pragma once

#include <string>

#include "padicr/locpoly.hpp"
#include "padicr/parallel.hpp"

namespace padicr {

struct Witness {
    std::string x;  // digit string of the achieving point
    std::string y;  // second point for remainder sups, empty otherwise
    std::vector<uint16_t> x_digits;
};

// max-accumulator over absolute values with certification: upper-bound-only
// entries must stay dominated by the exact part
struct GaussAcc {
    AbsValue exact = AbsValue::zero();
    AbsValue ub = AbsValue::zero();
    bool have_ub = false;

    void feed(const AbsValue& a) {
        if (a.is_zero()) return;
        if (a.kind == AbsValue::Kind::UpperBound) {
            if (!have_ub || value_less(ub, a)) ub = a;
            have_ub = true;
        } else if (value_less(exact, a)) {
            exact = a;
        }
    }
    AbsValue settle(const char* what) const {
        if (have_ub && value_less(exact, ub))
            throw PrecisionExhausted(std::string(what) + ": undecidable contribution dominates");
        return exact;
    }
    // non-throwing variant for quantities that are themselves upper bounds
    AbsValue settle_upper() const {
        if (have_ub && value_less(exact, ub)) return ub;  // already UpperBound kind
        return exact;
    }
};

// Certified bracket for a sup of absolute values: lower is achieved by the
// witness, upper is an analytic bound.  tight() means the sup is known
// exactly.
struct SupInterval {
    AbsValue lower;
    AbsValue upper;
    Witness witness;

    bool tight() const { return value_eq(lower, upper) && upper.is_exact(); }
};

inline SupInterval interval_max(const SupInterval& a, const SupInterval& b) {
    SupInterval r;
    r.lower = value_less(a.lower, b.lower) ? b.lower : a.lower;
    r.upper = value_less(a.upper, b.upper) ? b.upper : a.upper;
    r.witness = value_less(a.lower, b.lower) ? b.witness : a.witness;
    return r;
}

// sup of |f| over the coset region.digits + pi^{region.level} O_F.
//   lower: max |f(z)| over region residues mod pi^depth (witness recorded);
//   upper: coefficient (Gauss-style) bound over the relevant tables.
SupInterval sup_abs(const LocPolyFun& f, const CosetRep& region, int depth,
                    ExecPolicy pol = default_policy());

// max_m |a_m| q^{-scale_level |m|} over a coefficient map; throws when an
// undecidable coefficient dominates
AbsValue coset_gauss(const Field& F, const LocPolyFun::CoeffMap& coeffs, int scale_level);
// non-throwing variant: an undecidable dominant entry yields an UpperBound
AbsValue coset_gauss_upper(const Field& F, const LocPolyFun::CoeffMap& coeffs, int scale_level);

std::vector<uint16_t> tail_digits(uint64_t idx, int count, long long q);

}  // namespace padicr
