#pragma once

#include <map>

#include "padicr/supnorm.hpp"

namespace padicr {

// Certified C^r norm report.
//   taylor_part    = sup_i sup_x |D_i f(x) / i!|
//   remainder_part = sup_{x,y} |eps_{f,[r]}(x,y)| / |y|^r
//   value          = max of the two
//   profile[h]     = C_{f,r}(h) = sup_{x, y in pi^h O_F} |eps| q^{rh}
struct CrNormReport {
    Rational r;
    SupInterval taylor_part;
    SupInterval remainder_part;
    SupInterval value;
    std::map<int, SupInterval> profile;
    int depth = 0;

    bool tight() const { return value.tight(); }
};

CrNormReport cr_norm(const LocPolyFun& f, const Rational& r, int depth, int profile_hmax = -1,
                     ExecPolicy pol = default_policy());

// throws DepthInsufficient when the caller demanded a tight value
void require_tight(const CrNormReport& rep);

std::map<int, SupInterval> remainder_profile(const LocPolyFun& f, const Rational& r, int h_max,
                                             int depth, ExecPolicy pol = default_policy());

// C^l report for l <= r (Taylor sums truncated at [l])
CrNormReport norm_downgrade(const CrNormReport& report_r, const LocPolyFun& f, const Rational& l,
                            ExecPolicy pol = default_policy());

// true iff d^{d_sigma+1}/dz_sigma^{d_sigma+1} f = 0 for every sigma outside J'
bool subspace_member(const LocPolyFun& f, const Rational& r, const BoundaryProfile& bp, int depth);

// sup_{x in O_F, y in pi^{y_min} O_F} of |eps_{f,[r]}(x,y)| * weight, where
// weight = |y|^{-r} (per_y_weight) or the constant q^{r*y_min} (profile mode)
SupInterval remainder_sup(const LocPolyFun& f, const Rational& r, int y_min_level,
                          bool per_y_weight, int depth, ExecPolicy pol = default_policy());

}  // namespace padicr
