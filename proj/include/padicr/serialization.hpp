#pragma once

#include "padicr/counterexample.hpp"
#include "padicr/deltaops.hpp"

// vendored single-header json
#include "json.hpp"

namespace padicr {

using json = nlohmann::json;

json field_to_json(const FieldDescriptor& fd);
FieldDescriptor field_from_json(const json& j);

json rep_to_json(const CosetRep& a);
CosetRep rep_from_json(const json& j);

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

// exponents are emitted base q: value = q^{-qexp}
json absvalue_to_json(const AbsValue& a, const Field& F);
json interval_to_json(const SupInterval& s, const Field& F);

json locpoly_to_json(const LocPolyFun& f);
LocPolyFun locpoly_from_json(const std::shared_ptr<const Field>& F, const json& j);

json wavelet_to_json(const WaveletCoeffs& c);
WaveletCoeffs wavelet_from_json(const std::shared_ptr<const Field>& F, const json& j);

json crnorm_to_json(const CrNormReport& rep, const Field& F);
json avv_to_json(const AvvReport& rep, const Field& F);
json probe_to_json(const ProbeReport& rep);

std::shared_ptr<TableOracle> table_oracle_from_json(const std::shared_ptr<const Field>& F,
                                                    const json& j, int max_degree);
json table_oracle_to_json(const Field& F, const std::vector<std::tuple<CosetRep, MultiIndex, Scalar>>& rows);

}  // namespace padicr
