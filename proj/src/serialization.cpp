#include "padicr/serialization.hpp"

namespace padicr {

json field_to_json(const FieldDescriptor& fd) {
    return json{{"p", fd.p}, {"f", fd.f}, {"e", fd.e}};
}

FieldDescriptor field_from_json(const json& j) {
    FieldDescriptor fd;
    fd.p = j.at("p").get<int>();
    fd.f = j.at("f").get<int>();
    fd.e = j.at("e").get<int>();
    return fd;
}

json rep_to_json(const CosetRep& a) {
    json digits = json::array();
    for (auto d : a.digits) digits.push_back((int)d);
    return json{{"digits", digits}, {"level", a.level()}};
}

CosetRep rep_from_json(const json& j) {
    CosetRep a;
    for (const auto& d : j.at("digits")) a.digits.push_back((uint16_t)d.get<int>());
    if (j.contains("level") && j.at("level").get<int>() != a.level())
        throw ParseError("CosetRep: level does not match digits");
    return a;
}

json rational_to_json(const Rational& r) { return json{{"num", r.num}, {"den", r.den}}; }

Rational rational_from_json(const json& j) {
    return Rational(j.at("num").get<long long>(), j.at("den").get<long long>());
}

json absvalue_to_json(const AbsValue& a, const Field& F) {
    if (a.is_zero()) return json{{"kind", "zero"}};
    Rational qexp = a.pexp / Rational(F.f());
    return json{{"kind", a.kind == AbsValue::Kind::Exact ? "exact" : "upper"},
                {"qexp", rational_to_json(qexp)}};
}

json interval_to_json(const SupInterval& s, const Field& F) {
    json w = json::object();
    if (!s.witness.x.empty()) w["x"] = s.witness.x;
    if (!s.witness.y.empty()) w["y"] = s.witness.y;
    return json{{"lower", absvalue_to_json(s.lower, F)},
                {"upper", absvalue_to_json(s.upper, F)},
                {"tight", s.tight()},
                {"witness", w}};
}

json locpoly_to_json(const LocPolyFun& f) {
    const auto& F = f.field();
    json cosets = json::array();
    for (const auto& [key, coeffs] : f.cosets()) {
        json entries = json::array();
        for (const auto& [m, c] : coeffs) {
            json idx = json::array();
            for (int x : m.v) idx.push_back(x);
            entries.push_back(json{{"idx", idx}, {"val", c.str()}});
        }
        cosets.push_back(json{{"rep", rep_to_json(F->unpack_rep(key, f.level()))},
                              {"coeffs", entries}});
    }
    json caps = json::object();
    caps["total"] = f.max_total_degree();
    caps["per_sigma"] = json::array();
    for (int s = 0; s < F->d(); ++s) caps["per_sigma"].push_back(nullptr);
    return json{{"field", field_to_json(F->desc())},
                {"level", f.level()},
                {"caps", caps},
                {"cosets", cosets}};
}

LocPolyFun locpoly_from_json(const std::shared_ptr<const Field>& F, const json& j) {
    FieldDescriptor fd = field_from_json(j.at("field"));
    if (!(fd == F->desc())) throw FieldMismatch("locpoly_from_json: field mismatch");
    LocPolyFun f(F, j.at("level").get<int>());
    for (const auto& coset : j.at("cosets")) {
        CosetRep rep = rep_from_json(coset.at("rep"));
        for (const auto& e : coset.at("coeffs")) {
            std::vector<int> idx;
            for (const auto& x : e.at("idx")) idx.push_back(x.get<int>());
            f.set_coeff(rep, MultiIndex(idx), Scalar::parse(F, e.at("val").get<std::string>()));
        }
    }
    return f;
}

json wavelet_to_json(const WaveletCoeffs& c) {
    json entries = json::array();
    for (const auto& [key, b] : c.support) {
        json idx = json::array();
        for (int x : key.second.v) idx.push_back(x);
        entries.push_back(json{{"a", rep_to_json(key.first)}, {"i", idx}, {"b", b.str()}});
    }
    return json{{"r", rational_to_json(c.r)}, {"entries", entries}};
}

WaveletCoeffs wavelet_from_json(const std::shared_ptr<const Field>& F, const json& j) {
    WaveletCoeffs c;
    c.field = F;
    c.r = rational_from_json(j.at("r"));
    for (const auto& e : j.at("entries")) {
        std::vector<int> idx;
        for (const auto& x : e.at("i")) idx.push_back(x.get<int>());
        c.set(rep_from_json(e.at("a")), MultiIndex(idx),
              Scalar::parse(F, e.at("b").get<std::string>()));
    }
    return c;
}

json crnorm_to_json(const CrNormReport& rep, const Field& F) {
    json profile = json::object();
    for (const auto& [h, s] : rep.profile) profile[std::to_string(h)] = interval_to_json(s, F);
    return json{{"r", rational_to_json(rep.r)},
                {"depth", rep.depth},
                {"taylor", interval_to_json(rep.taylor_part, F)},
                {"remainder", interval_to_json(rep.remainder_part, F)},
                {"value", interval_to_json(rep.value, F)},
                {"profile", profile}};
}

json avv_to_json(const AvvReport& rep, const Field& F) {
    json env = json::array();
    for (const auto& a : rep.envelope) env.push_back(absvalue_to_json(a, F));
    return json{{"r", rational_to_json(rep.r)},
                {"N", rep.N},
                {"depth", rep.depth},
                {"envelope", env},
                {"C_estimate", absvalue_to_json(rep.C_estimate, F)},
                {"argmax_n", rep.argmax_n},
                {"pass", rep.pass},
                {"non_increasing", rep.non_increasing},
                {"witness", rep.witness}};
}

json probe_to_json(const ProbeReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
        rows.push_back(json{{"h", r.h},
                            {"corollary_ratio_qexp", rational_to_json(r.corollary_ratio_pexp)},
                            {"ultratec_ratio_qexp", rational_to_json(r.ultratec_ratio_pexp)}});
    }
    return json{{"N1", rep.N1},
                {"N2", rep.N2},
                {"rows", rows},
                {"corollary_C_pexp", rational_to_json(rep.corollary_C_pexp)},
                {"ultratec_C_pexp", rational_to_json(rep.ultratec_C_pexp)},
                {"lemmatec_C_pexp", rational_to_json(rep.lemmatec_C_pexp)},
                {"any_violation", rep.any_violation}};
}

std::shared_ptr<TableOracle> table_oracle_from_json(const std::shared_ptr<const Field>& F,
                                                    const json& j, int max_degree) {
    auto oracle = std::make_shared<TableOracle>(F, max_degree);
    for (const auto& row : j) {
        CosetRep a = rep_from_json(row.at("a"));
        if (row.contains("n") && row.at("n").get<int>() != a.level())
            throw ParseError("moment row: n does not match rep level");
        std::vector<int> idx;
        for (const auto& x : row.at("i")) idx.push_back(x.get<int>());
        oracle->set(a, MultiIndex(idx), Scalar::parse(F, row.at("val").get<std::string>()));
    }
    return oracle;
}

json table_oracle_to_json(const Field& F,
                          const std::vector<std::tuple<CosetRep, MultiIndex, Scalar>>& rows) {
    (void)F;
    json out = json::array();
    for (const auto& [a, i, v] : rows) {
        json idx = json::array();
        for (int x : i.v) idx.push_back(x);
        out.push_back(json{{"a", rep_to_json(a)}, {"n", a.level()}, {"i", idx}, {"val", v.str()}});
    }
    return out;
}

}  // namespace padicr
