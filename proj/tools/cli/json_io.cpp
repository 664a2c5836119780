#include "json_io.hpp"

#include <string>

#include "mobius/errors.hpp"

namespace mobius::cli {

namespace {

std::string family_name(Family f) {
    switch (f) {
        case Family::OneTwo: return "1,2";
        case Family::TwoThree: return "2,3";
        default: return "general";
    }
}

}  // namespace

json to_json(const SpectrumTable& table) {
    json rows = json::array();
    for (const auto& c : table.clusters) {
        json modes = json::array();
        for (const auto& m : c.modes) modes.push_back({m.m, m.n});
        rows.push_back({{"value", c.value},
                        {"modes", modes},
                        {"multiplicity", c.multiplicity},
                        {"labels", {c.first_label, c.last_label}},
                        {"first_label", c.first_label},
                        {"last_label", c.last_label}});
    }
    return {{"a", table.a}, {"lambda_max", table.lambda_max}, {"clusters", rows}};
}

json to_json(const ScreeningReport& r) {
    json fk = json::object();
    for (const auto& [k, v] : r.fk_ratios) fk[std::to_string(k)] = v;
    return {{"j01", r.j01},
            {"candidates_after_multiplicity", r.candidates_after_multiplicity},
            {"candidates_below_cutoff", r.candidates_below_cutoff},
            {"faber_krahn_ratios", fk},
            {"weyl_cutoff", r.weyl_cutoff},
            {"weyl_root", r.weyl_root},
            {"survivors", r.survivors}};
}

json to_json(const EigenfunctionSpec& spec) {
    json modes = json::array();
    for (const auto& m : spec.modes)
        modes.push_back({{"m", m.m}, {"n", m.n}, {"kind", m.kind == YKind::Sin ? "sin" : "cos"}, {"c", m.c}});
    return {{"eigenvalue", spec.eigenvalue}, {"modes", modes}};
}

json to_json(const NodalAnalysis& a) {
    json domains = json::array();
    for (int l = 0; l < a.domains.count; ++l) {
        json d{{"label", l + 1}, {"sign", a.domains.label_sign[l]}, {"area", a.domains.areas[l]}};
        if (!a.domains.orientable.empty()) d["orientable"] = static_cast<bool>(a.domains.orientable[l]);
        domains.push_back(d);
    }
    json out{{"count", a.domains.count},
             {"resolution", a.grid.nx},
             {"resolutions", a.resolutions},
             {"counts", a.counts},
             {"domains", domains}};
    out["areas"] = a.domains.areas;
    if (!a.domains.orientable.empty()) {
        json flags = json::array();
        for (bool b : a.domains.orientable) flags.push_back(b);
        out["orientable"] = flags;
        out["non_orientable"] = a.domains.non_orientable_count();
    }
    return out;
}

json to_json(const CriticalZero& z) {
    json res = json::object();
    for (const auto& [k, v] : z.residuals) res[k] = v;
    return {{"location", {z.location.x, z.location.y}},
            {"kind", z.kind == ZeroKind::Interior ? "interior" : "boundary"},
            {"order", z.order},
            {"nu", z.nu},
            {"rho", z.rho},
            {"degenerate", z.degenerate},
            {"residuals", res}};
}

json to_json(const bifurcation::BifurcationResult& r) {
    return {{"family", family_name(r.family)},
            {"beta", r.beta},
            {"y_beta", r.y_beta},
            {"m_beta", r.m_beta},
            {"theta_beta", r.theta_beta},
            {"residuals", {r.residuals[0], r.residuals[1]}},
            {"near_degenerate", r.near_degenerate}};
}

json to_json(const EulerLedger& l) {
    json out{{"k", l.k},
             {"omega", l.omega},
             {"non_orientable", l.non_orientable},
             {"b0", l.b0},
             {"b1", l.b1},
             {"b1_zero_band", l.b1_zero_band},
             {"interior_term", l.interior_term},
             {"boundary_term", l.boundary_term},
             {"lhs_minus_rhs", l.lhs_minus_rhs},
             {"balanced", l.balanced()},
             {"resolution", l.resolution}};
    if (l.params) {
        out["family"] = family_name(l.params->family);
        out["beta"] = l.params->beta;
        out["theta"] = l.params->theta;
    }
    json zs = json::array();
    for (const auto& z : l.zeros) zs.push_back(to_json(z));
    out["critical_zeros"] = zs;
    if (!l.incidence_mismatches.empty()) out["incidence_mismatches"] = l.incidence_mismatches;
    return out;
}

EigenfunctionSpec spec_from_json(const json& j, std::optional<FamilyParams>& params) {
    if (j.contains("family")) {
        const std::string f = j.at("family").get<std::string>();
        const double beta = j.value("beta", 0.0), theta = j.value("theta", 0.0);
        if (f == "2,3")
            params = FamilyParams::two_three(beta, theta);
        else if (f == "1,2")
            params = FamilyParams::one_two(beta, theta);
        else
            throw DomainError("unknown family '" + f + "'");
        return family_to_spec(*params);
    }
    if (!j.contains("modes")) throw DomainError("spec file needs 'modes' or 'family'");
    std::vector<TrigMode> modes;
    for (const auto& m : j.at("modes")) {
        TrigMode t;
        t.m = m.at("m").get<int>();
        t.n = m.at("n").get<int>();
        const std::string kind = m.value("kind", t.n == 0 ? "cos" : "sin");
        if (kind != "sin" && kind != "cos") throw DomainError("mode kind must be sin or cos");
        t.kind = kind == "sin" ? YKind::Sin : YKind::Cos;
        t.c = m.value("c", 1.0);
        modes.push_back(t);
    }
    return make_spec(std::move(modes));
}

}  // namespace mobius::cli
