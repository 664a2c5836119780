#pragma once

#include <nlohmann/json.hpp>

#include "mobius/bifurcation.hpp"
#include "mobius/critical.hpp"
#include "mobius/euler.hpp"
#include "mobius/nodal.hpp"
#include "mobius/screening.hpp"
#include "mobius/spectrum.hpp"

namespace mobius::cli {

using nlohmann::json;

json to_json(const SpectrumTable& table);
json to_json(const ScreeningReport& report);
json to_json(const EigenfunctionSpec& spec);
json to_json(const NodalAnalysis& analysis);
json to_json(const CriticalZero& zero);
json to_json(const bifurcation::BifurcationResult& result);
json to_json(const EulerLedger& ledger);

// {"modes": [{"m":2,"n":3,"kind":"sin","c":0.5}, ...]} or
// {"family": "2,3", "beta": 0.5, "theta": 0.3}. Sets `params` for the second form.
EigenfunctionSpec spec_from_json(const json& j, std::optional<FamilyParams>& params);

}  // namespace mobius::cli
