#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "berezin/bergman.hpp"
#include "berezin/projective.hpp"
#include "berezin/rootdata.hpp"
#include "berezin/starprod.hpp"

namespace berezin {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"r", "p", "q", "b", "gamma"}. Malformed input throws Error{ConfigError},
/// inconsistent data Error{InvalidRootData}.
RootSystemData root_data_from_json(const Json& j);
Json to_json(const RootSystemData& data);

/// {"r", "a", "b"} or the command-line form "r=2,a=1,b=0".
SymmetricDomainParams symmetric_params_from_json(const Json& j);
SymmetricDomainParams parse_symmetric_params(std::string_view text);

/// {"kind": "disk"|"ball"|"polydisk", "n": int, "mu": num}; n and mu optional.
DomainModel domain_from_json(const Json& j);
Json to_json(const DomainModel& model);

/// [Re z_0, Im z_0, Re z_1, ...].
Json point_to_json(const Point& z);

Json to_json(const BalancedReport& report);
Json to_json(const DiastasisReport& report);
Json to_json(const InjectivityReport& report);
Json to_json(const DecayReport& report);
Json to_json(const SeparationReport& report);

/// lambda0 summary for the `lambda0` subcommand.
Json lambda0_report(const RootSystemData& data);

}  // namespace berezin
