#include "berezin/report.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "berezin/error.hpp"

namespace berezin {
namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

void require_object(const Json& j, std::string_view what, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) config_error(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) config_error("unknown key '" + key + "' in " + std::string(what));
  }
}

template <class T>
T field(const Json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) config_error(std::string(what) + " is missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(std::string(what) + ": '" + key + "' has the wrong type");
  }
}

int integer_field(const Json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) config_error(std::string(what) + " is missing '" + key + "'");
  if (!j.at(key).is_number_integer()) config_error(std::string(what) + ": '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

double number_field(const Json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) config_error(std::string(what) + " is missing '" + key + "'");
  if (!j.at(key).is_number()) config_error(std::string(what) + ": '" + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

RootSystemData root_data_from_json(const Json& j) {
  constexpr std::string_view what = "root data";
  require_object(j, what, {"r", "p", "q", "b", "gamma"});
  RootSystemData data;
  data.r = integer_field(j, "r", what);
  data.p = field<std::vector<int>>(j, "p", what);
  data.q = field<std::vector<int>>(j, "q", what);
  for (double b : field<std::vector<double>>(j, "b", what)) data.b.push_back(HalfInteger::from_double(b));
  data.gamma = field<std::vector<double>>(j, "gamma", what);
  data.validate();
  return data;
}

Json to_json(const RootSystemData& data) {
  Json b = Json::array();
  for (auto v : data.b) b.push_back(v.value());
  return Json{{"r", data.r}, {"p", data.p}, {"q", data.q}, {"b", b}, {"gamma", data.gamma}};
}

SymmetricDomainParams symmetric_params_from_json(const Json& j) {
  constexpr std::string_view what = "symmetric domain parameters";
  require_object(j, what, {"r", "a", "b"});
  SymmetricDomainParams params;
  params.r = integer_field(j, "r", what);
  params.a = j.contains("a") ? number_field(j, "a", what) : 0.0;
  params.b = j.contains("b") ? number_field(j, "b", what) : 0.0;
  return params;
}

SymmetricDomainParams parse_symmetric_params(std::string_view text) {
  Json j = Json::object();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) config_error("expected key=value, got '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    const std::string_view value = item.substr(eq + 1);
    if (j.contains(key)) config_error("duplicate key '" + key + "'");
    double number = 0.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
    if (ec != std::errc() || end != value.data() + value.size() || value.empty()) {
      config_error("'" + key + "' needs a numeric value");
    }
    if (key == "r") {
      if (number != std::floor(number)) config_error("'r' must be an integer");
      j[key] = static_cast<int>(number);
    } else {
      j[key] = number;
    }
    pos = comma + 1;
  }
  return symmetric_params_from_json(j);
}

DomainModel domain_from_json(const Json& j) {
  constexpr std::string_view what = "domain";
  require_object(j, what, {"kind", "n", "mu"});
  const auto kind = field<std::string>(j, "kind", what);
  const int n = j.contains("n") ? integer_field(j, "n", what) : 1;
  std::optional<double> mu;
  if (j.contains("mu")) {
    mu = number_field(j, "mu", what);
    if (!(*mu > 0.0)) config_error("domain: 'mu' must be positive");
  }
  if (n < 1) config_error("domain: 'n' must be positive");
  try {
    if (kind == "disk") {
      if (n != 1) config_error("domain: the disk has n = 1");
      return mu ? DomainModel::disk(*mu) : DomainModel::disk();
    }
    if (kind == "ball") return DomainModel::ball(n, mu);
    if (kind == "polydisk") return DomainModel::polydisk(n, mu);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    config_error(std::string("domain: ") + e.what());
  }
  config_error("domain: unknown kind '" + kind + "'");
}

Json to_json(const DomainModel& model) {
  return Json{{"kind", to_string(model.kind())}, {"n", model.dim()}, {"mu", model.mu()}};
}

Json point_to_json(const Point& z) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    out.push_back(z(i).real());
    out.push_back(z(i).imag());
  }
  return out;
}

Json to_json(const BalancedReport& report) {
  Json samples = Json::array();
  for (const auto& s : report.samples) {
    samples.push_back(Json{{"z", point_to_json(s.z)}, {"epsilon", s.epsilon}, {"orbit", s.orbit}});
  }
  return Json{{"lambda", report.lambda},
              {"lambda0", report.lambda0},
              {"is_balanced", report.is_balanced},
              {"at_threshold", report.at_threshold},
              {"mean_epsilon", report.mean_epsilon},
              {"max_rel_dev", report.max_rel_dev},
              {"tol", report.tol},
              {"truncation_degree", report.truncation_degree},
              {"reason", report.reason ? Json(*report.reason) : Json(nullptr)},
              {"samples", samples}};
}

Json to_json(const DiastasisReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back(Json{{"pair", v.pair_index}, {"value", v.value}, {"reason", v.reason}});
  }
  return Json{{"pair_count", report.pair_count},
              {"coincident_count", report.coincident_count},
              {"min_value", report.min_value},
              {"max_value", report.max_value},
              {"max_distinct_value", report.max_distinct_value},
              {"passed", report.passed()},
              {"violations", violations},
              {"values", report.values}};
}

Json to_json(const InjectivityReport& report) {
  return Json{{"pair_count", report.pair_count},
              {"skipped_pairs", report.skipped_pairs},
              {"min_separation", report.min_separation},
              {"max_value", report.max_value},
              {"passed", report.passed()},
              {"violations", report.violations}};
}

Json to_json(const DecayReport& report) {
  return Json{{"lambdas", report.lambdas},       {"E1", report.E1},
              {"E2", report.E2},                 {"slope_E1", report.slope_E1},
              {"slope_E2", report.slope_E2},     {"n_op", report.n_op},
              {"bracket_scale", report.bracket_scale}};
}

Json to_json(const SeparationReport& report) {
  return Json{{"separation", report.separation}, {"sigma_x1", report.sigma_x1},
              {"sigma_x2", report.sigma_x2},     {"gap", report.gap},
              {"expected_gap", report.expected_gap}};
}

Json lambda0_report(const RootSystemData& data) {
  data.validate();
  Json bounds = Json::array();
  for (int k = 0; k < data.r; ++k) bounds.push_back(nontriviality_bound(data, k).value());
  const ProjectiveRange range = projective_range_bounds(data);
  return Json{{"schema_version", kSchemaVersion},
              {"root_data", to_json(data)},
              {"lambda0", lambda0(data)},
              {"nontriviality_bounds", bounds},
              {"projective_c0", range.c0},
              {"projective_candidates", range.discrete_candidates}};
}

}  // namespace berezin
