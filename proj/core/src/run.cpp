#include "berezin/run.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "berezin/error.hpp"
#include "berezin/svg.hpp"

namespace berezin {
namespace {

constexpr std::array<std::pair<CheckKind, std::string_view>, 8> kCheckNames = {{
    {CheckKind::Lambda0, "lambda0"},
    {CheckKind::Nontrivial, "nontrivial"},
    {CheckKind::Balanced, "balanced"},
    {CheckKind::Diastasis, "diastasis"},
    {CheckKind::Hereditary, "hereditary"},
    {CheckKind::Pullback, "pullback"},
    {CheckKind::Star, "star"},
    {CheckKind::Separation, "separation"},
}};

constexpr std::array<double, 4> kStarLadder = {5.0, 10.0, 20.0, 40.0};

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent stream per (check, lambda index) so adding checks does not
// shift the samples of the others.
std::uint64_t derive_seed(std::uint64_t seed, CheckKind kind, std::size_t index) {
  return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(kind) << 32) + index));
}

std::vector<Point> sample_points(const DomainModel& model, int count, std::uint64_t seed,
                                 double max_radius = 0.9) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sample_interior(model, rng, max_radius));
  return out;
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) {
    os_ << std::setprecision(17);
    bool first = true;
    for (auto h : header) {
      os_ << (first ? "" : ",") << h;
      first = false;
    }
    os_ << '\n';
  }

  template <class... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((os_ << (first ? "" : ",") << values, first = false), ...);
    os_ << '\n';
  }

  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string point_text(const Point& z) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    os << (i ? " " : "") << z(i).real() << (z(i).imag() < 0 ? "" : "+") << z(i).imag() << 'i';
  }
  return os.str();
}

Json error_json(const Error& e) { return Json{{"kind", to_string(e.kind())}, {"message", e.what()}}; }

Json header(CheckKind kind) {
  return Json{{"schema_version", kSchemaVersion}, {"check", to_string(kind)}, {"status", nullptr}};
}

bool trivial_at(const DomainModel& model, double lambda) {
  return !is_nontrivial(model.metric_root_data(), lambda);
}

CheckOutcome check_lambda0(const RunConfig& config) {
  CheckOutcome out{CheckKind::Lambda0, CheckStatus::Passed, header(CheckKind::Lambda0), {}, {}};
  const DomainModel& model = config.domain;
  out.report["domain"] = to_json(model);
  out.report["lambda0"] = lambda0(model.metric_root_data());
  out.report["root_data"] = to_json(model.root_data());
  out.report["metric_root_data"] = to_json(model.metric_root_data());
  return out;
}

CheckOutcome check_nontrivial(const RunConfig& config) {
  CheckOutcome out{CheckKind::Nontrivial, CheckStatus::Passed, header(CheckKind::Nontrivial), {}, {}};
  const RootSystemData data = config.domain.metric_root_data();
  Json entries = Json::array();
  for (double lambda : config.lambdas) {
    const bool ok = is_nontrivial(data, lambda);
    if (!ok) out.status = CheckStatus::Failed;
    entries.push_back(Json{{"lambda", lambda}, {"nontrivial", ok}, {"at_threshold", at_threshold(data, lambda)}});
  }
  out.report["lambda0"] = lambda0(data);
  out.report["entries"] = entries;
  return out;
}

CheckOutcome check_balanced(const RunConfig& config, const RunOptions& options) {
  CheckOutcome out{CheckKind::Balanced, CheckStatus::Passed, header(CheckKind::Balanced), {}, {}};
  Csv csv({"lambda", "index", "orbit", "z", "epsilon"});
  Json reports = Json::array();
  std::vector<svg::Series> series;
  for (std::size_t i = 0; i < config.lambdas.size(); ++i) {
    BalancedOptions opts;
    opts.sample_count = config.samples;
    opts.tol = config.tol;
    opts.seed = derive_seed(config.seed, CheckKind::Balanced, i);
    const BalancedReport report = balanced_verdict(config.domain, config.lambdas[i], opts);
    if (!report.is_balanced) out.status = CheckStatus::Failed;
    reports.push_back(to_json(report));
    svg::Series s;
    std::ostringstream label;
    label << "lambda = " << config.lambdas[i];
    s.label = label.str();
    s.markers_only = true;
    for (std::size_t k = 0; k < report.samples.size(); ++k) {
      const auto& sample = report.samples[k];
      csv.row(config.lambdas[i], k, sample.orbit ? 1 : 0, point_text(sample.z), sample.epsilon);
      s.x.push_back(static_cast<double>(k));
      s.y.push_back(report.mean_epsilon > 0.0 ? sample.epsilon / report.mean_epsilon : sample.epsilon);
    }
    series.push_back(std::move(s));
  }
  out.report["reports"] = reports;
  out.csv = csv.str();
  if (options.plots) {
    out.svg = svg::render({"epsilon / mean(epsilon) per sample", "sample", "relative epsilon", false, false},
                          series);
  }
  return out;
}

CheckOutcome check_diastasis(const RunConfig& config) {
  CheckOutcome out{CheckKind::Diastasis, CheckStatus::Passed, header(CheckKind::Diastasis), {}, {}};
  const std::uint64_t seed = derive_seed(config.seed, CheckKind::Diastasis, 0);
  std::vector<PointPair> pairs = sample_pairs(config.domain, config.samples, seed);
  for (const auto& z : sample_points(config.domain, std::max(1, config.samples / 10), splitmix64(seed))) {
    pairs.emplace_back(z, z);
  }
  const DiastasisReport report = exp_neg_diastasis_check(config.domain, pairs);
  if (!report.passed()) out.status = CheckStatus::Failed;
  Csv csv({"pair", "x", "y", "exp_neg_diastasis"});
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    csv.row(k, point_text(pairs[k].first), point_text(pairs[k].second), report.values[k]);
  }
  out.report["report"] = to_json(report);
  out.csv = csv.str();
  return out;
}

CheckOutcome check_hereditary(const RunConfig& config) {
  CheckOutcome out{CheckKind::Hereditary, CheckStatus::Passed, header(CheckKind::Hereditary), {}, {}};
  Csv csv({"lambda", "pair", "residual"});
  Json entries = Json::array();
  bool any_ran = false;
  for (std::size_t i = 0; i < config.lambdas.size(); ++i) {
    const double lambda = config.lambdas[i];
    if (trivial_at(config.domain, lambda)) {
      entries.push_back(Json{{"lambda", lambda}, {"skipped", "TrivialSpace"}});
      continue;
    }
    any_ran = true;
    const BergmanBasis basis = BergmanBasis::for_radius(config.domain, lambda);
    const auto pairs = sample_pairs(config.domain, config.samples, derive_seed(config.seed, CheckKind::Hereditary, i));
    std::vector<double> residuals;
    double worst = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double r = hereditary_check(basis, pairs[k].first, pairs[k].second);
      residuals.push_back(r);
      worst = std::max(worst, r);
      csv.row(lambda, k, r);
    }
    const InjectivityReport injectivity = injectivity_sample(basis, pairs);
    const bool passed = worst < kHereditaryTol && injectivity.passed();
    if (!passed) out.status = CheckStatus::Failed;
    entries.push_back(Json{{"lambda", lambda},
                           {"truncation_degree", basis.degree()},
                           {"tol", kHereditaryTol},
                           {"max_residual", worst},
                           {"passed", passed},
                           {"injectivity", to_json(injectivity)},
                           {"residuals", residuals}});
  }
  if (!any_ran) out.status = CheckStatus::Failed;
  out.report["entries"] = entries;
  out.csv = csv.str();
  return out;
}

CheckOutcome check_pullback(const RunConfig& config) {
  CheckOutcome out{CheckKind::Pullback, CheckStatus::Passed, header(CheckKind::Pullback), {}, {}};
  Csv csv({"lambda", "point", "z", "max_residual"});
  Json entries = Json::array();
  bool any_ran = false;
  for (std::size_t i = 0; i < config.lambdas.size(); ++i) {
    const double lambda = config.lambdas[i];
    if (trivial_at(config.domain, lambda)) {
      entries.push_back(Json{{"lambda", lambda}, {"skipped", "TrivialSpace"}});
      continue;
    }
    any_ran = true;
    const BergmanBasis basis = BergmanBasis::for_radius(config.domain, lambda);
    const auto points = sample_points(config.domain, config.samples, derive_seed(config.seed, CheckKind::Pullback, i));
    std::vector<double> residuals;
    double worst = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const double r = pullback_check(basis, points[k]).maxCoeff();
      residuals.push_back(r);
      worst = std::max(worst, r);
      csv.row(lambda, k, point_text(points[k]), r);
    }
    const bool passed = worst < kPullbackTol;
    if (!passed) out.status = CheckStatus::Failed;
    entries.push_back(Json{{"lambda", lambda},
                           {"truncation_degree", basis.degree()},
                           {"tol", kPullbackTol},
                           {"max_residual", worst},
                           {"passed", passed},
                           {"residuals", residuals}});
  }
  if (!any_ran) out.status = CheckStatus::Failed;
  out.report["entries"] = entries;
  out.csv = csv.str();
  return out;
}

CheckOutcome skipped_for_model(CheckKind kind, const DomainModel& model) {
  CheckOutcome out{kind, CheckStatus::Skipped, header(kind), {}, {}};
  out.report["reason"] = "UnsupportedModel";
  out.report["detail"] = std::string("operator checks run on the disk; domain is ") + std::string(to_string(model.kind()));
  return out;
}

CheckOutcome check_star(const RunConfig& config, const RunOptions& options) {
  if (config.domain.kind() != DomainKind::Disk) return skipped_for_model(CheckKind::Star, config.domain);
  CheckOutcome out{CheckKind::Star, CheckStatus::Passed, header(CheckKind::Star), {}, {}};
  const DomainModel& model = config.domain;
  const auto samples = sample_points(model, config.samples, derive_seed(config.seed, CheckKind::Star, 0), kStarMaxRadius);
  RealSymbol f = [](const Point& z) { return z(0).real(); };
  RealSymbol g = [](const Point& z) { return z(0).imag(); };
  CorrespondenceOptions opts;
  opts.quad_order = options.quad_order;
  const std::vector<double> ladder(kStarLadder.begin(), kStarLadder.end());
  const DecayReport decay = correspondence_check(model, f, g, ladder, samples, opts);

  bool e2_decreasing = true;
  for (std::size_t i = 1; i < decay.E2.size(); ++i) e2_decreasing = e2_decreasing && decay.E2[i] < decay.E2[i - 1];
  const bool slope_ok = decay.slope_E1 >= 0.8 && decay.slope_E1 <= 1.2;
  const bool e2_ok = e2_decreasing && decay.E2.back() < decay.E2.front() / 4.0;

  // Algebra structure at the smallest ladder value.
  const QuantContext ctx = QuantContext::create(model, ladder.front(), kStarMaxRadius, options.quad_order);
  const Operator A = toeplitz_operator(ctx, f);
  const Operator B = toeplitz_operator(ctx, g);
  const Operator C = toeplitz_operator(ctx, [](const Point& z) { return std::norm(z(0)); });
  const Operator I = Operator::Identity(ctx.n_op(), ctx.n_op());
  double assoc = 0.0;
  double unital = 0.0;
  double commutator = 0.0;
  for (const auto& z : samples) {
    assoc = std::max(assoc, std::abs(covariant_symbol(ctx, (A * B) * C, z) - covariant_symbol(ctx, A * (B * C), z)));
    unital = std::max(unital, std::abs(star(ctx, I, A)(z) - covariant_symbol(ctx, A, z)));
    commutator = std::max(commutator, std::abs(covariant_symbol(ctx, A * B - B * A, z)));
  }
  const bool structure_ok = assoc < 1e-10 && unital < 1e-12 && commutator > 0.0;
  if (!(slope_ok && e2_ok && structure_ok)) out.status = CheckStatus::Failed;

  out.report["symbols"] = Json{{"f", "Re z"}, {"g", "Im z"}};
  out.report["decay"] = to_json(decay);
  out.report["slope_E1_in_range"] = slope_ok;
  out.report["E2_decay"] = e2_ok;
  out.report["structure"] = Json{{"lambda", ladder.front()},
                                 {"associativity_error", assoc},
                                 {"unit_error", unital},
                                 {"commutator_sup", commutator},
                                 {"passed", structure_ok}};
  out.report["note"] = "bracket_scale fixes the normalization of the Poisson bracket against the commutator";

  Csv csv({"lambda", "E1", "E2", "n_op"});
  for (std::size_t i = 0; i < decay.lambdas.size(); ++i) {
    csv.row(decay.lambdas[i], decay.E1[i], decay.E2[i], decay.n_op[i]);
  }
  out.csv = csv.str();
  if (options.plots) {
    out.svg = svg::render({"correspondence errors", "lambda", "error", true, true},
                          {{"E1", decay.lambdas, decay.E1, false}, {"E2", decay.lambdas, decay.E2, false}});
  }
  return out;
}

CheckOutcome check_separation(const RunConfig& config, const RunOptions& options) {
  if (config.domain.kind() != DomainKind::Disk) return skipped_for_model(CheckKind::Separation, config.domain);
  CheckOutcome out{CheckKind::Separation, CheckStatus::Passed, header(CheckKind::Separation), {}, {}};
  Csv csv({"lambda", "pair", "separation", "gap", "expected_gap"});
  Json entries = Json::array();
  bool any_ran = false;
  for (std::size_t i = 0; i < config.lambdas.size(); ++i) {
    const double lambda = config.lambdas[i];
    if (trivial_at(config.domain, lambda)) {
      entries.push_back(Json{{"lambda", lambda}, {"skipped", "TrivialSpace"}});
      continue;
    }
    any_ran = true;
    const QuantContext ctx = QuantContext::create(config.domain, lambda, 0.9, options.quad_order);
    const auto pairs = sample_pairs(config.domain, config.samples, derive_seed(config.seed, CheckKind::Separation, i));
    double min_gap = 1.0;
    double max_err = 0.0;
    std::size_t skipped = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((pairs[k].first - pairs[k].second).norm() < kMinSeparation) {
        ++skipped;
        continue;
      }
      const SeparationReport r = separation_check(ctx, pairs[k].first, pairs[k].second);
      min_gap = std::min(min_gap, r.gap);
      max_err = std::max(max_err, std::abs(r.gap - r.expected_gap));
      csv.row(lambda, k, r.separation, r.gap, r.expected_gap);
    }
    const bool passed = min_gap > 0.0 && max_err < kSeparationTol;
    if (!passed) out.status = CheckStatus::Failed;
    entries.push_back(Json{{"lambda", lambda},
                           {"n_op", ctx.n_op()},
                           {"min_gap", min_gap},
                           {"max_gap_error", max_err},
                           {"tol", kSeparationTol},
                           {"skipped_pairs", skipped},
                           {"passed", passed}});
  }
  if (!any_ran) out.status = CheckStatus::Failed;
  out.report["entries"] = entries;
  out.csv = csv.str();
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::ConfigError, "cannot write " + path.string());
  os << content;
  if (!os) throw Error(ErrorKind::ConfigError, "cannot write " + path.string());
}

}  // namespace

std::string_view to_string(CheckKind kind) noexcept {
  for (const auto& [k, name] : kCheckNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<CheckKind> parse_check(std::string_view name) noexcept {
  for (const auto& [k, n] : kCheckNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) config_error("run configuration must be a JSON object");
  static constexpr std::array<std::string_view, 7> kKeys = {"domain", "lambdas", "checks", "samples",
                                                            "tol",    "seed",    "out_dir"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) config_error("unknown key '" + key + "'");
  }
  for (const char* key : {"domain", "lambdas", "checks"}) {
    if (!j.contains(key)) config_error(std::string("missing '") + key + "'");
  }

  RunConfig config;
  config.domain = domain_from_json(j.at("domain"));

  const Json& lambdas = j.at("lambdas");
  if (!lambdas.is_array() || lambdas.empty()) config_error("'lambdas' must be a nonempty array");
  for (const auto& v : lambdas) {
    if (!v.is_number()) config_error("'lambdas' entries must be numbers");
    const double lambda = v.get<double>();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) config_error("'lambdas' entries must be positive");
    config.lambdas.push_back(lambda);
  }

  const Json& checks = j.at("checks");
  if (!checks.is_array()) config_error("'checks' must be an array");
  if (checks.empty()) config_error("'checks' is empty: nothing to run");
  for (const auto& v : checks) {
    if (!v.is_string()) config_error("'checks' entries must be strings");
    const auto name = v.get<std::string>();
    const auto kind = parse_check(name);
    if (!kind) config_error("unknown check '" + name + "'");
    if (std::find(config.checks.begin(), config.checks.end(), *kind) != config.checks.end()) {
      config_error("check '" + name + "' listed twice");
    }
    config.checks.push_back(*kind);
  }

  if (j.contains("samples")) {
    const Json& v = j.at("samples");
    if (!v.is_number_integer() || v.get<long long>() < 1) config_error("'samples' must be a positive integer");
    config.samples = v.get<int>();
  }
  if (j.contains("tol")) {
    const Json& v = j.at("tol");
    if (!v.is_number() || !(v.get<double>() > 0.0)) config_error("'tol' must be a positive number");
    config.tol = v.get<double>();
  }
  if (j.contains("seed")) {
    const Json& v = j.at("seed");
    if (!v.is_number_unsigned()) config_error("'seed' must be an unsigned integer");
    config.seed = v.get<std::uint64_t>();
  }
  if (j.contains("out_dir")) {
    const Json& v = j.at("out_dir");
    if (!v.is_string() || v.get<std::string>().empty()) config_error("'out_dir' must be a nonempty string");
    config.out_dir = v.get<std::string>();
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) config_error("cannot open config " + path.string());
  Json j;
  try {
    j = Json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    config_error("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

int quad_order_from_env() {
  const char* raw = std::getenv("BEREZIN_QUAD_ORDER");
  if (raw == nullptr || *raw == '\0') return kDefaultQuadOrder;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1 || value > 4096) {
    config_error(std::string("BEREZIN_QUAD_ORDER must be an integer in [1, 4096], got '") + raw + "'");
  }
  return static_cast<int>(value);
}

CheckOutcome run_check(CheckKind kind, const RunConfig& config, const RunOptions& options) {
  try {
    CheckOutcome out;
    switch (kind) {
      case CheckKind::Lambda0: out = check_lambda0(config); break;
      case CheckKind::Nontrivial: out = check_nontrivial(config); break;
      case CheckKind::Balanced: out = check_balanced(config, options); break;
      case CheckKind::Diastasis: out = check_diastasis(config); break;
      case CheckKind::Hereditary: out = check_hereditary(config); break;
      case CheckKind::Pullback: out = check_pullback(config); break;
      case CheckKind::Star: out = check_star(config, options); break;
      case CheckKind::Separation: out = check_separation(config, options); break;
    }
    out.report["status"] = to_string(out.status);
    return out;
  } catch (const Error& e) {
    CheckOutcome out{kind, CheckStatus::Failed, header(kind), {}, {}};
    out.report["status"] = to_string(out.status);
    out.report["error"] = error_json(e);
    return out;
  }
}

bool certified_from(const std::vector<CheckOutcome>& checks, double lambda0_value) {
  auto find = [&](CheckKind kind) -> const CheckOutcome* {
    for (const auto& c : checks) {
      if (c.kind == kind) return &c;
    }
    return nullptr;
  };
  for (CheckKind kind : {CheckKind::Diastasis, CheckKind::Hereditary, CheckKind::Pullback}) {
    const CheckOutcome* c = find(kind);
    if (c == nullptr || c->status != CheckStatus::Passed) return false;
  }
  const CheckOutcome* balanced = find(CheckKind::Balanced);
  if (balanced == nullptr || !balanced->report.contains("reports")) return false;
  int relevant = 0;
  for (const auto& r : balanced->report.at("reports")) {
    const double lambda = r.at("lambda").get<double>();
    const bool at_or_above = lambda >= lambda0_value || r.at("at_threshold").get<bool>();
    if (!at_or_above) continue;
    ++relevant;
    if (!r.at("is_balanced").get<bool>()) return false;
  }
  return relevant > 0;
}

RunResult evaluate(const RunConfig& config, const RunOptions& options) {
  RunResult result;
  for (CheckKind kind : config.checks) result.checks.push_back(run_check(kind, config, options));
  const double l0 = lambda0(config.domain.metric_root_data());
  result.certified = certified_from(result.checks, l0);
  bool failed = false;
  Json statuses = Json::array();
  for (const auto& c : result.checks) {
    failed = failed || c.status == CheckStatus::Failed;
    statuses.push_back(Json{{"check", to_string(c.kind)}, {"status", to_string(c.status)}});
  }
  result.exit_code = failed ? kExitCheckFailed : kExitOk;
  result.summary = Json{{"schema_version", kSchemaVersion},
                        {"domain", to_json(config.domain)},
                        {"lambdas", config.lambdas},
                        {"lambda0", l0},
                        {"samples", config.samples},
                        {"tol", config.tol},
                        {"seed", config.seed},
                        {"quad_order", options.quad_order},
                        {"checks", statuses},
                        {"berezin_quantization_certified", result.certified},
                        {"exit_code", result.exit_code}};
  return result;
}

RunResult run(const RunConfig& config, const RunOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) config_error("cannot create out_dir " + config.out_dir.string() + ": " + ec.message());
  RunResult result = evaluate(config, options);
  for (const auto& c : result.checks) {
    const std::string name(to_string(c.kind));
    write_file(config.out_dir / (name + ".json"), c.report.dump(2) + "\n");
    if (!c.csv.empty()) write_file(config.out_dir / (name + ".csv"), c.csv);
    if (!c.svg.empty()) write_file(config.out_dir / (name + ".svg"), c.svg);
  }
  write_file(config.out_dir / "summary.json", result.summary.dump(2) + "\n");
  return result;
}

}  // namespace berezin
