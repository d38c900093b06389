#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "berezin/report.hpp"

namespace berezin {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitCheckFailed = 2;

inline constexpr int kDefaultQuadOrder = 64;

enum class CheckKind { Lambda0, Nontrivial, Balanced, Diastasis, Hereditary, Pullback, Star, Separation };

std::string_view to_string(CheckKind kind) noexcept;
std::optional<CheckKind> parse_check(std::string_view name) noexcept;

struct RunConfig {
  DomainModel domain = DomainModel::disk();
  std::vector<double> lambdas;
  /// Unique, in the order given.
  std::vector<CheckKind> checks;
  int samples = 50;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "berezin_out";
};

/// Required keys: domain, lambdas, checks. Optional: samples, tol, seed,
/// out_dir. Unknown keys, unknown or repeated check names, an empty check
/// list and nonpositive values throw Error{ConfigError}.
RunConfig parse_run_config(const Json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// BEREZIN_QUAD_ORDER if set (a positive integer), else the default.
int quad_order_from_env();

struct RunOptions {
  int quad_order = kDefaultQuadOrder;
  bool plots = false;
};

enum class CheckStatus { Passed, Failed, Skipped };
std::string_view to_string(CheckStatus status) noexcept;

struct CheckOutcome {
  CheckKind kind = CheckKind::Lambda0;
  CheckStatus status = CheckStatus::Skipped;
  Json report;
  /// Sample table mirrored as CSV; empty when the check has none.
  std::string csv;
  /// SVG figure, filled only when plots are requested.
  std::string svg;
};

struct RunResult {
  std::vector<CheckOutcome> checks;
  Json summary;
  bool certified = false;
  int exit_code = kExitOk;
};

/// Per-check tolerances used by the runner (the config `tol` drives balanced).
inline constexpr double kHereditaryTol = 1e-7;
inline constexpr double kPullbackTol = 1e-4;
inline constexpr double kSeparationTol = 1e-6;
inline constexpr double kStarMaxRadius = 0.5;

CheckOutcome run_check(CheckKind kind, const RunConfig& config, const RunOptions& options);

/// Certified iff balanced holds for every requested lambda >= lambda0 (at
/// least one such lambda), and diastasis, hereditary and pullback were run
/// and passed. Reads only the check reports.
bool certified_from(const std::vector<CheckOutcome>& checks, double lambda0);

/// Runs every check without touching the filesystem.
RunResult evaluate(const RunConfig& config, const RunOptions& options);

/// evaluate() then writes <check>.json, CSV mirrors, optional SVGs and
/// summary.json into config.out_dir.
RunResult run(const RunConfig& config, const RunOptions& options);

}  // namespace berezin
