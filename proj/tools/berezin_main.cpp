// berezin: batch front-end for the quantization checks.
//
//   berezin run --config <path> [--plots]
//   berezin lambda0 --root-data <path>
//   berezin lambda0 --symmetric r=2,a=1,b=0
//
// Exit status: 0 all checks pass, 2 a check failed, 1 bad configuration.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "berezin/error.hpp"
#include "berezin/run.hpp"

namespace {

int run_command(const std::string& config_path, bool plots) {
  berezin::RunOptions options;
  options.quad_order = berezin::quad_order_from_env();
  options.plots = plots;
  const berezin::RunConfig config = berezin::load_run_config(config_path);
  const berezin::RunResult result = berezin::run(config, options);
  for (const auto& c : result.checks) {
    std::cout << std::left << std::setw(12) << berezin::to_string(c.kind) << berezin::to_string(c.status);
    if (c.report.contains("error")) std::cout << "  (" << c.report["error"]["kind"].get<std::string>() << ")";
    std::cout << '\n';
  }
  std::cout << "certified   " << (result.certified ? "true" : "false") << '\n';
  std::cout << "reports in  " << config.out_dir.string() << '\n';
  return result.exit_code;
}

int lambda0_command(const std::string& root_data_path, const std::string& symmetric) {
  berezin::RootSystemData data;
  if (!symmetric.empty()) {
    data = berezin::symmetric_root_data(berezin::parse_symmetric_params(symmetric));
  } else {
    std::ifstream is(root_data_path);
    if (!is) throw berezin::Error(berezin::ErrorKind::ConfigError, "cannot open " + root_data_path);
    berezin::Json j;
    try {
      j = berezin::Json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
      throw berezin::Error(berezin::ErrorKind::ConfigError, root_data_path + " is not valid JSON: " + e.what());
    }
    data = berezin::root_data_from_json(j);
  }
  std::cout << berezin::lambda0_report(data).dump(2) << '\n';
  return berezin::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berezin quantization checks for homogeneous bounded domains"};
  app.require_subcommand(1);

  std::string config_path;
  bool plots = false;
  auto* run = app.add_subcommand("run", "run the checks listed in a JSON config");
  run->add_option("--config", config_path, "run configuration (JSON)")->required();
  run->add_flag("--plots", plots, "also write SVG plots");

  std::string root_data_path;
  std::string symmetric;
  auto* l0 = app.add_subcommand("lambda0", "balanced threshold from root data");
  auto* from_file = l0->add_option("--root-data", root_data_path, "root data JSON {r, p, q, b, gamma}");
  auto* from_params = l0->add_option("--symmetric", symmetric, "symmetric domain parameters r=..,a=..,b=..");
  from_file->excludes(from_params);
  l0->require_option(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? berezin::kExitOk : berezin::kExitConfigError;
  }

  try {
    if (*run) return run_command(config_path, plots);
    return lambda0_command(root_data_path, symmetric);
  } catch (const berezin::Error& e) {
    std::cerr << "berezin: " << e.what() << '\n';
    return berezin::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "berezin: " << e.what() << '\n';
    return berezin::kExitConfigError;
  }
}
