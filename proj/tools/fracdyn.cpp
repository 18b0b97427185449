#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fracdyn/error.hpp"
#include "fracdyn/scenario.hpp"
#include "fracdyn/selfcheck.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigFailure = 1;
constexpr int kNumericalFailure = 2;

int run_one(fracdyn::ScenarioConfig config, const std::optional<std::string>& out_dir,
            std::optional<std::uint64_t> seed, std::ostream& log) {
  if (seed) config.seed = *seed;
  std::optional<std::filesystem::path> dir;
  if (out_dir) dir = *out_dir;
  const auto result = fracdyn::run(config, dir);
  for (const auto& f : result.files) log << "wrote " << f.string() << '\n';
  return kOk;
}

// Maps exceptions onto the documented exit codes.
template <class F>
int guarded(const std::string& label, F&& body) {
  try {
    return body();
  } catch (const fracdyn::ConfigError& e) {
    std::cerr << "fracdyn: " << label << ": config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fracdyn: " << label << ": config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::exception& e) {
    std::cerr << "fracdyn: " << label << ": numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-order fractional dynamic system simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(FRACDYN_VERSION));

  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;

  auto* run_cmd = app.add_subcommand("run", "Run one or more JSON scenario configs");
  std::vector<std::string> configs;
  unsigned jobs = 1;
  run_cmd->add_option("configs", configs, "Scenario config files")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--jobs,-j", jobs, "Run independent configs concurrently")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out_dir, "Directory prepended to each output prefix");
  run_cmd->add_option("--seed", seed, "Seed for synthetic-noise scenarios");

  auto* preset_cmd = app.add_subcommand("preset", "Run a built-in scenario");
  std::string preset_name;
  preset_cmd->add_option("name", preset_name, "case1, case2, or fractor-demo")
      ->required()
      ->check(CLI::IsMember(fracdyn::preset_names()));
  preset_cmd->add_option("--out", out_dir, "Output directory");
  preset_cmd->add_option("--seed", seed, "Seed for synthetic-noise scenarios");

  auto* check_cmd = app.add_subcommand("check", "Run the built-in oracle self-tests");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigFailure;
  }

  if (*run_cmd) {
    if (jobs <= 1 || configs.size() == 1) {
      int status = kOk;
      for (const auto& path : configs) {
        status = std::max(status, guarded(path, [&] {
          return run_one(fracdyn::load_config(path), out_dir, seed, std::cout);
        }));
      }
      return status;
    }
    // Batch mode: independent configs share nothing but stdout, which is
    // buffered per job and flushed in input order.
    std::vector<std::future<std::pair<int, std::string>>> pending;
    std::size_t next = 0;
    int status = kOk;
    while (next < configs.size() || !pending.empty()) {
      while (next < configs.size() && pending.size() < jobs) {
        const std::string path = configs[next++];
        pending.push_back(std::async(std::launch::async, [path, &out_dir, &seed] {
          std::ostringstream log;
          const int code = guarded(path, [&] { return run_one(fracdyn::load_config(path), out_dir, seed, log); });
          return std::make_pair(code, log.str());
        }));
      }
      auto done = pending.front().get();
      pending.erase(pending.begin());
      std::cout << done.second;
      status = std::max(status, done.first);
    }
    return status;
  }

  if (*preset_cmd) {
    return guarded(preset_name, [&] { return run_one(fracdyn::preset(preset_name), out_dir, seed, std::cout); });
  }

  if (*check_cmd) {
    return guarded("check", [] {
      bool all = true;
      for (const auto& r : fracdyn::run_self_checks()) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        all = all && r.passed;
      }
      return all ? kOk : kNumericalFailure;
    });
  }
  return kOk;
}
