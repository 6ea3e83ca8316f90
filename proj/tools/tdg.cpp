// tdg: command line driver for the space-time Trefftz DG experiments.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trefftz/config.hpp"
#include "trefftz/error.hpp"
#include "trefftz/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  bool quiet = false;
};

trefftz::ExperimentConfig resolve(const Options& opt) {
  auto cfg = opt.config_path.empty() ? trefftz::ExperimentConfig{} : trefftz::load_config(opt.config_path);
  for (const auto& o : opt.overrides) trefftz::apply_override(cfg, o);
  if (!opt.output_dir.empty()) cfg.output_dir = opt.output_dir;
  return cfg;
}

int do_validate(const Options& opt) {
  const auto cfg = resolve(opt);
  const auto diag = trefftz::validate(cfg);
  for (const auto& d : diag) std::cout << d << '\n';
  if (diag.empty()) std::cout << "ok\n";
  return diag.empty() ? kOk : kConfigError;
}

int do_run(const Options& opt, const std::string& kind) {
  auto cfg = resolve(opt);
  if (!kind.empty()) cfg.experiment = kind;
  const auto diag = trefftz::validate(cfg);
  if (!diag.empty()) {
    for (const auto& d : diag) std::cerr << "config: " << d << '\n';
    return kConfigError;
  }
  const auto out = trefftz::run_experiment(cfg, opt.quiet ? nullptr : &std::cerr);
  for (const auto& s : out.summary) std::cout << s << '\n';
  for (const auto& a : out.artifacts) std::cout << "wrote " << a << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time Trefftz DG solver for the 1D Maxwell system"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("config", opt.config_path, "Configuration file")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", opt.overrides, "Override a key: section.key=value")->take_all();
    sub->add_option("-o,--output-dir", opt.output_dir, "Output directory");
    sub->add_flag("-q,--quiet", opt.quiet, "No progress output");
  };

  struct Entry {
    const char* name;
    const char* kind;
    const char* help;
  };
  const Entry entries[] = {
      {"run", "", "Run the experiment named by experiment.kind"},
      {"sweep-h", "sweep_h", "Mesh refinement study"},
      {"sweep-p", "sweep_p", "Polynomial degree study"},
      {"sweep-flux", "sweep_flux", "Flux parameter grid"},
      {"spectrum", "spectrum", "Eigenvalues and conditioning of the update matrix"},
      {"energy", "energy", "Discrete energy audit"},
  };
  std::string chosen_kind;
  bool run_requested = false;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub);
    sub->callback([&chosen_kind, &run_requested, kind = std::string(e.kind)] {
      chosen_kind = kind;
      run_requested = true;
    });
  }
  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration and list every problem");
  add_common(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (validate_cmd->parsed()) return do_validate(opt);
    if (run_requested) return do_run(opt, chosen_kind);
  } catch (const trefftz::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return trefftz::is_config_error(e.code()) ? kConfigError : kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  return kOk;
}
