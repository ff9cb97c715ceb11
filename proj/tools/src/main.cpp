#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rootstack/errors.hpp"
#include "rootstack_cli/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = rootstack::cli;

  CLI::App app{"Genus-zero Gromov-Witten invariants of root stacks and log pairs"};
  std::string config_path;
  std::string command;
  std::optional<int> cap;
  std::string roots;
  std::string format;
  std::string out_path;
  std::string kind;
  std::string laurent;
  std::optional<int> m;
  std::optional<int> x_degree;

  app.add_option("--config", config_path, "JSON job configuration");
  app.add_option("--command", command,
                 "ifunction | invariants | stabilize | check-identity | period | compare-periods | "
                 "laurent-period");
  app.add_option("--cap", cap, "anticanonical degree cap (overrides the config)");
  app.add_option("--roots", roots, "root orders, e.g. \"3,5\" or \"3,5;5,7\"");
  app.add_option("--format", format, "table | records");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--kind", kind, "series flavour for ifunction/invariants, or \"extended\" for stabilize");
  app.add_option("--laurent", laurent, "Laurent polynomial for laurent-period, e.g. \"x + y + x^-1*y^-1\"");
  app.add_option("-m,--m", m, "largest contact order of the extended data");
  app.add_option("--x-degree", x_degree, "total x-degree bound for extended series");
  CLI11_PARSE(app, argc, argv);

  cli::JobConfig config;
  try {
    if (!config_path.empty()) config = cli::load_config(config_path);
    if (!command.empty()) config.command = cli::parse_command(command);
    if (!format.empty()) config.format = cli::parse_format(format);
    if (cap) config.cap = *cap;
    if (m) config.m = *m;
    if (x_degree) config.x_degree = *x_degree;
    if (!roots.empty()) config.root_list = cli::parse_root_list(roots);
    if (!kind.empty()) config.kind = kind;
    if (!laurent.empty()) config.laurent = laurent;
    if (config_path.empty() && config.command != cli::Command::laurent_period) {
      throw rootstack::ConfigError("--config is required for " + cli::to_string(config.command));
    }
  } catch (const rootstack::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kFail;
  }

  cli::Report report = cli::run(config);
  if (out_path.empty()) {
    std::cout << report.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << report.output;
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return cli::kFail;
    }
  }
  if (!report.diagnostic.empty()) std::cerr << "error: " << report.diagnostic << '\n';
  return report.status;
}
