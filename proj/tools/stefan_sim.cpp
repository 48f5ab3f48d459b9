// Batch driver: one scenario per invocation.
#include <CLI11.hpp>
#include <iostream>

#include "stefan/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Similarity solutions of the one-phase melting problem with a boiling front"};
  stefan::cli::RunOptions options;
  std::string mode, out_dir, format;
  app.add_option("--config", options.config_path, "Scenario config (JSON)")->required();
  app.add_option("--mode", mode, "Override the config mode")
      ->check(CLI::IsMember({"vapor", "solve_flux", "solve_convective", "closed_form", "verify"}));
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "Profile table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--quiet", options.quiet, "Suppress the one-line summary on stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : stefan::cli::kExitConfig;
  }
  if (!mode.empty()) options.mode_override = mode;
  if (!out_dir.empty()) options.out_dir = out_dir;
  if (!format.empty()) options.format = format;
  try {
    options.threads = stefan::cli::threads_from_env();
  } catch (const stefan::Error& e) {
    std::cerr << "error [config]: " << e.what() << "\n";
    return stefan::cli::kExitConfig;
  }
  return stefan::cli::run(options, std::cout, std::cerr);
}
