#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "exflat/cli/commands.hpp"

namespace {

int run(const std::string& command, const std::string& config_path, const std::string& out_dir, long long seed) {
  using namespace exflat;
  try {
    std::ifstream in(config_path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read configuration " + config_path);
    std::stringstream text;
    text << in.rdbuf();
    cli::RunConfig cfg = cli::parse_config(text.str());
    if (!out_dir.empty()) cfg.outputs.directory = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    const int code = cli::run_command(command, cfg);
    if (code == cli::exit_verification_failed) std::fprintf(stderr, "verification failed\n");
    return code;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::exit_invalid_input;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exceptional flat domains from Weierstrass data"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  long long seed = -1;
  std::string chosen;
  for (const char* name : {"generate", "verify", "catalogue", "compare", "ends"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides outputs.directory)");
    sub->add_option("--seed", seed, "seed for randomized sampling (overrides seed)")->check(CLI::NonNegativeNumber);
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exflat::cli::exit_invalid_input;
  }
  return run(chosen, config_path, out_dir, seed);
}
