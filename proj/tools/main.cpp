#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hammerstein/hammerstein.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Overrides {
  std::string out_dir;
  int nodes = -1;
  long long seed = -1;
};

hammerstein::RunSpec load_spec(const std::string& cfg_path, const Overrides& ov) {
  hammerstein::RunSpec spec = hammerstein::parse_config(read_file(cfg_path));
  if (!ov.out_dir.empty()) spec.output_dir = ov.out_dir;
  if (ov.nodes >= 0) spec.n_nodes = ov.nodes;
  if (ov.seed >= 0) spec.seed = static_cast<std::uint64_t>(ov.seed);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Existence certificates and fixed points for Hammerstein integral "
               "equations on the real line"};
  app.require_subcommand(1);

  std::string cfg_path;
  Overrides ov;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", cfg_path, "run configuration file (key = value lines)")
        ->required();
    sub->add_option("--out", ov.out_dir, "output directory (overrides config)");
    sub->add_option("--nodes", ov.nodes, "grid node count (overrides config)");
    sub->add_option("--seed", ov.seed, "sampling seed (overrides config)");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "audit the hypotheses, compute spectral values and limits, emit the certificate");
  CLI::App* solve = app.add_subcommand("solve", "compute a fixed point by damped Picard iteration");
  CLI::App* spectral = app.add_subcommand("spectral", "spectral radii, brackets and M~ only");
  add_common(analyze);
  add_common(solve);
  add_common(spectral);

  CLI11_PARSE(app, argc, argv);

  try {
    const hammerstein::RunSpec spec = load_spec(cfg_path, ov);
    if (analyze->parsed()) return hammerstein::run_analyze(spec);
    if (solve->parsed()) return hammerstein::run_solve(spec);
    return hammerstein::run_spectral(spec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hammerstein::kExitError;
  }
}
