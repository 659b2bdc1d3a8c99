#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "h1/cli.hpp"
#include "h1/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"h1verify: numerical checks on the first Heisenberg group"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file; sections match subcommands");

  h1::cli::RunConfig cfg;
  std::string out_path;
  bool no_timestamp = false;
  double mollify_eps = 0.0;

  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "sampling seed");
  app.add_flag("--strict", cfg.strict,
               "abort on module errors instead of recording failed rows");
  app.add_flag("--no-timestamp", no_timestamp,
               "omit wall-clock fields so identical configs give identical bytes");
  app.add_option("--resolution", cfg.resolution, "base quadrature resolution");

  auto* vk = app.add_subcommand(
      "verify-kernels", "fundamental-solution identities of the kernel ladder");
  vk->add_option("--points", cfg.points, "sample points per identity");

  auto* ph = app.add_subcommand(
      "pluriharmonic", "annihilation family of the fourth-order combination");
  ph->add_option("--points", cfg.points, "sample points per field");

  auto* wb =
      app.add_subcommand("webster", "conformal scalar-curvature examples");
  wb->add_option("--c2", cfg.c2_values, "exponential slopes c2")->delimiter(',');

  auto* dc = app.add_subcommand(
      "decay", "far-field decay of the compactly supported log potential");
  dc->add_option("--epsilon", cfg.bump_epsilon, "bump radius");
  dc->add_option("--radii", cfg.decay_radii, "sphere radii for the averages")->delimiter(',');

  auto* a1 = app.add_subcommand(
      "a1", "maximal-function estimates for gauge power weights");
  a1->add_option("--kappa", cfg.kappas, "gauge exponents kappa")->delimiter(',');
  a1->add_option("--stages", cfg.a1_stages, "refinement stages");

  app.add_subcommand("isoperimetric",
                     "weighted isoperimetric quotients and the relative check");

  auto* cx = app.add_subcommand(
      "counterexample", "unbounded weighted quotient along an annulus sweep");
  cx->add_option("--radii", cfg.growth_radii, "outer annulus radii")->delimiter(',');
  auto* mopt =
      cx->add_option("--mollify-epsilon", mollify_eps,
                     "also run the sweep with the mollified weight exp(4 u_eps)");

  // Global flags remain usable after the subcommand name.
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.with_wallclock = !no_timestamp;
  if (mopt->count() > 0) cfg.mollify_epsilon = mollify_eps;

  try {
    std::ofstream fout;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
      fout.open(out_path, std::ios::binary);
      if (!fout) throw h1::ConfigError("cannot open output path: " + out_path);
      os = &fout;
    }
    return h1::cli::run(cfg, *os, std::cerr);
  } catch (const h1::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
