// Command-line driver: viscous shock profiles, Evans-function contours,
// stability certificates, and table reproduction.
//
//   evanshock profile  --gamma 1.6667 --vplus 0.1
//   evanshock contour  --gamma 1.6667 --vplus 1e-3 --limiting
//   evanshock certify  --limiting --points 256
//   evanshock tables   --which 2 --gamma 1.6667 --vplus 1e-1 ... --vplus 1e-6
//   evanshock rouche   --gamma 1.5 --threshold 0.5
//
// A key=value config file can seed any run (--config FILE); flags override.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evanshock/report.hpp"

namespace {

void add_common(CLI::App* sub, evanshock::RunConfig& rc, std::string& config_path) {
  sub->add_option("--config", config_path, "key=value config file (flags override)");
  sub->add_flag("--limiting", rc.limiting, "use the infinite-Mach (pressureless) limiting system");
  sub->add_option("--gamma", rc.gamma, "adiabatic index (>= 1)");
  sub->add_option("--vplus", rc.v_plus, "right endstate v+ in (0,1]; repeatable where meaningful");
  sub->add_option("--centering", rc.centering, "profile centering: midpoint | paper_decay");
  sub->add_option("--lminus", rc.l_minus, "truncation length on the left");
  sub->add_option("--lplus", rc.l_plus, "truncation length on the right");
  sub->add_option("--profile-tol", rc.profile_tol, "profile evaluation tolerance");
  sub->add_option("--endpoint-tol", rc.endpoint_tol, "endpoint residual tolerance");
  sub->add_option("--rtol", rc.rtol, "integrator relative tolerance");
  sub->add_option("--atol", rc.atol, "integrator absolute tolerance");
  sub->add_option("--radius", rc.radius, "contour radius");
  sub->add_option("--points", rc.n_points, "contour sample count (>= 16)");
  sub->add_option("--indent", rc.indent_radius, "origin indentation radius");
  sub->add_option("--adjoint-scheme", rc.adjoint_scheme,
                  "kato_continuation | pointwise_eigenvector");
  sub->add_option("--minus-scheme", rc.minus_scheme, "kato_continuation | pointwise_eigenvector");
  sub->add_option("--out", rc.out_dir, "output directory root");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evans-function stability toolkit for isentropic viscous shocks"};
  app.require_subcommand(1);

  evanshock::RunConfig rc;
  std::string config_path;

  // Config files seed the defaults; command-line flags then override.
  try {
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config")
        for (const auto& [k, v] : evanshock::load_config_file(argv[i + 1]))
          evanshock::apply_config_kv(rc, k, v);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  auto* profile = app.add_subcommand("profile", "solve and export a shock profile");
  add_common(profile, rc, config_path);
  profile->add_option("--grid", rc.grid_points, "number of CSV sample points");

  auto* contour = app.add_subcommand("contour", "map the contour through D (and D0)");
  add_common(contour, rc, config_path);

  auto* certify = app.add_subcommand("certify", "winding-number stability certificate");
  add_common(certify, rc, config_path);
  certify->add_option("--max-refine", rc.max_refinements, "contour refinement budget");
  certify->add_flag("--compare", rc.compare, "also compare against D0 (Rouche transfer)");

  auto* tables = app.add_subcommand("tables", "reproduce the summary tables as CSV");
  add_common(tables, rc, config_path);
  tables->add_option("--which", rc.tables, "1 | 2 | both");
  tables->add_option("--gammas", rc.gamma_list, "gamma list for the Rouche table");
  tables->add_option("--threshold", rc.threshold, "Rouche threshold in (0,1)");
  tables->add_option("--search-lo", rc.search_lo, "v+ search interval, lower end");
  tables->add_option("--search-hi", rc.search_hi, "v+ search interval, upper end");
  tables->add_option("--search-tol", rc.search_tol, "relative bracket width target");

  auto* rouche = app.add_subcommand("rouche", "Rouche-threshold search over v+");
  add_common(rouche, rc, config_path);
  rouche->add_option("--threshold", rc.threshold, "Rouche threshold in (0,1)");
  rouche->add_option("--search-lo", rc.search_lo, "v+ search interval, lower end");
  rouche->add_option("--search-hi", rc.search_hi, "v+ search interval, upper end");
  rouche->add_option("--search-tol", rc.search_tol, "relative bracket width target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (profile->parsed()) {
      rc.command = "profile";
      if (!rc.limiting && rc.v_plus.empty())
        throw std::invalid_argument("profile: provide --vplus or --limiting");
      return evanshock::cmd_profile(rc);
    }
    if (contour->parsed()) {
      rc.command = "contour";
      if (!rc.limiting && rc.v_plus.empty())
        throw std::invalid_argument("contour: provide --vplus and/or --limiting");
      return evanshock::cmd_contour(rc);
    }
    if (certify->parsed()) {
      rc.command = "certify";
      if (!rc.limiting && rc.v_plus.empty())
        throw std::invalid_argument("certify: provide --vplus or --limiting");
      return evanshock::cmd_certify(rc);
    }
    if (tables->parsed()) {
      rc.command = "tables";
      if (rc.v_plus.empty()) rc.v_plus = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
      return evanshock::cmd_tables(rc);
    }
    rc.command = "rouche";
    return evanshock::cmd_rouche(rc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
