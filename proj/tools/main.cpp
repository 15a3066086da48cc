#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"

#include "divlat/commands.hpp"

namespace {

int finish(const divlat::CommandResult& res, const std::string& output_path) {
  if (!res.error.empty()) std::fprintf(stderr, "%s\n", res.error.c_str());
  if (res.output.empty()) return res.exit_code;
  if (output_path.empty()) {
    std::fputs(res.output.c_str(), stdout);
  } else {
    std::ofstream out(output_path);
    if (!out) {
      std::fprintf(stderr, "cannot write %s\n", output_path.c_str());
      return 1;
    }
    out << res.output;
  }
  return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"discriminant bounds and space-time lattice codes for central "
               "division algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output_path;
  divlat::QuadratureConfig cfg;
  app.add_option("--output", output_path, "write the report to this file");
  app.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
  app.add_option("--upper-cut", cfg.upper_cut, "integrand support cutoff");
  app.add_option("--series-tol", cfg.series_tol, "series tail tolerance");

  int case_id = 1, r1 = 0, r2 = 1, n = 2, d = 2, n_r = 1;
  double y0 = 2.0, y = -1.0, radius = 3.0;
  bool naive = false;
  std::string fields_path, algebra_path, rho_grid = "10:40:5";

  CLI::App* tables = app.add_subcommand(
      "tables", "prime-power pair tables for the three bound cases");
  tables->add_option("--case", case_id, "bound case")->required();
  tables->add_option("--y0", y0, "series parameter, 0.1 or 2")->required();

  CLI::App* bound = app.add_subcommand(
      "bound", "discriminant lower bound for one algebra signature");
  bound->add_option("--case", case_id, "bound case");
  bound->add_option("--r1", r1, "real places of the center");
  bound->add_option("--r2", r2, "complex places of the center");
  bound->add_option("--n", n, "algebra degree");
  bound->add_option("--y0", y0, "series parameter, 0.1 or 2");
  bound->add_option("--y", y, "explicit base-term parameter y <= y0");
  bound->add_flag("--naive", naive, "field-discriminant-only comparison row");
  bound->add_option("--d", d, "center degree for --naive");

  CLI::App* search = app.add_subcommand(
      "search", "rank centers in a field table by smallest algebra "
                "discriminant");
  search->add_option("--fields", fields_path, "field table JSON")->required();
  search->add_option("--n", n, "algebra degree")->required();

  CLI::App* code = app.add_subcommand(
      "code", "order-lattice code report for a cyclic division algebra");
  code->add_option("--algebra", algebra_path, "algebra spec JSON")->required();
  code->add_option("--radius", radius, "enumeration radius")->required();

  CLI::App* pep = app.add_subcommand(
      "pep", "pairwise-error union bounds over an SNR sweep");
  pep->add_option("--code", algebra_path, "algebra spec JSON")->required();
  pep->add_option("--radius", radius, "shaping radius")->required();
  pep->add_option("--rho-grid", rho_grid, "dB sweep lo:hi:step");
  pep->add_option("--nr", n_r, "receive antennas");

  CLI11_PARSE(app, argc, argv);

  divlat::CommandResult res;
  if (app.got_subcommand(tables)) {
    res = divlat::cmd_tables(case_id, y0);
  } else if (app.got_subcommand(bound)) {
    res = naive ? divlat::cmd_naive_bound(d, n, cfg)
                : divlat::cmd_bound(case_id, r1, r2, n, y0, y, cfg);
  } else if (app.got_subcommand(search)) {
    res = divlat::cmd_search(fields_path, n);
  } else if (app.got_subcommand(code)) {
    res = divlat::cmd_code(algebra_path, radius);
  } else {
    res = divlat::cmd_pep(algebra_path, radius, rho_grid, n_r);
  }
  return finish(res, output_path);
}
