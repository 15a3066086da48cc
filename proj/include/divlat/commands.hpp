#pragma once

#include <string>

#include "divlat/kernels.hpp"

namespace divlat {

struct CommandResult {
  int exit_code = 0;
  std::string output; // report body, CSV or JSON
  std::string error;  // diagnostic on failure
};

// Existing paths pass through; otherwise DIVLAT_DATA_DIR is tried as a base.
std::string resolve_data_path(const std::string& path);

CommandResult cmd_tables(int case_id, double y0);

// y <= 0 selects the sharpened route with a fall back to the plain bound
// evaluated at y = y0 when the optimum lies right of y0.
CommandResult cmd_bound(int case_id, int r1, int r2, int n, double y0,
                        double y, const QuadratureConfig& cfg = {});

CommandResult cmd_naive_bound(int d, int n,
                              const QuadratureConfig& cfg = {});

CommandResult cmd_search(const std::string& fields_path, int n);

CommandResult cmd_code(const std::string& algebra_path, double radius);

// rho_grid "a:b:s" is a dB sweep, inclusive; rho = 10^{dB/10}.
CommandResult cmd_pep(const std::string& algebra_path, double radius,
                      const std::string& rho_grid, int n_r);

} // namespace divlat
