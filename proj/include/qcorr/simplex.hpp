#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qcorr {

struct SimplexOptions {
  double ftol = 1e-8;      // stop when max - min over the simplex falls below this
  double xtol = 1e-10;     // ... and the simplex diameter falls below this
  int max_iters = 2000;
  double initial_step = 0.5;
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead minimization with the standard coefficients (1, 2, 0.5, 0.5).
/// On convergence the simplex is rebuilt once around the best vertex and the
/// search continues, which guards against premature collapse.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, const SimplexOptions& opts = {});

}  // namespace qcorr
