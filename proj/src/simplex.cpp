#include "qcorr/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

struct Run {
  Vertex best;
  int iterations;
  bool converged;
};

Run run_simplex(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                double step, const SimplexOptions& opts, int budget) {
  const std::size_t n = x0.size();
  auto eval = [&](std::vector<double> x) {
    const double v = f(x);
    return Vertex{std::move(x), std::isfinite(v) ? v : HUGE_VAL};
  };

  std::vector<Vertex> s;
  s.reserve(n + 1);
  s.push_back(eval(x0));
  for (std::size_t k = 0; k < n; ++k) {
    auto x = x0;
    x[k] += step;
    s.push_back(eval(std::move(x)));
  }

  int it = 0;
  for (; it < budget; ++it) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

    double diam = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t k = 0; k < n; ++k) diam = std::max(diam, std::abs(s[v].x[k] - s[0].x[k]));
    }
    if (s[n].f - s[0].f <= opts.ftol && diam <= std::max(opts.xtol, 1e-3 * step)) {
      return {s[0], it, true};
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += s[v].x[k] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (s[n].x[k] - centroid[k]);
      return x;
    };

    Vertex refl = eval(along(-1.0));
    if (refl.f < s[0].f) {
      Vertex exp = eval(along(-2.0));
      s[n] = exp.f < refl.f ? std::move(exp) : std::move(refl);
      continue;
    }
    if (refl.f < s[n - 1].f) {
      s[n] = std::move(refl);
      continue;
    }
    Vertex con = refl.f < s[n].f ? eval(along(-0.5)) : eval(along(0.5));
    if (con.f < std::min(refl.f, s[n].f)) {
      s[n] = std::move(con);
      continue;
    }
    for (std::size_t v = 1; v <= n; ++v) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = s[0].x[k] + 0.5 * (s[v].x[k] - s[0].x[k]);
      s[v] = eval(std::move(x));
    }
  }
  const auto best = std::min_element(s.begin(), s.end(),
                                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  return {*best, it, false};
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, const SimplexOptions& opts) {
  if (x0.empty()) {
    const double v = f(x0);
    return {{}, v, 0, true};
  }
  Run first = run_simplex(f, std::move(x0), opts.initial_step, opts, opts.max_iters);
  int used = first.iterations;
  if (!first.converged || used >= opts.max_iters) {
    return {first.best.x, first.best.f, used, first.converged};
  }
  // One restart from the converged point with a fresh, smaller simplex.
  Run second = run_simplex(f, first.best.x, 0.1 * opts.initial_step, opts, opts.max_iters - used);
  used += second.iterations;
  const Run& best = second.best.f <= first.best.f ? second : first;
  return {best.best.x, best.best.f, used, second.converged};
}

}  // namespace qcorr
