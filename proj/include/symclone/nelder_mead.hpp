#pragma once

// Nelder-Mead downhill simplex for small dense problems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

namespace symclone {

template <std::size_t N>
struct SimplexOptions {
  double initial_step = 0.05;
  /// Converged once the simplex diameter is below x_tol and the objective
  /// spread over its vertices is below f_tol.
  double x_tol = 1e-10;
  double f_tol = 1e-14;
  int max_iterations = 20000;
};

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Minimizes f from `start`. Points where f returns +inf are treated as infeasible.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& start,
                             const SimplexOptions<N>& opts = {}) {
  using Point = std::array<double, N>;
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  std::array<Point, N + 1> pts;
  std::array<double, N + 1> vals;
  pts.fill(start);
  for (std::size_t i = 0; i < N; ++i) pts[i + 1][i] += opts.initial_step;
  for (std::size_t i = 0; i <= N; ++i) vals[i] = f(pts[i]);

  auto along = [](const Point& from, const Point& to, double s) {
    Point p;
    for (std::size_t d = 0; d < N; ++d) p[d] = from[d] + s * (to[d] - from[d]);
    return p;
  };

  SimplexResult<N> res;
  std::array<std::size_t, N + 1> order;
  for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[N - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= N; ++i)
      for (std::size_t d = 0; d < N; ++d)
        diameter = std::max(diameter, std::abs(pts[i][d] - pts[best][d]));
    if (diameter < opts.x_tol && vals[worst] - vals[best] < opts.f_tol) {
      res.converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < N; ++d) centroid[d] += pts[i][d] / static_cast<double>(N);
    }

    const Point reflected = along(centroid, pts[worst], -kReflect);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const Point expanded = along(centroid, pts[worst], -kExpand);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded, vals[worst] = fe;
      } else {
        pts[worst] = reflected, vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected, vals[worst] = fr;
      continue;
    }
    // Contract toward the better of the worst and reflected points.
    const bool outside = fr < vals[worst];
    const Point contracted = along(centroid, outside ? reflected : pts[worst], kContract);
    const double fc = f(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted, vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == best) continue;
      pts[i] = along(pts[best], pts[i], kShrink);
      vals[i] = f(pts[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  res.x = pts[best];
  res.value = vals[best];
  return res;
}

}  // namespace symclone
