#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "hgf/lattice.hpp"

namespace oracle {

// Point on the boundary of [-1/2,1/2]^2 at perimeter coordinate s in [0,4).
inline std::array<double, 2> perimeter_point(double s) {
  s = std::fmod(std::fmod(s, 4.0) + 4.0, 4.0);
  const int edge = std::min(static_cast<int>(s), 3);
  const double u = s - edge - 0.5;
  switch (edge) {
    case 0: return {u, -0.5};
    case 1: return {0.5, u};
    case 2: return {-u, 0.5};
    default: return {-0.5, -u};
  }
}

inline double perimeter_coordinate(double x, double y) {
  if (y == -0.5) return x + 0.5;
  if (x == 0.5) return 1.0 + y + 0.5;
  if (y == 0.5) return 2.0 - x + 0.5;
  return 3.0 - y + 0.5;
}

// Sup of |Mz| over the box [-1/2,1/2]^2 by rejection sampling. Points are
// drawn in [-1,1]^2 and kept only if they land in the box; kept points are
// pushed radially to the box boundary (a convex function peaks there). The best
// sample is then polished by a shrinking-step hill climb along the boundary.
inline double sampled_box_norm(const hgf::LatticeMatrix& M, std::size_t samples,
                               std::mt19937_64& rng) {
  auto value = [&](double s) {
    const auto z = perimeter_point(s);
    const auto p = M.apply(z[0], z[1]);
    return std::hypot(p[0], p[1]);
  };
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double best = 0.0, best_s = 0.0;
  std::size_t accepted = 0;
  while (accepted < samples) {
    double x = u(rng), y = u(rng);
    if (std::abs(x) > 0.5 || std::abs(y) > 0.5) continue;
    ++accepted;
    const double scale = 0.5 / std::max({std::abs(x), std::abs(y), 1e-300});
    x = std::clamp(x * scale, -0.5, 0.5);
    y = std::clamp(y * scale, -0.5, 0.5);
    if (std::abs(x) > std::abs(y)) x = std::copysign(0.5, x);
    else y = std::copysign(0.5, y);
    const auto p = M.apply(x, y);
    const double v = std::hypot(p[0], p[1]);
    if (v > best) {
      best = v;
      best_s = perimeter_coordinate(x, y);
    }
  }
  for (double h = 1e-3; h > 1e-15;) {
    const double up = value(best_s + h), down = value(best_s - h);
    if (up > best && up >= down) {
      best = up;
      best_s += h;
    } else if (down > best) {
      best = down;
      best_s -= h;
    } else {
      h /= 2.0;
    }
  }
  return best;
}

inline hgf::LatticeMatrix random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (std::abs(a * d - b * c) > 1e-2) return {a, b, c, d};
  }
}

}  // namespace oracle
