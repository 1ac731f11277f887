#pragma once

#include <vector>

#include "hgf/grid.hpp"

namespace hgf {

/// Index/dilation pair for a dilated Hermite system h_{n,a} checked against a grid.
struct HermiteSpec {
  int max_index;
  double dilation;
  GridSpec grid;

  HermiteSpec(int max_index, double dilation, GridSpec grid);

  /// sqrt(2K+1) * sqrt(a): where h_{K,a} has essentially all of its mass.
  double effective_support() const;
};

/// n-th Hermite function via the normalized three-term recurrence, with
/// running rescaling so that large |x| degrades gracefully to 0 instead of
/// losing the recurrence to underflow of the Gaussian seed.
double eval_hermite(int n, double x);

/// h_0(x), ..., h_{count-1}(x) in one recurrence pass.
std::vector<double> eval_hermite_all(int count, double x);

/// h_{n,a}(x) = |a|^{-1/4} h_n(|a|^{-1/2} x).
double dilated_hermite(int n, double a, double x);

/// Effective support radius sqrt(2n+1) * sqrt(|a|) of h_{n,a}.
double hermite_support(int n, double a = 1.0);

/// ||x^2 h - h'' - (2n+1) h||_2 / ||h||_2 on interior grid points, with h''
/// from centered second differences.
double hermite_operator_residual(int n, const GridSpec& grid);

/// Scaled operator residual ||x^2 h - a^2 h'' - |a|(2n+1) h|| / ||h|| for h = h_{n,a}.
double scaled_hermite_operator_residual(int n, double a, const GridSpec& grid);

/// floor(1/(2|lambda|) - 1/2); equals -1 for |lambda| > 1.
int dlambda(double lambda);

}  // namespace hgf
