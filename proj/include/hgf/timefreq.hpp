#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hgf/grid.hpp"

namespace hgf {

using cplx = std::complex<double>;

/// A time-frequency shift gamma = (time, freq), acting as T_time M_freq.
struct TFPoint {
  double time = 0.0;
  double freq = 0.0;
};

/// coef * e^{2 pi i freq (x - shift)} * h_{index, dilation}(x - shift).
///
/// This is exactly the form T_shift M_freq (coef' h_{n,a}) takes, so shifted
/// and dilated atoms stay closed-form and are never interpolated.
struct HermiteAtom {
  cplx coef{1.0, 0.0};
  int index = 0;
  double dilation = 1.0;
  double shift = 0.0;
  double freq = 0.0;

  cplx operator()(double x) const;
  /// Furthest point from the origin carrying non-negligible mass.
  double reach() const;
  /// Half-bandwidth around freq.
  double bandwidth() const;
};

/// Finite linear combination of Hermite atoms.
using AnalyticComponent = std::vector<HermiteAtom>;

cplx evaluate(const AnalyticComponent& c, double x);

/// Vector-valued signal sampled on a grid. Hermite-backed signals also carry
/// their closed form in `source`, which every operator re-evaluates.
struct SampledSignal {
  GridSpec grid;
  std::vector<std::vector<cplx>> components;
  std::vector<AnalyticComponent> source;
  std::vector<std::string> warnings;

  bool analytic() const { return !source.empty(); }
  std::size_t component_count() const { return components.size(); }
};

/// Samples the closed-form components on the grid.
SampledSignal sample(const GridSpec& grid, std::vector<AnalyticComponent> components);

/// Window f = (f_0, ..., f_d) of Hermite-backed components on a grid.
class VectorWindow {
 public:
  VectorWindow(GridSpec grid, std::vector<AnalyticComponent> components);

  const GridSpec& grid() const { return samples_.grid; }
  const std::vector<AnalyticComponent>& components() const { return samples_.source; }
  const SampledSignal& samples() const { return samples_; }
  std::size_t component_count() const { return samples_.components.size(); }
  /// Largest Hermite index over all atoms.
  int max_index() const;
  double reach() const;
  double bandwidth() const;

 private:
  SampledSignal samples_;
};

/// h^d = (h_0, ..., h_d).
VectorWindow hermite_window(int d, const GridSpec& grid);
/// Component i = h_{indices[i], dilation}.
VectorWindow hermite_window(const std::vector<int>& indices, const GridSpec& grid,
                            double dilation = 1.0);

/// T_{gamma.time} M_{gamma.freq} applied to each window component, evaluated
/// analytically at the grid points.
SampledSignal tf_shift_window(const VectorWindow& w, TFPoint gamma);

SampledSignal translate(const SampledSignal& f, double y);
SampledSignal modulate(const SampledSignal& f, double xi);
SampledSignal tf_shift(const SampledSignal& f, TFPoint gamma);

/// Delta * sum_j sum_i f_i(x_j) conj(g_i(x_j)).
cplx inner(const SampledSignal& f, const SampledSignal& g);
double norm(const SampledSignal& f);

/// D_a f(x) = |a|^{-1/2} f(x/|a|).
SampledSignal dilate(const SampledSignal& f, double a);

/// Symmetric axis {k*step : |k| <= round(half_width/step)}.
struct Axis {
  double half_width;
  double step;

  int half_count() const;
  std::size_t size() const { return static_cast<std::size_t>(2 * half_count() + 1); }
  std::vector<double> points() const;
};

struct Region {
  Axis x;
  Axis xi;

  /// [-L, L]^2 with L = sqrt(2d+1) + 8 and step 1/16.
  static Region default_for(int d);
};

/// Complex field on a product of uniform axes; rows index x, columns xi.
struct SampledField {
  std::vector<double> x_axis;
  std::vector<double> xi_axis;
  Eigen::MatrixXcd values;

  double x_step() const;
  double xi_step() const;
  bool same_axes(const SampledField& o) const;
  /// Riemann-sum L^2 norm.
  double l2_norm() const;
};

/// Grid needed to evaluate stft/ambiguity of a window of `max_index` over `region`.
GridSpec grid_for_region(int max_index, const Region& region, double step = 1.0 / 32.0);

/// V_f g(x, xi) = <g, T_x M_xi f> sampled over the region.
SampledField stft(const VectorWindow& window, const SampledSignal& g, const Region& region);

/// CSV rows "x,xi,re,im" with a header line.
void write_field_csv(const SampledField& field, std::ostream& os);
/// "TFFIELD1" magic, uint32 nx, uint32 nxi (little endian), then the x axis,
/// the xi axis, all real parts and all imaginary parts as float64, x-major.
void write_field_binary(const SampledField& field, std::ostream& os);
SampledField read_field_binary(std::istream& is);

}  // namespace hgf
