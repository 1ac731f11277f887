#include "hgf/timefreq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

#include "hgf/error.hpp"
#include "hgf/hermite.hpp"

namespace hgf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSupportMargin = 6.0;

cplx unit_phase(double turns) { return std::polar(1.0, kTwoPi * turns); }

void check_frequency(const GridSpec& grid, const AnalyticComponent& c) {
  for (const auto& a : c) {
    require(std::abs(a.freq) + a.bandwidth() + 1.0 <= 1.0 / (2.0 * grid.step()),
            "Nyquist guard violated for a component at frequency " + std::to_string(a.freq));
  }
}

double component_reach(const AnalyticComponent& c) {
  double r = 0.0;
  for (const auto& a : c) r = std::max(r, a.reach());
  return r;
}

// Rejects overflow past the grid, warns when the tail margin gets thin.
void check_support(SampledSignal& s) {
  double reach = 0.0;
  for (const auto& c : s.source) reach = std::max(reach, component_reach(c));
  require(reach <= s.grid.half_width(),
          "support overflow: signal reaches " + std::to_string(reach) + " on a grid of half width " +
              std::to_string(s.grid.half_width()));
  if (s.grid.half_width() - reach < kSupportMargin) {
    s.warnings.push_back("support margin " + std::to_string(s.grid.half_width() - reach) +
                         " is below " + std::to_string(kSupportMargin) + " time units");
  }
}

SampledSignal map_atoms(const SampledSignal& f, const auto& fn) {
  require(f.analytic(), "operation requires a Hermite-backed signal");
  std::vector<AnalyticComponent> out = f.source;
  for (auto& c : out)
    for (auto& a : c) fn(a);
  SampledSignal s = sample(f.grid, std::move(out));
  s.warnings.insert(s.warnings.begin(), f.warnings.begin(), f.warnings.end());
  return s;
}

}  // namespace

cplx HermiteAtom::operator()(double x) const {
  const double u = x - shift;
  const double h = dilated_hermite(index, dilation, u);
  if (h == 0.0) return {0.0, 0.0};
  return coef * h * (freq == 0.0 ? cplx{1.0, 0.0} : unit_phase(freq * u));
}

double HermiteAtom::reach() const { return std::abs(shift) + hermite_support(index, dilation); }

double HermiteAtom::bandwidth() const {
  return std::sqrt(2.0 * index + 1.0) / (kTwoPi * std::sqrt(std::abs(dilation)));
}

cplx evaluate(const AnalyticComponent& c, double x) {
  cplx v{0.0, 0.0};
  for (const auto& a : c) v += a(x);
  return v;
}

SampledSignal sample(const GridSpec& grid, std::vector<AnalyticComponent> components) {
  SampledSignal s{grid, {}, std::move(components), {}};
  const std::size_t N = grid.count();
  s.components.reserve(s.source.size());
  for (const auto& c : s.source) {
    std::vector<cplx> v(N);
    for (std::size_t j = 0; j < N; ++j) v[j] = evaluate(c, grid.point(j));
    s.components.push_back(std::move(v));
  }
  return s;
}

VectorWindow::VectorWindow(GridSpec grid, std::vector<AnalyticComponent> components)
    : samples_{grid, {}, {}, {}} {
  require(!components.empty(), "a window needs at least one component");
  for (const auto& c : components) {
    require(!c.empty(), "window components must be nonzero");
    for (const auto& a : c) {
      require(a.index >= 0, "Hermite index must be nonnegative");
      require(a.dilation > 0.0, "atom dilation must be positive");
    }
    check_frequency(grid, c);
    require(component_reach(c) + kSupportMargin <= grid.half_width(),
            "grid capacity too small for window component (reach " +
                std::to_string(component_reach(c)) + ", half width " +
                std::to_string(grid.half_width()) + ")");
  }
  samples_ = sample(grid, std::move(components));
}

int VectorWindow::max_index() const {
  int n = 0;
  for (const auto& c : components())
    for (const auto& a : c) n = std::max(n, a.index);
  return n;
}

double VectorWindow::reach() const {
  double r = 0.0;
  for (const auto& c : components()) r = std::max(r, component_reach(c));
  return r;
}

double VectorWindow::bandwidth() const {
  double b = 0.0;
  for (const auto& c : components())
    for (const auto& a : c) b = std::max(b, std::abs(a.freq) + a.bandwidth());
  return b;
}

VectorWindow hermite_window(const std::vector<int>& indices, const GridSpec& grid,
                            double dilation) {
  std::vector<AnalyticComponent> comps;
  comps.reserve(indices.size());
  for (int n : indices) {
    HermiteAtom a;
    a.index = n;
    a.dilation = dilation;
    comps.push_back({a});
  }
  return VectorWindow(grid, std::move(comps));
}

VectorWindow hermite_window(int d, const GridSpec& grid) {
  require(d >= 0, "window degree must be nonnegative");
  std::vector<int> idx(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) idx[static_cast<std::size_t>(i)] = i;
  return hermite_window(idx, grid);
}

SampledSignal translate(const SampledSignal& f, double y) {
  auto s = map_atoms(f, [y](HermiteAtom& a) { a.shift += y; });
  check_support(s);
  return s;
}

SampledSignal modulate(const SampledSignal& f, double xi) {
  auto s = map_atoms(f, [xi](HermiteAtom& a) {
    a.coef *= unit_phase(xi * a.shift);
    a.freq += xi;
  });
  for (const auto& c : s.source) check_frequency(s.grid, c);
  return s;
}

SampledSignal tf_shift(const SampledSignal& f, TFPoint gamma) {
  auto s = map_atoms(f, [gamma](HermiteAtom& a) {
    a.coef *= unit_phase(gamma.freq * a.shift);
    a.freq += gamma.freq;
    a.shift += gamma.time;
  });
  for (const auto& c : s.source) check_frequency(s.grid, c);
  check_support(s);
  return s;
}

SampledSignal tf_shift_window(const VectorWindow& w, TFPoint gamma) {
  return tf_shift(w.samples(), gamma);
}

cplx inner(const SampledSignal& f, const SampledSignal& g) {
  require(f.grid == g.grid, "inner product of signals on different grids");
  require(f.component_count() == g.component_count(),
          "inner product of signals with different component counts");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    const auto& a = f.components[i];
    const auto& b = g.components[i];
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]);
  }
  return acc * f.grid.step();
}

double norm(const SampledSignal& f) { return std::sqrt(std::max(inner(f, f).real(), 0.0)); }

SampledSignal dilate(const SampledSignal& f, double a) {
  require(a != 0.0 && std::isfinite(a), "dilation must be nonzero");
  const double b = std::abs(a);
  if (f.analytic()) {
    auto s = map_atoms(f, [b](HermiteAtom& at) {
      at.dilation *= b * b;
      at.shift *= b;
      at.freq /= b;
    });
    check_support(s);
    for (const auto& c : s.source) check_frequency(s.grid, c);
    return s;
  }
  // Band-limited (Whittaker-Shannon) resampling of |a|^{-1/2} f(x/|a|).
  const GridSpec& g = f.grid;
  const std::size_t N = g.count();
  const double h = g.step();
  SampledSignal s{g, {}, {}, f.warnings};
  const double scale = 1.0 / std::sqrt(b);
  for (const auto& comp : f.components) {
    std::vector<cplx> out(N);
    for (std::size_t j = 0; j < N; ++j) {
      const double t = g.point(j) / b;
      if (t < g.point(0) - h || t > g.point(N - 1) + h) continue;
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < N; ++k) {
        const double u = (t - g.point(k)) / h;
        const double sinc = u == 0.0 ? 1.0 : std::sin(std::numbers::pi * u) / (std::numbers::pi * u);
        acc += comp[k] * sinc;
      }
      out[j] = scale * acc;
    }
    s.components.push_back(std::move(out));
  }
  return s;
}

int Axis::half_count() const {
  require(step > 0.0 && half_width >= 0.0, "axis needs a positive step");
  return static_cast<int>(std::lround(half_width / step));
}

std::vector<double> Axis::points() const {
  const int n = half_count();
  std::vector<double> p;
  p.reserve(size());
  for (int k = -n; k <= n; ++k) p.push_back(k * step);
  return p;
}

Region Region::default_for(int d) {
  const double L = std::sqrt(2.0 * d + 1.0) + 8.0;
  return {{L, 1.0 / 16.0}, {L, 1.0 / 16.0}};
}

double SampledField::x_step() const { return x_axis.size() > 1 ? x_axis[1] - x_axis[0] : 1.0; }
double SampledField::xi_step() const { return xi_axis.size() > 1 ? xi_axis[1] - xi_axis[0] : 1.0; }

bool SampledField::same_axes(const SampledField& o) const {
  return x_axis == o.x_axis && xi_axis == o.xi_axis;
}

double SampledField::l2_norm() const {
  return std::sqrt(values.squaredNorm() * x_step() * xi_step());
}

GridSpec grid_for_region(int max_index, const Region& region, double step) {
  const double xmax = region.x.half_count() * region.x.step;
  const double ximax = region.xi.half_count() * region.xi.step;
  return GridSpec::for_capacity(max_index, ximax, xmax, step);
}

SampledField stft(const VectorWindow& window, const SampledSignal& g, const Region& region) {
  const GridSpec& grid = window.grid();
  require(g.grid == grid, "stft: signal and window live on different grids");
  require(g.component_count() == window.component_count(),
          "stft: signal and window have different component counts");
  SampledField out{region.x.points(), region.xi.points(), {}};
  const double xmax = out.x_axis.back();
  const double ximax = out.xi_axis.back();
  require(xmax + window.reach() <= grid.half_width(),
          "stft region exceeds grid capacity in time");
  require(ximax + window.bandwidth() + 1.0 <= 1.0 / (2.0 * grid.step()),
          "stft region exceeds grid capacity in frequency (Nyquist guard)");

  const std::size_t N = grid.count();
  const std::size_t nx = out.x_axis.size();
  const std::size_t nxi = out.xi_axis.size();
  const auto xs = grid.points();

  // P(j, k) = sum_i g_i(x_j) conj(f_i(x_j - x_k)); the modulation factors
  // e^{-2 pi i xi (x_j - x_k)} then split into a dense product.
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(N),
                                              static_cast<Eigen::Index>(nx));
  for (std::size_t i = 0; i < window.component_count(); ++i) {
    const auto& comp = window.components()[i];
    const auto& gi = g.components[i];
    for (std::size_t k = 0; k < nx; ++k) {
      const double x = out.x_axis[k];
      for (std::size_t j = 0; j < N; ++j) {
        if (gi[j] == cplx{0.0, 0.0}) continue;
        P(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) +=
            gi[j] * std::conj(evaluate(comp, xs[j] - x));
      }
    }
  }
  Eigen::MatrixXcd E(static_cast<Eigen::Index>(nxi), static_cast<Eigen::Index>(N));
  for (std::size_t m = 0; m < nxi; ++m)
    for (std::size_t j = 0; j < N; ++j)
      E(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) =
          unit_phase(-out.xi_axis[m] * xs[j]);
  const Eigen::MatrixXcd V = E * P;  // (xi, x)
  out.values.resize(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nxi));
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t m = 0; m < nxi; ++m)
      out.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) =
          grid.step() * unit_phase(out.xi_axis[m] * out.x_axis[k]) *
          V(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
  return out;
}

void write_field_csv(const SampledField& field, std::ostream& os) {
  const auto prec = os.precision(17);
  os << "x,xi,re,im\n";
  for (std::size_t k = 0; k < field.x_axis.size(); ++k)
    for (std::size_t m = 0; m < field.xi_axis.size(); ++m) {
      const cplx v = field.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m));
      os << field.x_axis[k] << ',' << field.xi_axis[m] << ',' << v.real() << ',' << v.imag()
         << '\n';
    }
  os.precision(prec);
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary field dump assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }
std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}
double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

constexpr char kMagic[8] = {'T', 'F', 'F', 'I', 'E', 'L', 'D', '1'};

}  // namespace

void write_field_binary(const SampledField& field, std::ostream& os) {
  os.write(kMagic, 8);
  put_u32(os, static_cast<std::uint32_t>(field.x_axis.size()));
  put_u32(os, static_cast<std::uint32_t>(field.xi_axis.size()));
  for (double x : field.x_axis) put_f64(os, x);
  for (double x : field.xi_axis) put_f64(os, x);
  for (std::size_t k = 0; k < field.x_axis.size(); ++k)
    for (std::size_t m = 0; m < field.xi_axis.size(); ++m)
      put_f64(os, field.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)).real());
  for (std::size_t k = 0; k < field.x_axis.size(); ++k)
    for (std::size_t m = 0; m < field.xi_axis.size(); ++m)
      put_f64(os, field.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)).imag());
}

SampledField read_field_binary(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  require(is && std::memcmp(magic, kMagic, 8) == 0, "not a TFFIELD1 stream");
  const std::uint32_t nx = get_u32(is);
  const std::uint32_t nxi = get_u32(is);
  SampledField f;
  f.x_axis.resize(nx);
  f.xi_axis.resize(nxi);
  for (auto& x : f.x_axis) x = get_f64(is);
  for (auto& x : f.xi_axis) x = get_f64(is);
  f.values.resize(nx, nxi);
  for (std::uint32_t k = 0; k < nx; ++k)
    for (std::uint32_t m = 0; m < nxi; ++m) f.values(k, m).real(get_f64(is));
  for (std::uint32_t k = 0; k < nx; ++k)
    for (std::uint32_t m = 0; m < nxi; ++m) f.values(k, m).imag(get_f64(is));
  require(static_cast<bool>(is), "truncated TFFIELD1 stream");
  return f;
}

}  // namespace hgf
