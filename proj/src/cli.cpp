#include "hgf/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "hgf/certify.hpp"
#include "hgf/error.hpp"
#include "hgf/frameop.hpp"
#include "hgf/hermite.hpp"
#include "hgf/lattice.hpp"
#include "hgf/scan.hpp"
#include "hgf/serialize.hpp"

namespace hgf::cli {

namespace {

constexpr std::array<std::pair<Command, const char*>, 7> kCommands{{
    {Command::hermite, "hermite"},
    {Command::norm, "norm"},
    {Command::bounds, "bounds"},
    {Command::certify, "certify"},
    {Command::scan, "scan"},
    {Command::glgrid, "glgrid"},
    {Command::covariance, "covariance"},
}};

constexpr std::size_t kNodeBudget = 4'000'000;

LatticeMatrix matrix_of(const RunConfig& cfg) {
  const auto& m = cfg.matrix;
  return {m[0], m[1], m[2], m[3]};
}

std::array<double, 4> parse_matrix_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("bad matrix JSON: ") + e.what());
    }
    return matrix_from_json(j).entries();
  }
  return LatticeMatrix::parse(text).entries();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw PreconditionError("bad list entry '" + item + "'");
    }
  }
  return v;
}

std::string default_format(Command c) {
  return c == Command::scan || c == Command::glgrid ? "csv" : "json";
}

std::vector<double> t_list_of(const RunConfig& cfg) {
  return cfg.t_list.empty() ? default_t_list() : cfg.t_list;
}

Region region_of(const RunConfig& cfg) {
  Region r = Region::default_for(cfg.d);
  if (cfg.region_half_width > 0.0) r.x.half_width = r.xi.half_width = cfg.region_half_width;
  r.x.step = r.xi.step = cfg.region_step;
  return r;
}

GridSpec grid_for(const RunConfig& cfg, int max_index, double max_frequency, double reach) {
  if (cfg.half_width > 0.0) return GridSpec(cfg.half_width, cfg.step, max_index, max_frequency);
  const double half = std::max(reach + 8.0, 12.0);
  const double count = std::ceil(2.0 * half / cfg.step);
  return GridSpec(count * cfg.step / 2.0, cfg.step, max_index, max_frequency);
}

// Expected number of kept lattice points under the phase-space truncation.
double expected_points(const LatticeMatrix& M, double radius, double b) {
  return expected_point_count(M.row_scaled(1.0 / b, 2.0 * std::numbers::pi * b), radius);
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

void write_atomically(const std::filesystem::path& target, const std::string& content) {
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw PreconditionError("cannot open output file " + tmp.string());
    os << content;
    if (!os.flush()) throw PreconditionError("cannot write output file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

void emit(const RunConfig& cfg, const std::string& artifact, std::ostream& out) {
  if (cfg.output.empty()) {
    out << artifact;
  } else {
    write_atomically(resolve_output(cfg.output), artifact);
  }
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

bool is_budget(const std::string& diag) { return diag.rfind("[budget]", 0) == 0; }

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const std::string format = cfg.format.empty() ? default_format(cfg.command) : cfg.format;
  switch (cfg.command) {
    case Command::hermite: {
      const double reach = hermite_support(cfg.n, cfg.dilation);
      const GridSpec grid = grid_for(cfg, cfg.n, 0.0, reach);
      const double value = dilated_hermite(cfg.n, cfg.dilation, cfg.x);
      const double residual = scaled_hermite_operator_residual(cfg.n, cfg.dilation, grid);
      const nlohmann::json j{{"n", cfg.n}, {"x", cfg.x}, {"dilation", cfg.dilation},
                             {"value", value}, {"residual", residual}};
      if (format == "csv") {
        emit(cfg, "n,x,dilation,value,residual\n" + std::to_string(cfg.n) + "," + shortest(cfg.x) +
                      "," + shortest(cfg.dilation) + "," + shortest(value) + "," +
                      shortest(residual) + "\n",
             out);
      } else {
        emit(cfg, dump(j), out);
      }
      log << "h_" << cfg.n << "(" << shortest(cfg.x) << "; a=" << shortest(cfg.dilation)
          << ") = " << shortest(value) << ", eigen-residual " << shortest(residual) << "\n";
      return kOk;
    }
    case Command::norm: {
      const LatticeMatrix M = matrix_of(cfg);
      const double bn = box_norm(M);
      out << shortest(bn) << "\n";
      if (!cfg.output.empty()) {
        emit(cfg, dump({{"box_norm", bn}, {"det", covolume(M)}, {"matrix", to_json(M)}}), out);
      }
      log << "||M|| = " << shortest(bn) << ", |det M| = " << shortest(covolume(M)) << "\n";
      return kOk;
    }
    case Command::bounds: {
      GaborSystemSpec spec = GaborSystemSpec::hermite(cfg.d, matrix_of(cfg), cfg.K);
      spec.truncation_radius = cfg.radius;
      const FrameBounds fb = frame_bounds(spec);
      emit(cfg, dump(to_json(fb)), out);
      log << "A_est=" << shortest(fb.A_est) << " B_est=" << shortest(fb.B_est)
          << " B/A=" << shortest(fb.tightness()) << " K=" << fb.K
          << (fb.converged ? " converged" : " not converged") << "\n";
      return kOk;
    }
    case Command::certify: {
      const Region region = region_of(cfg);
      const VectorWindow w = hermite_window(cfg.d, grid_for_region(cfg.d, region, cfg.step));
      const Certificate c = certificate(w, matrix_of(cfg), region);
      emit(cfg, dump(to_json(c)), out);
      log << "r=" << shortest(c.r) << " R=" << shortest(c.R)
          << (c.valid ? " valid: A_cert=" + shortest(c.A_cert) + " B_cert=" + shortest(c.B_cert)
                      : std::string(" invalid (R >= 1): no guarantee"))
          << "\n";
      return kOk;
    }
    case Command::scan: {
      const auto records = tightness_scan(matrix_of(cfg), cfg.d, t_list_of(cfg), cfg.K);
      std::ostringstream os;
      if (format == "csv") {
        write_scan_csv(records, os);
      } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : records)
          arr.push_back({{"d", r.d}, {"t", r.t}, {"box_norm", r.box_norm}, {"det", r.det},
                         {"A_est", r.A_est}, {"B_est", r.B_est}, {"tightness", r.tightness},
                         {"C_emp", r.C_emp}, {"converged", r.converged}});
        os << dump(arr);
      }
      emit(cfg, os.str(), out);
      try {
        const auto est = estimate_cstar(records);
        log << records.size() << " rows; C_emp (" << est.method << ") = " << shortest(est.value)
            << "\n";
      } catch (const PreconditionError&) {
        log << records.size() << " rows; too few usable rows for a C estimate\n";
      }
      return kOk;
    }
    case Command::glgrid: {
      std::ostringstream os;
      os << "d,det,threshold,gl_frame\n";
      const double threshold = 1.0 / (cfg.d + 1.0);
      std::size_t hits = 0;
      for (int k = 1; k <= cfg.steps; ++k) {
        const double det = cfg.det_max * k / cfg.steps;
        const double s = std::sqrt(det);
        const bool gl = gl_predicate(LatticeMatrix::diagonal(s, s), cfg.d);
        hits += gl ? 1 : 0;
        os << cfg.d << ',' << shortest(det) << ',' << shortest(threshold) << ','
           << (gl ? "true" : "false") << '\n';
      }
      emit(cfg, os.str(), out);
      log << hits << " of " << cfg.steps << " determinants below 1/(d+1) = " << shortest(threshold)
          << "\n";
      return kOk;
    }
    case Command::covariance: {
      const auto res = dilation_covariance(cfg.d, matrix_of(cfg), cfg.dilation, cfg.K);
      emit(cfg,
           dump({{"d", cfg.d},
                 {"b", cfg.dilation},
                 {"deviation", res.deviation},
                 {"reference", to_json(res.reference)},
                 {"dilated", to_json(res.dilated)}}),
           out);
      log << "max relative deviation " << shortest(res.deviation) << "\n";
      return kOk;
    }
  }
  return kPrecondition;
}

}  // namespace

Command parse_command(const std::string& name) {
  for (const auto& [c, n] : kCommands)
    if (name == n) return c;
  throw PreconditionError("unknown command '" + name + "'");
}

const char* to_string(Command c) {
  for (const auto& [k, n] : kCommands)
    if (k == c) return n;
  return "?";
}

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  require(j.is_object(), "config must be a single JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "command") cfg.command = parse_command(v.get<std::string>());
      else if (key == "d") cfg.d = v.get<int>();
      else if (key == "matrix") {
        cfg.matrix = v.is_string() ? parse_matrix_text(v.get<std::string>()) : matrix_from_json(v).entries();
        cfg.matrix_set = true;
      }
      else if (key == "step") cfg.step = v.get<double>();
      else if (key == "half_width") cfg.half_width = v.get<double>();
      else if (key == "K") cfg.K = v.get<int>();
      else if (key == "radius") cfg.radius = v.get<double>();
      else if (key == "region_half_width") cfg.region_half_width = v.get<double>();
      else if (key == "region_step") cfg.region_step = v.get<double>();
      else if (key == "output") cfg.output = v.get<std::string>();
      else if (key == "format") cfg.format = v.get<std::string>();
      else if (key == "n") cfg.n = v.get<int>();
      else if (key == "x") cfg.x = v.get<double>();
      else if (key == "dilation") cfg.dilation = v.get<double>();
      else if (key == "t_list") cfg.t_list = v.get<std::vector<double>>();
      else if (key == "det_max") cfg.det_max = v.get<double>();
      else if (key == "steps") cfg.steps = v.get<int>();
      else if (key == "seed") cfg.seed = v.get<unsigned>();
      else throw PreconditionError("unknown config field '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("config field has the wrong type: ") + e.what());
  }
}

nlohmann::json to_json(const RunConfig& cfg) {
  return {{"command", to_string(cfg.command)},
          {"d", cfg.d},
          {"matrix", {{cfg.matrix[0], cfg.matrix[1]}, {cfg.matrix[2], cfg.matrix[3]}}},
          {"step", cfg.step},
          {"half_width", cfg.half_width},
          {"K", cfg.K},
          {"radius", cfg.radius},
          {"region_half_width", cfg.region_half_width},
          {"region_step", cfg.region_step},
          {"output", cfg.output},
          {"format", cfg.format},
          {"n", cfg.n},
          {"x", cfg.x},
          {"dilation", cfg.dilation},
          {"t_list", cfg.t_list},
          {"det_max", cfg.det_max},
          {"steps", cfg.steps},
          {"seed", cfg.seed}};
}

std::vector<std::string> validate(const RunConfig& cfg) {
  std::vector<std::string> diags;
  auto field = [&](bool ok, const std::string& msg) {
    if (!ok) diags.push_back("[field] " + msg);
  };
  field(cfg.d >= 0, "d must be nonnegative");
  field(cfg.K > 0, "K must be positive");
  field(cfg.step > 0.0, "step must be positive");
  field(cfg.half_width >= 0.0, "half_width must be nonnegative (0 = auto)");
  field(cfg.radius >= 0.0, "radius must be nonnegative (0 = auto)");
  field(cfg.region_half_width >= 0.0, "region_half_width must be nonnegative (0 = auto)");
  field(cfg.region_step > 0.0, "region_step must be positive");
  field(cfg.dilation > 0.0, "dilation must be positive");
  field(cfg.n >= 0, "n must be nonnegative");
  field(std::isfinite(cfg.x), "x must be finite");
  field(cfg.steps > 0, "steps must be positive");
  field(cfg.det_max > 0.0, "det_max must be positive");
  field(cfg.format.empty() || cfg.format == "json" || cfg.format == "csv",
        "format must be json or csv");
  for (std::size_t i = 0; i < cfg.t_list.size(); ++i) {
    field(cfg.t_list[i] > 0.0, "t_list entries must be positive");
    if (i > 0) field(cfg.t_list[i] < cfg.t_list[i - 1], "t_list must be strictly descending");
  }
  const double det = cfg.matrix[0] * cfg.matrix[3] - cfg.matrix[1] * cfg.matrix[2];
  const bool matrix_ok = std::abs(det) > 1e-12 &&
                         std::all_of(cfg.matrix.begin(), cfg.matrix.end(),
                                     [](double v) { return std::isfinite(v); });
  field(matrix_ok, "matrix must be finite and invertible");
  if (cfg.command == Command::bounds || cfg.command == Command::scan ||
      cfg.command == Command::covariance)
    field(cfg.K > cfg.d, "K must exceed d");
  if (!diags.empty() || !(cfg.step > 0.0)) return diags;

  // Nyquist guard and capacity for the grid the command will sample on.
  int index = cfg.d;
  double xi = 0.0;
  double reach = hermite_support(cfg.d);
  if (cfg.command == Command::hermite) {
    index = static_cast<int>(std::ceil((2.0 * cfg.n + 1.0) / cfg.dilation / 2.0));
    reach = hermite_support(cfg.n, cfg.dilation);
  } else if (cfg.command == Command::certify) {
    const Region r = region_of(cfg);
    xi = r.xi.half_count() * r.xi.step;
    reach += r.x.half_count() * r.x.step;
  }
  if (!nyquist_guard_holds(cfg.step, index, xi)) {
    diags.push_back("[nyquist] step " + shortest(cfg.step) + " cannot resolve Hermite index " +
                    std::to_string(index) + " at frequency " + shortest(xi) +
                    " (need 1/(2 step) >= xi + sqrt(2K+1)/(2 pi) + 1)");
  }
  if (cfg.half_width > 0.0 && cfg.half_width < reach + 6.0) {
    diags.push_back("[capacity] half_width " + shortest(cfg.half_width) + " is below the required " +
                    shortest(reach + 6.0));
  }
  if (cfg.half_width > 0.0) {
    const double n = std::round(2.0 * cfg.half_width / cfg.step);
    if (std::abs(n * cfg.step / 2.0 - cfg.half_width) > 1e-12)
      diags.push_back("[capacity] half_width must be a whole number of half steps");
  }

  if (matrix_ok) {
    const LatticeMatrix M = matrix_of(cfg);
    const double r = cfg.radius > 0.0 ? cfg.radius : default_truncation_radius(cfg.K, cfg.d);
    double pts = 0.0;
    if (cfg.command == Command::bounds || cfg.command == Command::covariance) {
      pts = expected_points(M, r, 1.0);
    } else if (cfg.command == Command::scan) {
      const auto ts = t_list_of(cfg);
      pts = expected_points(M.scaled(*std::min_element(ts.begin(), ts.end())), r, 1.0);
    }
    if (pts > static_cast<double>(kDefaultPointBudget))
      diags.push_back("[budget] about " + shortest(std::round(pts)) +
                      " lattice points exceed the budget of " + std::to_string(kDefaultPointBudget));
    if (cfg.command == Command::certify) {
      const Region rg = region_of(cfg);
      const double nodes = static_cast<double>(rg.x.size()) * static_cast<double>(rg.xi.size());
      if (nodes > static_cast<double>(kNodeBudget))
        diags.push_back("[budget] region has " + shortest(nodes) + " nodes, over the budget of " +
                        std::to_string(kNodeBudget));
      if (box_norm(M) < std::min(rg.x.step, rg.xi.step))
        diags.push_back("[capacity] ||M|| is below the region step; refine region_step");
    }
  }
  return diags;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto diags = validate(cfg);
  if (!diags.empty()) {
    bool budget = false;
    for (const auto& d : diags) {
      log << "error: " << d << "\n";
      budget = budget || is_budget(d);
    }
    return budget ? kBudget : kPrecondition;
  }
  try {
    return execute(cfg, out, log);
  } catch (const BudgetError& e) {
    log << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const ConvergenceError& e) {
    log << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Frame bounds and oscillation certificates for Hermite Gabor systems"};
  std::string command;
  std::string config_path;
  bool validate_only = false;
  int d = 0, K = 0, n = 0, steps = 0;
  unsigned seed = 0;
  double step = 0, half_width = 0, radius = 0, region_half_width = 0, region_step = 0, x = 0,
         dilation = 0, det_max = 0;
  std::string matrix, output, format, t_list;

  app.add_option("command", command, "hermite | norm | bounds | certify | scan | glgrid | covariance")
      ->required();
  app.add_option("--config", config_path, "JSON config file (flags override its fields)");
  app.add_flag("--validate", validate_only, "list diagnostics without running");
  auto* o_d = app.add_option("--d", d, "window degree d (window h^d = (h_0..h_d))");
  auto* o_matrix = app.add_option("--matrix", matrix, "lattice matrix a,b,c,d or [[a,b],[c,d]]");
  auto* o_step = app.add_option("--step", step, "grid step");
  auto* o_half = app.add_option("--half-width", half_width, "grid half width (0 = auto)");
  auto* o_K = app.add_option("--K", K, "Galerkin dimension per component");
  auto* o_radius = app.add_option("--radius", radius, "phase-space truncation radius (0 = auto)");
  auto* o_rhw = app.add_option("--region-half-width", region_half_width, "ambiguity region half width");
  auto* o_rstep = app.add_option("--region-step", region_step, "ambiguity region step");
  auto* o_output = app.add_option("--output", output, "artifact path (relative to $OUTPUT_DIR)");
  auto* o_format = app.add_option("--format", format, "json | csv");
  auto* o_n = app.add_option("--n", n, "Hermite index (hermite)");
  auto* o_x = app.add_option("--x", x, "evaluation point (hermite)");
  auto* o_dil = app.add_option("--dilation,--b", dilation, "dilation a (hermite) or b (covariance)");
  auto* o_t = app.add_option("--t-list", t_list, "descending scale factors t1,t2,... (scan)");
  auto* o_det = app.add_option("--det-max", det_max, "largest determinant (glgrid)");
  auto* o_steps = app.add_option("--steps", steps, "ladder length (glgrid)");
  auto* o_seed = app.add_option("--seed", seed, "seed for randomized harnesses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kPrecondition;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw PreconditionError("cannot open config file " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(is);
      } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("config is not valid JSON: ") + e.what());
      }
      apply_json(cfg, j);
    }
    cfg.command = parse_command(command);
    if (o_d->count()) cfg.d = d;
    if (o_matrix->count()) {
      cfg.matrix = parse_matrix_text(matrix);
      cfg.matrix_set = true;
    }
    if (o_step->count()) cfg.step = step;
    if (o_half->count()) cfg.half_width = half_width;
    if (o_K->count()) cfg.K = K;
    if (o_radius->count()) cfg.radius = radius;
    if (o_rhw->count()) cfg.region_half_width = region_half_width;
    if (o_rstep->count()) cfg.region_step = region_step;
    if (o_output->count()) cfg.output = output;
    if (o_format->count()) cfg.format = format;
    if (o_n->count()) cfg.n = n;
    if (o_x->count()) cfg.x = x;
    if (o_dil->count()) cfg.dilation = dilation;
    if (o_t->count()) cfg.t_list = parse_list(t_list);
    if (o_det->count()) cfg.det_max = det_max;
    if (o_steps->count()) cfg.steps = steps;
    if (o_seed->count()) cfg.seed = seed;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kPrecondition;
  }

  if (validate_only) {
    const auto diags = validate(cfg);
    for (const auto& dgn : diags) out << dgn << "\n";
    if (diags.empty()) log << "config is runnable\n";
    return diags.empty() ? kOk : kPrecondition;
  }
  return run(cfg, out, log);
}

}  // namespace hgf::cli
