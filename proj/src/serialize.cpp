#include "hgf/serialize.hpp"

#include <charconv>

#include "hgf/error.hpp"

namespace hgf {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const LatticeMatrix& M) {
  const auto& e = M.entries();
  return nlohmann::json::array({{e[0], e[1]}, {e[2], e[3]}});
}

LatticeMatrix matrix_from_json(const nlohmann::json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_array() && j[1].is_array() &&
              j[0].size() == 2 && j[1].size() == 2,
          "matrix must be a JSON array [[m11,m12],[m21,m22]]");
  for (const auto& row : j)
    for (const auto& v : row) require(v.is_number(), "matrix entries must be numbers");
  return {j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(),
          j[1][1].get<double>()};
}

nlohmann::json to_json(const FrameBounds& fb) {
  return {{"A_est", fb.A_est},   {"B_est", fb.B_est},           {"K", fb.K},
          {"converged", fb.converged}, {"tail_bound", fb.tail_bound}, {"det", fb.det},
          {"box_norm", fb.box_norm}};
}

FrameBounds frame_bounds_from_json(const nlohmann::json& j) {
  FrameBounds fb;
  fb.A_est = j.at("A_est").get<double>();
  fb.B_est = j.at("B_est").get<double>();
  fb.K = j.at("K").get<int>();
  fb.converged = j.at("converged").get<bool>();
  fb.tail_bound = j.at("tail_bound").get<double>();
  fb.det = j.at("det").get<double>();
  fb.box_norm = j.at("box_norm").get<double>();
  return fb;
}

nlohmann::json to_json(const Certificate& c) {
  return {{"r", c.r},           {"R", c.R},         {"A_cert", c.A_cert}, {"B_cert", c.B_cert},
          {"valid", c.valid},   {"eps_disc", c.eps_disc}, {"det", c.det},       {"d", c.d}};
}

Certificate certificate_from_json(const nlohmann::json& j, const LatticeMatrix& M) {
  Certificate c;
  c.r = j.at("r").get<double>();
  c.R = j.at("R").get<double>();
  c.A_cert = j.at("A_cert").get<double>();
  c.B_cert = j.at("B_cert").get<double>();
  c.valid = j.at("valid").get<bool>();
  c.eps_disc = j.at("eps_disc").get<double>();
  c.det = j.at("det").get<double>();
  c.d = j.at("d").get<int>();
  c.matrix = M;
  return c;
}

}  // namespace hgf
