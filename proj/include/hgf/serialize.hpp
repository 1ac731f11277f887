#pragma once

#include <string>

#include <json.hpp>

#include "hgf/certify.hpp"
#include "hgf/frameop.hpp"
#include "hgf/lattice.hpp"

namespace hgf {

/// Shortest decimal text that parses back to exactly `v`.
std::string shortest(double v);

/// [[m11, m12], [m21, m22]].
nlohmann::json to_json(const LatticeMatrix& M);
LatticeMatrix matrix_from_json(const nlohmann::json& j);

/// {A_est, B_est, K, converged, tail_bound, det, box_norm}.
nlohmann::json to_json(const FrameBounds& fb);
FrameBounds frame_bounds_from_json(const nlohmann::json& j);

/// {r, R, A_cert, B_cert, valid, eps_disc, det, d}.
nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j, const LatticeMatrix& M);

}  // namespace hgf
