// Copyright 2026 The qsuff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON formats.
//
//   matrix:    {"dim_rows": n, "dim_cols": m, "entries": [[re, im], ...]}  (row-major)
//   state:     a matrix object
//   channel:   {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
//              or {"dim_in": n, "dim_out": m, "choi": matrix}
//   structure: {"unitary": matrix, "blocks": [{"d_L", "d_R", "sigma_R", "A_L"}, ...]}
//
// Non-finite reals are written as the strings "inf", "-inf" and "nan".

#ifndef QSUFF_IO_HPP_
#define QSUFF_IO_HPP_

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsuff/divergences.hpp"
#include "qsuff/errors.hpp"
#include "qsuff/fixed_point.hpp"
#include "qsuff/linalg.hpp"
#include "qsuff/quantum.hpp"
#include "qsuff/recovery.hpp"

namespace qsuff::io {

using Json = nlohmann::json;

inline Json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::nan("");
  }
  throw ParseError("expected a number or \"inf\", got " + j.dump());
}

inline Json optional_real_to_json(const std::optional<double>& x) { return x ? real_to_json(*x) : Json(nullptr); }

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

inline Index positive_index(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ParseError(std::string(what) + ": \"" + key + "\" must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

}  // namespace detail

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  }
  return {{"dim_rows", m.rows()}, {"dim_cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  const Index rows = detail::positive_index(j, "dim_rows", "matrix");
  const Index cols = detail::positive_index(j, "dim_cols", "matrix");
  const Json& entries = detail::field(j, "entries", "matrix");
  if (!entries.is_array() || static_cast<Index>(entries.size()) != rows * cols) {
    throw ParseError("matrix: expected " + std::to_string(rows * cols) + " entries");
  }
  ComplexMatrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const Json& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("matrix: entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

inline Json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

inline DensityMatrix state_from_json(const Json& j, const Tolerances& tol = {}) {
  return DensityMatrix(matrix_from_json(j), tol);
}

inline Json channel_to_json(const QuantumChannel& phi) {
  Json kraus = Json::array();
  for (const auto& k : phi.kraus()) kraus.push_back(matrix_to_json(k));
  return {{"dim_in", phi.dim_in()}, {"dim_out", phi.dim_out()}, {"kraus", std::move(kraus)}};
}

inline QuantumChannel channel_from_json(const Json& j, const Tolerances& tol = {}) {
  const Index din = detail::positive_index(j, "dim_in", "channel");
  const Index dout = detail::positive_index(j, "dim_out", "channel");
  if (j.contains("kraus")) {
    const Json& list = j.at("kraus");
    if (!list.is_array() || list.empty()) throw ParseError("channel: \"kraus\" must be a non-empty array");
    std::vector<ComplexMatrix> kraus;
    for (const auto& k : list) kraus.push_back(matrix_from_json(k));
    return QuantumChannel(din, dout, std::move(kraus), tol);
  }
  if (j.contains("choi")) return QuantumChannel::from_choi(matrix_from_json(j.at("choi")), din, dout, tol);
  throw ParseError("channel: expected a \"kraus\" or \"choi\" field");
}

inline Json structure_to_json(const BlockStructure& s) {
  Json blocks = Json::array();
  for (const auto& b : s.blocks) {
    blocks.push_back({{"d_L", b.d_left},
                      {"d_R", b.d_right},
                      {"sigma_R", matrix_to_json(b.sigma_right.matrix())},
                      {"A_L", matrix_to_json(b.a_left)}});
  }
  return {{"unitary", matrix_to_json(s.unitary)}, {"blocks", std::move(blocks)}};
}

/// The source state is not part of the file format; it is rebuilt as
/// U* ((+) A_L (x) sigma_R) U.
inline BlockStructure structure_from_json(const Json& j) {
  BlockStructure s;
  s.unitary = matrix_from_json(detail::field(j, "unitary", "structure"));
  const Json& blocks = detail::field(j, "blocks", "structure");
  if (!blocks.is_array() || blocks.empty()) throw ParseError("structure: \"blocks\" must be a non-empty array");
  for (const auto& b : blocks) {
    s.blocks.push_back({detail::positive_index(b, "d_L", "block"), detail::positive_index(b, "d_R", "block"),
                        DensityMatrix(matrix_from_json(detail::field(b, "sigma_R", "block"))),
                        matrix_from_json(detail::field(b, "A_L", "block"))});
  }
  s.source = s.unitary.adjoint() * s.assemble_sigma() * s.unitary;
  return s;
}

inline Json divergence_to_json(const DivergenceResult& r, bool bits = false) {
  const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
  return {{"kind", std::string(to_string(r.kind))},
          {"alpha", optional_real_to_json(r.alpha)},
          {"value", real_to_json(r.finite ? r.value * scale : r.value)},
          {"units", bits ? "bits" : "nats"},
          {"finite", r.finite},
          {"support_violation", r.support_violation}};
}

inline Json sufficiency_to_json(const SufficiencyReport& r) {
  Json j = {{"alpha", real_to_json(r.alpha)},
            {"divergence_input", real_to_json(r.dpi_rhs)},
            {"divergence_output", real_to_json(r.dpi_lhs)},
            {"gap", optional_real_to_json(r.gap)},
            {"recovery_error", real_to_json(r.recovery_error)},
            {"sufficient", r.sufficient},
            {"tol_suff", r.tol_suff},
            {"tol_gap", r.tol_gap}};
  if (r.tau_checked) {
    j["tau"] = {{"l2_residual", optional_real_to_json(r.tau_l2_residual)},
                {"recovery_error", optional_real_to_json(r.tau_recovery_error)},
                {"verified", r.tau_verified}};
  }
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << dump(j);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

inline DensityMatrix load_state(const std::string& path, const Tolerances& tol = {}) {
  return state_from_json(read_json_file(path), tol);
}

inline QuantumChannel load_channel(const std::string& path, const Tolerances& tol = {}) {
  return channel_from_json(read_json_file(path), tol);
}

}  // namespace qsuff::io

#endif  // QSUFF_IO_HPP_
