// SPDX-License-Identifier: Apache-2.0

#include "gefkit/statefile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gefkit {

namespace {

using nlohmann::json;

constexpr double kLoadTol = 1e-8;

json complex_list(const std::vector<cplx>& zs) {
  json arr = json::array();
  for (const cplx& z : zs) arr.push_back(json::array({z.real(), z.imag()}));
  return arr;
}

std::vector<cplx> parse_complex_list(const json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("state file: data must be an array");
  std::vector<cplx> out;
  out.reserve(arr.size());
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw std::invalid_argument("state file: entries must be [re, im] number pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

}  // namespace

std::string state_to_json(const AnyState& state) {
  json doc;
  if (std::holds_alternative<PureState>(state)) {
    const PureState& psi = std::get<PureState>(state);
    doc["dims"] = psi.dims.dims();
    doc["kind"] = "pure";
    doc["data"] = complex_list(psi.amplitudes);
  } else {
    const DensityMatrix& rho = std::get<DensityMatrix>(state);
    doc["dims"] = rho.dims.dims();
    doc["kind"] = "mixed";
    doc["data"] = complex_list(rho.matrix.data());
  }
  return doc.dump(2) + "\n";
}

AnyState state_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("state file: invalid JSON: ") + e.what());
  }
  if (!doc.contains("dims") || !doc.contains("kind") || !doc.contains("data"))
    throw std::invalid_argument("state file: need dims, kind and data fields");

  std::vector<std::size_t> dims_raw;
  for (const json& d : doc["dims"]) {
    if (!d.is_number_unsigned() || d.get<std::size_t>() < 1)
      throw std::invalid_argument("state file: dims must be positive integers");
    dims_raw.push_back(d.get<std::size_t>());
  }
  PartyDims dims(dims_raw);
  std::vector<cplx> data = parse_complex_list(doc["data"]);
  const std::string kind = doc["kind"].get<std::string>();
  const std::size_t d = dims.total();

  if (kind == "pure") {
    if (data.size() != d)
      throw std::invalid_argument("state file: amplitude count does not match dims");
    double n2 = 0.0;
    for (const cplx& z : data) n2 += std::norm(z);
    const double norm = std::sqrt(n2);
    if (std::abs(norm - 1.0) > kLoadTol)
      throw std::invalid_argument("state file: pure state not normalized within 1e-8");
    if (std::abs(norm - 1.0) > 1e-13)
      for (cplx& z : data) z /= norm;
    return PureState(std::move(data), std::move(dims));
  }
  if (kind == "mixed") {
    if (data.size() != d * d)
      throw std::invalid_argument("state file: matrix entry count does not match dims");
    ComplexMatrix m(d, d);
    m.data() = std::move(data);
    const DensityValidation v = validate_density(m, kLoadTol);
    if (!v.ok()) {
      std::ostringstream msg;
      msg << "state file: invalid density matrix (hermiticity defect "
          << v.hermiticity_defect << ", trace defect " << v.trace_defect
          << ", min eigenvalue " << v.min_eigenvalue << ")";
      throw std::invalid_argument(msg.str());
    }
    if (v.hermiticity_defect > 1e-11) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
          const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
          m(i, j) = avg;
          m(j, i) = std::conj(avg);
        }
    }
    if (v.trace_defect > 1e-11) {
      const double tr = m.trace().real();
      for (cplx& z : m.data()) z /= tr;
    }
    return DensityMatrix(std::move(m), std::move(dims));
  }
  throw std::invalid_argument("state file: kind must be 'pure' or 'mixed'");
}

AnyState load_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

void save_state_file(const std::string& path, const AnyState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write state file: " + path);
  out << state_to_json(state);
}

}  // namespace gefkit
