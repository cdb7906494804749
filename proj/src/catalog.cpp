// SPDX-License-Identifier: Apache-2.0

#include "gefkit/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace gefkit {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

PureState make_ghz(std::size_t parties) {
  if (parties < 2 || parties > 4)
    throw std::invalid_argument("make_ghz: party count must be 2..4");
  const std::size_t d = std::size_t{1} << parties;
  std::vector<cplx> amps(d);
  amps.front() = kInvSqrt2;
  amps.back() = kInvSqrt2;
  return PureState(std::move(amps), PartyDims(std::vector<std::size_t>(parties, 2)));
}

PureState make_w3() {
  std::vector<cplx> amps(8);
  const double a = 1.0 / std::sqrt(3.0);
  amps[1] = a;  // |001>
  amps[2] = a;  // |010>
  amps[4] = a;  // |100>
  return PureState(std::move(amps), PartyDims{2, 2, 2});
}

PureState make_bell() { return make_ghz(2); }

std::vector<cplx> make_spectator(double theta, double phi) {
  return {cplx{std::cos(theta), 0.0}, std::polar(std::sin(theta), phi)};
}

PureState make_extended_bell(EbVariant variant, double theta, double phi, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("make_extended_bell: sign must be +1 or -1");
  const std::vector<cplx> chi = make_spectator(theta, phi);
  const double s = static_cast<double>(sign);
  std::vector<cplx> amps(8);
  auto at = [&](std::size_t a, std::size_t b, std::size_t c) -> cplx& {
    return amps[(a << 2) | (b << 1) | c];
  };
  switch (variant) {
    case EbVariant::ab:  // (|00> + s|11>)_AB / sqrt(2) x |chi>_C
      for (std::size_t c = 0; c < 2; ++c) {
        at(0, 0, c) = kInvSqrt2 * chi[c];
        at(1, 1, c) = s * kInvSqrt2 * chi[c];
      }
      break;
    case EbVariant::ac1:  // (|0>_A |chi>_B |0>_C + s |1>_A |chi>_B |1>_C)/sqrt(2)
      for (std::size_t b = 0; b < 2; ++b) {
        at(0, b, 0) = kInvSqrt2 * chi[b];
        at(1, b, 1) = s * kInvSqrt2 * chi[b];
      }
      break;
    case EbVariant::ac2:  // (|0>_A |chi>_B |1>_C + s |1>_A |chi>_B |0>_C)/sqrt(2)
      for (std::size_t b = 0; b < 2; ++b) {
        at(0, b, 1) = kInvSqrt2 * chi[b];
        at(1, b, 0) = s * kInvSqrt2 * chi[b];
      }
      break;
    case EbVariant::bc:  // |chi>_A x (|00> + s|11>)_BC / sqrt(2)
      for (std::size_t a = 0; a < 2; ++a) {
        at(a, 0, 0) = kInvSqrt2 * chi[a];
        at(a, 1, 1) = s * kInvSqrt2 * chi[a];
      }
      break;
  }
  return PureState(std::move(amps), PartyDims{2, 2, 2});
}

DensityMatrix make_werner(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("make_werner: p must be in [0, 1]");
  const PureState bell = make_bell();
  ComplexMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j)
      m(i, j) = p * bell.amplitudes[i] * std::conj(bell.amplitudes[j]);
    m(i, i) += (1.0 - p) * 0.25;
  }
  return DensityMatrix(std::move(m), PartyDims{2, 2});
}

PureState make_product(const PartyDims& dims) {
  if (dims.parties() < 1) throw std::invalid_argument("make_product: need at least one party");
  std::vector<cplx> amps(dims.total());
  amps[0] = 1.0;
  return PureState(std::move(amps), dims);
}

AnyState catalog_state(const std::string& name, const CatalogParams& params) {
  if (name == "ghz") return make_ghz(params.n);
  if (name == "w3") return make_w3();
  if (name == "bell") return make_bell();
  if (name == "eb_ab") return make_extended_bell(EbVariant::ab, params.theta, params.phi, params.sign);
  if (name == "eb_ac1")
    return make_extended_bell(EbVariant::ac1, params.theta, params.phi, params.sign);
  if (name == "eb_ac2")
    return make_extended_bell(EbVariant::ac2, params.theta, params.phi, params.sign);
  if (name == "eb_bc") return make_extended_bell(EbVariant::bc, params.theta, params.phi, params.sign);
  if (name == "werner") return make_werner(params.p);
  if (name == "product") {
    if (params.dims.empty()) return make_product(PartyDims{2, 2, 2});
    return make_product(PartyDims(params.dims));
  }
  throw std::invalid_argument("catalog_state: unknown state name '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"ghz", "w3", "bell", "eb_ab", "eb_ac1", "eb_ac2", "eb_bc", "werner", "product"};
}

}  // namespace gefkit
