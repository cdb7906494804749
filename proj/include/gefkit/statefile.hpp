// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "gefkit/catalog.hpp"
#include "gefkit/qmat.hpp"

namespace gefkit {

/// State files are UTF-8 JSON:
///   {"dims": [2,2,2], "kind": "pure"|"mixed", "data": [[re,im], ...]}
/// with amplitudes for pure states and row-major matrix entries for mixed
/// ones. Serialization uses shortest-round-trip decimals, so save/load is
/// bit-exact.
std::string state_to_json(const AnyState& state);

/// Parses and validates against the state invariants at tolerance 1e-8.
/// Defects below the strict construction tolerances are left untouched;
/// anything between gets cleaned (renormalized / symmetrized) so the loaded
/// object satisfies the type invariants.
AnyState state_from_json(const std::string& text);

AnyState load_state_file(const std::string& path);
void save_state_file(const std::string& path, const AnyState& state);

}  // namespace gefkit
