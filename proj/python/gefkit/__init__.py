# SPDX-License-Identifier: Apache-2.0
"""Generalized entanglement of formation toolkit.

Thin Python layer over the C++ core: catalog states, entropies, Wootters
concurrence / EoF, tri- and four-party GEF (pure definitions and convex-roof
estimates), and the entropy-inequality registry with sound three-valued
verdicts.
"""

from gefkit._core import (  # noqa: F401
    Decomposition,
    DensityMatrix,
    Estimate,
    GefBreakdown,
    GefTerm,
    PartyDims,
    PureState,
    RoofResult,
    bell,
    binary_entropy,
    concurrence,
    derive_coefficients,
    eof_from_concurrence,
    eof_pure_bipartite,
    eof_two_qubit,
    extended_bell,
    gef_bipartite,
    gef_mixed_four,
    gef_mixed_tri,
    gef_pure_four,
    gef_pure_tri,
    ghz,
    inequality_ids,
    marginal,
    partial_trace,
    product_state,
    pure_to_density,
    purify,
    random_density,
    random_haar_pure,
    random_unitary,
    run_registry,
    state_from_json,
    state_to_json,
    von_neumann_entropy,
    w3,
    werner,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
