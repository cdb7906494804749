# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import gefkit


def test_catalog_and_entropy():
    ghz = gefkit.ghz(3)
    assert ghz.norm() == pytest.approx(1.0, abs=1e-12)
    rho = gefkit.pure_to_density(ghz)
    assert gefkit.von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-9)
    a = gefkit.partial_trace(rho, [0])
    assert gefkit.von_neumann_entropy(a) == pytest.approx(1.0, abs=1e-10)


def test_numpy_round_trip():
    amps = np.zeros(4, dtype=complex)
    amps[0] = amps[3] = 1 / math.sqrt(2)
    psi = gefkit.PureState(amps, [2, 2])
    back = psi.amplitudes
    assert np.allclose(back, amps)
    assert gefkit.eof_pure_bipartite(psi, [0]) == pytest.approx(1.0, abs=1e-10)


def test_concurrence_and_eof():
    w = gefkit.werner(0.9)
    c = gefkit.concurrence(w)
    assert c == pytest.approx(0.85, abs=1e-9)
    assert gefkit.eof_two_qubit(w) == pytest.approx(gefkit.eof_from_concurrence(c), abs=1e-12)


def test_gef_tri():
    b = gefkit.gef_pure_tri(gefkit.ghz(3))
    assert b.total == pytest.approx(1.0, abs=1e-9)
    assert len(b.terms) == 9
    assert all(t.weight == "1/6" for t in b.terms)
    eb = gefkit.extended_bell("ab")
    assert gefkit.gef_pure_tri(eb).total == pytest.approx(5 / 6, abs=1e-9)
    assert gefkit.gef_pure_tri(eb, modified=True).total == pytest.approx(1.0, abs=1e-9)


def test_roof_mixed_tri():
    # Pointer mixture of |000> and |111> is separable: roof finds ~0.
    m = np.zeros((8, 8), dtype=complex)
    m[0, 0] = m[7, 7] = 0.5
    rho = gefkit.DensityMatrix(m, [2, 2, 2])
    res = gefkit.gef_mixed_tri(rho, restarts=4, max_evals=800, seed=3)
    assert res.value < 1e-5
    assert res.is_estimate
    probs = res.decomposition.probabilities
    assert sum(probs) == pytest.approx(1.0, abs=1e-9)


def test_registry():
    ids = gefkit.inequality_ids()
    assert "T1" in ids and "M4L0" in ids
    records = gefkit.run_registry(gefkit.ghz(3), seed=5)
    assert {r["id"] for r in records} >= {"T1", "P3U", "P3L"}
    assert all(r["verdict"] == "holds" for r in records)


def test_coefficients():
    rep = gefkit.derive_coefficients()
    assert rep["all_match"]
    names = [s["name"] for s in rep["steps"]]
    assert names == ["TRI-U", "P4U1", "P4U2", "P4U3", "P4LM", "P4LF"]
    p4u1 = rep["steps"][1]["coefficients"]
    assert p4u1 == {"S3": "1/14", "S2": "2/21", "S1": "1/4"}


def test_state_json_round_trip():
    psi = gefkit.random_haar_pure([2, 2], seed=11)
    text = gefkit.state_to_json(psi)
    back = gefkit.state_from_json(text)
    assert np.array_equal(back.amplitudes, psi.amplitudes)
