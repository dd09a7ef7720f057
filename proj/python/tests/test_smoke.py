import cmath
import json
import math
import os
import subprocess

import numpy as np
import pytest

import phasekit as pk


def test_structure_function():
    assert pk.structure_function("-1/3", 3) == pytest.approx([0, 1, 4 / 3, 1])
    assert pk.dimension(pk.Kappa(-1, 3)) == 4
    assert pk.dimension("0") is None
    with pytest.raises(ValueError):
        pk.structure_function("-2/3", 2)


def test_representation_commutator():
    rep = pk.representation("-1/3", 0.7, 4)
    a, b = rep.a_minus, rep.a_plus
    assert isinstance(a, np.ndarray)
    n = np.diag(np.arange(4))
    assert np.max(np.abs(a @ b - b @ a - (np.eye(4) - 2 / 3 * n))) < 1e-12
    residual, trace = pk.commutator_residual(rep)
    assert residual < 1e-12 and abs(trace) < 1e-12
    assert rep.to_json()["kind"] == "finite"


def test_phase_states_and_evolution():
    rep = pk.representation((-1, 4), 0.2, 5)
    e = pk.phase_operator(rep)
    for st in pk.phase_states(5, (-1, 4), 0.2):
        v = st.amplitudes
        assert np.allclose(e @ v, cmath.exp(2j * math.pi * st.index / 5) * v, atol=1e-12)
        moved = pk.evolve(st, 0.9)
        assert moved.phi == pytest.approx(1.1)
    a, b = pk.phase_states(5, (-1, 4), 0.2)[:2]
    assert abs(pk.overlap(a, b)) < 1e-12


def test_gauss_and_mubs():
    assert pk.gauss_sum(2, 0, 3) == pytest.approx(1j * math.sqrt(3))
    qubit = pk.mub_set(2)
    assert qubit["complete"] and len(qubit["bases"]) == 3
    five = pk.mub_set(5, route="truncated", kappa=1)
    assert five["complete"]
    assert not pk.mub_set(4)["complete"]


def test_potentials():
    assert pk.energies("morse:l=2", 3) == [0.0, 1.5, 2.0]
    assert pk.truncation_order("morse:l=4") == 5
    assert pk.truncation_order("ho") is None
    report = pk.potential_report("pt:u=2,v=2", 4)
    assert report["weights"][2] == pytest.approx(15.0)
    with pytest.raises(ValueError):
        pk.energies("pt:u=0.5,v=2", 3)


def test_verify_rows_pass():
    rows = pk.verify()
    assert rows and all(r["passed"] for r in rows)


@pytest.mark.skipif("PHASEKIT_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_json_matches_module():
    out = subprocess.run(
        [os.environ["PHASEKIT_CLI"], "rep", "--kappa", "-1/3", "--phi", "0.7"],
        check=True, capture_output=True, text=True,
    ).stdout
    assert json.loads(out) == pk.representation("-1/3", 0.7, 4).to_json()
