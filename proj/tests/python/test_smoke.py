"""Smoke tests for the python module.

The module directory is taken from HQST_MODULE_DIR when running against a
plain CMake build tree; an installed wheel works without it.
"""

import math
import os
import subprocess
import sys

import pytest

_mod_dir = os.environ.get("HQST_MODULE_DIR")
if _mod_dir:
    sys.path.insert(0, _mod_dir)

try:
    import _core as hqst  # build-tree layout
except ImportError:  # pragma: no cover - installed-package layout
    hqst = pytest.importorskip("hqst")

W0 = 2 * math.pi * 5e9


def test_adjacency_structure():
    a = hqst.adjacency_matrix(3)
    assert a.shape == (8, 8)
    assert a.sum() == 2 * hqst.edge_count(3)
    assert (a == a.T).all()
    total = sum(hqst.bit_flip_matrix(3, j) for j in (1, 2, 3))
    assert (total == a).all()


def test_transfer_basics():
    T = hqst.transfer_time(0.005, W0)
    assert T == pytest.approx(20e-9, rel=1e-12)
    assert abs(hqst.corner_amplitude(4, 0.005, W0, T)) == pytest.approx(1.0, abs=1e-12)
    f = hqst.transfer_fidelity(3, 0.005, W0, 0, 7, 0.0, 1.0, T, order=1)
    assert f == pytest.approx(1.0, abs=1e-10)


def test_correction_improves_error():
    unc = hqst.transfer_error(10, 0.005, W0, corrected=False, calibrated=False)
    cor = hqst.transfer_error(10, 0.005, W0, corrected=True)
    assert unc / cor > 100
    assert unc == pytest.approx(hqst.predicted_transfer_error(10, 0.005, False), rel=0.25)


def test_decoherence_formulas():
    dec = hqst.DecoherenceParams(120e-9, 120e-9)
    assert dec.t2() == pytest.approx(80e-9, rel=1e-12)
    assert hqst.fidelity_lower_bound(20e-9, 120e-9, 80e-9) == pytest.approx(0.8207, abs=1e-4)
    assert hqst.average_fidelity(10, 0.005, W0, dec) >= 0.8
    grid = [i * 40e-9 / 20 for i in range(21)]
    rho = hqst.integrate_target_population(2, 0.005, W0, dec, grid)
    closed = [hqst.target_population_closed(t, 2, 0.005, W0, 1.0, dec) for t in grid]
    assert max(abs(a - b) for a, b in zip(rho, closed)) < 0.03


def test_disorder_reproducibility():
    mean1, se1, trials1 = hqst.disorder_average_fidelity(5, 0.005, W0, 0.0015, 30, seed=4)
    mean2, _, trials2 = hqst.disorder_average_fidelity(5, 0.005, W0, 0.0015, 30, seed=4, threads=3)
    assert trials1 == trials2
    assert mean1 == mean2
    assert 0.0 < mean1 <= 1.0 and se1 >= 0.0


def test_oracle_matches_subspace():
    T = hqst.transfer_time(0.01, W0)
    full = hqst.oracle_transfer_fidelity(2, 0.01, W0, 0.6, 0.8j, T)
    sub = hqst.transfer_fidelity(2, 0.01, W0, 0, 3, 0.6, 0.8j, T)
    assert full == pytest.approx(sub, abs=1e-9)


def test_cli_roundtrip():
    cli = os.environ.get("HQST_CLI")
    if not cli:
        pytest.skip("HQST_CLI not set")
    out = subprocess.run(
        [cli, "bound", "--d", "2", "--no-timestamp"], capture_output=True, text=True, check=True
    )
    assert "lower_bound" in out.stdout
