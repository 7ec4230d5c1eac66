"""Fixture-generator checks.

The generated files are validated through the primary package's public
surfaces only: the FCIDUMP format and the `adaptlab fci` CLI.
"""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from fixturegen.gen import gen_fixture
from fixturegen.molecules import DEFAULT_GEOMETRIES
from fixturegen.scf import ScfError, run_rhf

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
FIXTURE_DIR = os.path.join(REPO_ROOT, "fixtures")


def adaptlab_fci(path: str) -> dict:
    out = subprocess.run(
        [sys.executable, "-m", "adaptlab.cli", "fci", path, "--json"],
        capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


class TestEngine:
    def test_h2_literature_values(self):
        """Szabo-Ostlund H2 at 1.4 bohr: E_HF(total) = -1.1167."""
        r = run_rhf(["H", "H"], [[0, 0, 0], [0, 0, 1.4 * 0.529177210903]])
        assert r.e_total == pytest.approx(-1.1167, abs=2e-4)

    def test_literature_rhf_energies(self):
        from fixturegen.molecules import beh2, h2o, lih, nh3

        anchors = [
            (h2o(0.9572), -74.963),
            (lih(1.60), -7.8619),
            (nh3(1.0116), -55.454),
            (beh2(1.3264), -15.560),
        ]
        for (symbols, coords), want in anchors:
            r = run_rhf(symbols, coords)
            assert r.e_total == pytest.approx(want, abs=0.01)

    def test_rotation_invariance(self):
        from fixturegen.molecules import h2o

        symbols, coords = h2o(0.9572)
        base = run_rhf(symbols, coords).e_total
        rng = np.random.default_rng(1)
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        rotated = (np.asarray(coords) @ q.T).tolist()
        assert run_rhf(symbols, rotated).e_total == pytest.approx(base, abs=1e-10)

    def test_odd_electron_count_rejected(self):
        with pytest.raises(ScfError):
            run_rhf(["H"], [[0.0, 0.0, 0.0]])


class TestGenFixture:
    def test_unknown_molecule(self, tmp_path):
        with pytest.raises(ValueError):
            gen_fixture("xe2", 1.0, str(tmp_path))

    def test_unknown_basis(self, tmp_path):
        with pytest.raises(ValueError):
            gen_fixture("h2", 0.74, str(tmp_path), basis="cc-pVDZ")

    def test_deterministic_naming(self, tmp_path):
        path = gen_fixture("h2", 0.74, str(tmp_path))
        assert os.path.basename(path) == "h2_0.74.fcidump"

    def test_h2_fci_sanity_band(self, tmp_path):
        path = gen_fixture("h2", 0.74, str(tmp_path))
        doc = adaptlab_fci(path)
        assert doc["route_difference"] <= 1e-10
        assert math.isclose(doc["e_fci_qubit"], -1.137, abs_tol=1e-3)

    def test_regeneration_matches_committed(self, tmp_path):
        """Regenerated integrals agree with the committed fixture to 1e-9."""
        path = gen_fixture("lih", 3.24, str(tmp_path))
        fresh = open(path).read().splitlines()
        committed = open(os.path.join(FIXTURE_DIR, "lih_3.24.fcidump")).read().splitlines()
        assert len(fresh) == len(committed)
        compared = 0
        for a, b in zip(fresh, committed):
            fa, fb = a.split(), b.split()
            if len(fa) != 5 or not fa[0][0] in "+-0123456789.":
                assert a == b  # header lines are verbatim
                continue
            assert fa[1:] == fb[1:]
            assert abs(float(fa[0]) - float(fb[0])) <= 1e-9
            compared += 1
        assert compared > 100


class TestCommittedFixtures:
    @pytest.mark.parametrize(
        "name,lengths", sorted(DEFAULT_GEOMETRIES.items()), ids=sorted(DEFAULT_GEOMETRIES)
    )
    def test_all_committed_and_parseable(self, name, lengths):
        for r in lengths:
            path = os.path.join(FIXTURE_DIR, f"{name}_{r:.2f}.fcidump")
            assert os.path.exists(path), f"missing committed fixture {path}"

    def test_dual_route_agreement_small_fixtures(self):
        """Dual-route FCI agreement via the primary CLI (14-qubit and below,
        minus the slow qubit-route cases which the primary suite covers)."""
        for name in ("h2_0.74", "h4_1.50", "lih_3.24", "hf_1.80"):
            doc = adaptlab_fci(os.path.join(FIXTURE_DIR, f"{name}.fcidump"))
            assert doc["route_difference"] <= 1e-10, name
