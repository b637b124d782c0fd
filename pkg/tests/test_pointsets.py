import json
import math

import numpy as np
import pytest

from capdisc.errors import DomainError, PointFileError, UnsupportedSpaceError
from capdisc.pointsets import KINDS, PointSet, generate, read_points, write_points
from capdisc.regression import FIB_MIN_DIST, UNIFORM_256_WINDOW
from capdisc.spaces import SUPPORTED, Sphere, cos_matrix
from capdisc.spectral import discrepancy_l2


def _min_distance(space, P):
    T = cos_matrix(space, P, P)
    np.fill_diagonal(T, -1.0)
    return float(np.arccos(T.max()))


class TestGenerate:
    def test_single_uniform(self):
        ps = generate("s2", "uniform", 1, seed=3)
        assert ps.n == 1 and ps.weights.tolist() == [1.0]

    def test_fibonacci_separation(self):
        ps = generate("s2", "fibonacci", 1000)
        assert _min_distance(ps.space, ps.points) >= FIB_MIN_DIST / math.sqrt(1000)

    def test_spiral_separation(self):
        ps = generate("s2", "spiral", 1000)
        assert _min_distance(ps.space, ps.points) >= FIB_MIN_DIST / math.sqrt(1000)

    @pytest.mark.parametrize("space", SUPPORTED, ids=str)
    def test_cap_cluster_diameter(self, space):
        ps = generate(space, "cap_cluster", 100, seed=5, cap=math.pi / 10)
        T = cos_matrix(space, ps.points, ps.points)
        assert np.arccos(T.min()) <= math.pi / 5 + 1e-12
        o = np.zeros(space.coord_dim)
        o[0] = 1.0
        assert np.all(np.arccos(cos_matrix(space, ps.points, o[None])) <= math.pi / 10 + 1e-12)

    @pytest.mark.parametrize("kind", KINDS)
    def test_deterministic(self, kind):
        a, b = generate("s2", kind, 64, seed=9), generate("s2", kind, 64, seed=9)
        np.testing.assert_array_equal(a.points, b.points)

    def test_seeds_differ(self):
        assert not np.array_equal(generate("cp2", "uniform", 8, 1).points, generate("cp2", "uniform", 8, 2).points)

    @pytest.mark.parametrize("kind", ["fibonacci", "spiral"])
    def test_structured_only_on_s2(self, kind):
        with pytest.raises(DomainError):
            generate("s3", kind, 10)

    def test_errors(self):
        with pytest.raises(DomainError):
            generate("s2", "halton", 10)
        with pytest.raises(DomainError):
            generate("s2", "uniform", 0)
        with pytest.raises(UnsupportedSpaceError):
            generate("op2", "uniform", 4)

    def test_uniform_256_window(self):
        ps = generate("s2", "uniform", 256, seed=1)
        value = discrepancy_l2(ps.space, ps.points, ps.weights, "1/3").value
        lo, hi = UNIFORM_256_WINDOW
        assert lo <= value <= hi


class TestFiles:
    @pytest.mark.parametrize("space", SUPPORTED, ids=str)
    def test_round_trip(self, space, tmp_path):
        ps = generate(space, "uniform", 20, seed=4)
        path = tmp_path / "p.json"
        write_points(path, ps)
        back = read_points(path)
        assert back.space == ps.space
        np.testing.assert_allclose(back.points, ps.points, rtol=0, atol=1e-15)
        np.testing.assert_array_equal(back.weights, ps.weights)
        assert back.provenance == ps.provenance

    def test_missing_weights(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps({"space": "s2", "points": [[1, 0, 0], [0, 1, 0]]}))
        assert read_points(path).weights.tolist() == [0.5, 0.5]

    @pytest.mark.parametrize(
        "payload",
        [
            {"space": "s2", "points": [[1, 0, 0], [0, 1, 0]], "weights": [1.1, -0.1]},
            {"space": "s2", "points": [[1, 0, 0]], "weights": [0.5]},
            {"space": "s2", "points": [[1, 0, 0.1]]},
            {"space": "s2", "points": []},
            {"space": "s2"},
            {"points": [[1, 0, 0]]},
            {"space": "cp2", "points": [[1, 0, 0]]},
            {"space": "op2", "points": [[1] + [0] * 23]},
            [1, 2],
        ],
    )
    def test_rejects(self, payload, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(PointFileError):
            read_points(path)

    def test_not_json(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text("{nope")
        with pytest.raises(PointFileError):
            read_points(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(PointFileError):
            read_points(tmp_path / "absent.json")

    def test_weights_renormalized_within_tolerance(self):
        ps = PointSet(Sphere(2), [[1, 0, 0], [0, 1, 0]], [0.5, 0.5 + 5e-7])
        assert math.fsum(ps.weights) == pytest.approx(1.0, abs=1e-15)
