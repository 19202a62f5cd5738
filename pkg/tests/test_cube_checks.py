import random

import pytest

from bckit import cube_checks as cc
from bckit.combinatorics import RangeError, UnknownCheck
from bckit.cubes import exactness_failure, face
from bckit.simplicial import cub, random_s_element


def _small(cid):
    names, _, lows, _ = cc.CATALOG[cid]
    return {name: max(low, 1) for name, low in zip(names, lows)}


@pytest.mark.parametrize("cid", sorted(cc.CATALOG))
def test_catalog_passes_at_small_parameters(cid):
    result = cc.check_cube_identity(cid, _small(cid), trials=5, seed=3)
    assert result.passed, result.witness


@pytest.mark.parametrize("cid,params,trials", [
    ("L31", {"n": 4}, 100),
    ("BOUNDARY-SQ", {"n": 4}, 100),
    ("P52-LEFT", {"n": 1, "m": 1}, 50),
    ("L33", {"n": 2}, 20),
    ("CHAIN-SPLIT", {"n": 3}, 1),
])
def test_reference_runs(cid, params, trials):
    result = cc.check_cube_identity(cid, params, trials=trials, seed=0)
    assert result.passed, result.witness


def test_random_cubes_are_exact_and_seeded():
    for n in range(4):
        a = cc.random_cube(n, random.Random(n))
        assert exactness_failure(a) is None
        assert a == cc.random_cube(n, random.Random(n))
        assert max(a.dims()) <= cc.CUBE_DIM


def test_trial_rng_depends_on_every_input():
    base = cc.trial_rng(0, "L31", {"n": 2}, 0).random()
    assert base == cc.trial_rng(0, "L31", {"n": 2}, 0).random()
    others = [cc.trial_rng(1, "L31", {"n": 2}, 0), cc.trial_rng(0, "L32", {"n": 2}, 0),
              cc.trial_rng(0, "L31", {"n": 3}, 0), cc.trial_rng(0, "L31", {"n": 2}, 1)]
    assert all(r.random() != base for r in others)


def test_failing_trial_is_reported(monkeypatch):
    def body(rng, n):
        return "boom" if rng.random() < 0.5 else None

    monkeypatch.setitem(cc.CATALOG, "BOUNDARY-SQ", (("n",), body, (0,), False))
    first = cc.evaluate_cube_identity("BOUNDARY-SQ", {"n": 1}, trials=50, seed=9)
    assert first.startswith("trial ") and first.endswith(": boom")
    result = cc.check_cube_identity("BOUNDARY-SQ", {"n": 1}, trials=50, seed=9)
    assert result.witness == first and not result.passed


def test_validation():
    with pytest.raises(UnknownCheck):
        cc.check_cube_identity("NOPE", {"n": 1})
    with pytest.raises(RangeError):
        cc.check_cube_identity("L33", {"n": 3})
    with pytest.raises(RangeError):
        cc.check_cube_identity("L32", {"n": 1})
    with pytest.raises(RangeError):
        cc.check_cube_identity("P52-LEFT", {"n": 1})
    with pytest.raises(RangeError):
        cc.check_cube_identity("L31", {"n": 2}, trials=0)


def test_bw_faces_match_cub():
    e = random_s_element(4, 2, 12)
    for i in range(1, 4):
        for j, want in cc.bw_faces(e, i).items():
            assert face(cub(e), i, j) == want
