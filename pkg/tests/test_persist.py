import json

import numpy as np
import pytest

from lgbundle import BundleSpec, CoeffVector, load_critset, save_critset, solve_crit
from lgbundle.persist import critset_from_dict, critset_to_dict

from conftest import labeled
from oracles import random_annulus


def test_round_trip_is_bit_exact(tmp_path, spec):
    cs = labeled(spec.s, spec.a)
    path = tmp_path / "cs.json"
    save_critset(cs, path)
    back = load_critset(path)
    assert np.array_equal(back.array(), cs.array())
    assert np.array_equal(back.coeffs.as_array(), cs.coeffs.as_array())
    assert back.labels == cs.labels and back.tol == cs.tol and back.spec == cs.spec


def test_random_coefficients_survive(tmp_path):
    spec = BundleSpec(2, (0, 2))
    c = CoeffVector.from_array(spec, random_annulus(np.random.default_rng(2), 6))
    cs = solve_crit(spec, c)
    back = critset_from_dict(json.loads(json.dumps(critset_to_dict(cs))))
    assert np.array_equal(back.coeffs.as_array(), c.as_array())
    assert np.array_equal(back.array(), cs.array())


def test_corrupted_points_rejected():
    d = critset_to_dict(labeled(1, (1,)))
    d["points"][0]["z"][0][0] += 1e-3
    with pytest.raises(ValueError):
        critset_from_dict(d)
    critset_from_dict(d, check=False)
