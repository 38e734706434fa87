"""JSON persistence of critical sets.

Complex numbers are stored as [re, im] pairs.  Floats go through ``repr``
(Python's shortest round-trip form), so a saved set reloads bit-exactly.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .bundle import BundleSpec, validate_spec
from .lg_system import CoeffVector, CritPoint, CritSet, is_converged


def _c(x) -> list[float]:
    x = complex(x)
    return [x.real, x.imag]


def _uc(pair) -> complex:
    return complex(pair[0], pair[1])


def _plain(value):
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.generic):
        return _plain(value.item())
    return str(value)


def coeffs_to_dict(c: CoeffVector) -> dict:
    return {
        "c_z": [_c(x) for x in c.c_z],
        "c_w": [_c(x) for x in c.c_w],
        "c_v0": _c(c.c_v0),
        "c_e0": _c(c.c_e0),
    }


def coeffs_from_dict(d: dict) -> CoeffVector:
    return CoeffVector(
        np.array([_uc(x) for x in d["c_z"]], dtype=complex),
        np.array([_uc(x) for x in d["c_w"]], dtype=complex),
        _uc(d["c_v0"]),
        _uc(d["c_e0"]),
    )


def critset_to_dict(cs: CritSet) -> dict:
    return {
        "spec": {"s": cs.spec.s, "a": list(cs.spec.a)},
        "coeffs": coeffs_to_dict(cs.coeffs),
        "tol": cs.tol,
        "points": [
            {
                "z": [_c(x) for x in p.z],
                "w": [_c(x) for x in p.w],
                "residual": _plain(p.residual),
                "label": list(p.label) if p.label is not None else None,
            }
            for p in cs.points
        ],
        "meta": _plain(cs.meta),
    }


def critset_from_dict(d: dict, check: bool = True) -> CritSet:
    """Rebuild a CritSet; with ``check`` every residual is re-verified."""
    spec = validate_spec(d["spec"]["s"], d["spec"]["a"])
    coeffs = coeffs_from_dict(d["coeffs"])
    pts = []
    for p in d["points"]:
        z = np.array([_uc(x) for x in p["z"]], dtype=complex)
        w = np.array([_uc(x) for x in p["w"]], dtype=complex)
        res = p.get("residual")
        label = tuple(p["label"]) if p.get("label") is not None else None
        pts.append(CritPoint(z, w, float("nan") if res is None else float(res), label))
    cs = CritSet(spec, coeffs, tuple(pts), float(d["tol"]), dict(d.get("meta") or {}))
    if check and len(cs) and not np.all(is_converged(spec, coeffs, cs.array(), cs.tol)):
        raise ValueError("stored points do not satisfy the system at the stored tolerance")
    return cs


def dumps(obj) -> str:
    return json.dumps(_plain(obj), indent=2) + "\n"


def save_critset(cs: CritSet, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(critset_to_dict(cs)))


def load_critset(path, check: bool = True) -> CritSet:
    with open(path) as fh:
        return critset_from_dict(json.load(fh), check=check)


def spec_to_dict(spec: BundleSpec) -> dict:
    return {"s": spec.s, "a": list(spec.a), "r": spec.r, "N": spec.N}
