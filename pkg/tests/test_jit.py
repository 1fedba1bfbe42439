"""Compiled kernels and the plain numpy fallback must agree bit for bit."""

import json
import os
import subprocess
import sys

import pytest

from simplecryst._jit import HAVE_NUMBA

PROBE = r"""
import hashlib, json
from simplecryst.anneal import AnnealConfig, inflate, simplify
from simplecryst.catalog import catalog
from simplecryst.census import census_3manifold
from simplecryst.complex import boundary_simplex, realize
from simplecryst.graph import canonical_code
from simplecryst.moves import available_moves
from simplecryst._jit import HAVE_NUMBA

h = lambda b: hashlib.sha256(b).hexdigest()
C, _ = inflate(realize(catalog("cp2")), 12, seed=3)
res = simplify(boundary_simplex(4), AnnealConfig(seed=5, max_steps=300))
print(json.dumps({
    "numba": HAVE_NUMBA,
    "code": h(canonical_code(catalog("s2xs2"))),
    "roots": h(C._roots.tobytes()),
    "f": list(C.f_vector),
    "moves": [str(m) for m in available_moves(C)],
    "census6": sorted(h(canonical_code(G)) for G in census_3manifold(6)),
    "log": h(res.log.to_text().encode()),
}))
"""


def probe(disable: bool) -> dict:
    env = dict(os.environ)
    env["SIMPLECRYST_DISABLE_JIT"] = "1" if disable else "0"
    out = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(out.stdout)


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
def test_fallback_matches_compiled():
    fast, slow = probe(False), probe(True)
    assert fast.pop("numba") is True and slow.pop("numba") is False
    assert fast == slow
