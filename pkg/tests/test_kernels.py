import os
import subprocess
import sys

import numpy as np
import pytest

from acfgeom import kernels
from acfgeom.algebra.finite_field import GF

pytestmark = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")

NB, NP = kernels.NUMBA, kernels.NUMPY


@pytest.mark.parametrize("p, k", [(2, 1), (2, 5), (3, 3), (5, 2), (7, 2), (11, 1)])
def test_tables_agree(p, k):
    F = GF(p, k)
    gen = F.coords(F.generator)
    e1 = NB.exp_table(p, k, list(F.modulus), gen)
    e2 = NP.exp_table(p, k, list(F.modulus), gen)
    assert np.array_equal(e1, e2)
    for a, b in zip(NB.zech(e1, p), NP.zech(e2, p)):
        assert np.array_equal(a, b)


@pytest.mark.parametrize("p, k", [(2, 4), (3, 2), (5, 3)])
def test_arithmetic_agrees(p, k):
    F = GF(p, k)
    rng = np.random.default_rng(p * 10 + k)
    a = rng.integers(0, F.q, (40, 7))
    b = rng.integers(0, F.q, (40, 7))
    assert np.array_equal(NB.mul(a, b, F.log, F.exp), NP.mul(a, b, F.log, F.exp))
    assert np.array_equal(NB.add(a, b, F.log, F.exp, F.zech), NP.add(a, b, F.log, F.exp, F.zech))
    for e in (0, 1, 2, 5, F.q - 1):
        assert np.array_equal(NB.pow(a, e, F.log, F.exp), NP.pow(a, e, F.log, F.exp))
    # scalar path in GF agrees with the vector kernels
    for x, y in zip(a.ravel()[:50], b.ravel()[:50]):
        assert F.add(int(x), int(y)) == int(NP.add(np.array([x]), np.array([y]), F.log, F.exp, F.zech)[0])


@pytest.mark.parametrize("q", [4, 7, 8, 9])
def test_slope_kernels_agree(q):
    from acfgeom.oracle import field_of_order
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    for _ in range(30):
        m = np.sort(rng.choice(q, rng.integers(0, q + 1), replace=False))
        s1 = NB.slope_set(m, F.log, F.exp, F.zech, F.neg_table)
        s2 = NP.slope_set(m, F.log, F.exp, F.zech, F.neg_table)
        assert np.array_equal(s1, s2)
        for a in range(q):
            assert bool(NB.injective(m, a, F.log, F.exp, F.zech)) == bool(
                NP.injective(m, a, F.log, F.exp, F.zech))
    assert tuple(NB.sweep(q, F.log, F.exp, F.zech, F.neg_table)) == tuple(
        NP.sweep(q, F.log, F.exp, F.zech, F.neg_table))


def test_env_flag_selects_numpy():
    env = dict(os.environ, ACFGEOM_DISABLE_NUMBA="1")
    code = ("from acfgeom import kernels, oracle; "
            "r = oracle.exhaustive_trick_sweep(7); "
            "print(kernels.ACTIVE.name, r.cover, r.injection, r.failures)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    from acfgeom.oracle import exhaustive_trick_sweep
    r = exhaustive_trick_sweep(7)
    assert out == ["numpy", str(r.cover), str(r.injection), str(r.failures)]


def test_default_uses_numba():
    if os.environ.get("ACFGEOM_DISABLE_NUMBA"):
        pytest.skip("fallback forced by the environment")
    assert kernels.ACTIVE is NB
