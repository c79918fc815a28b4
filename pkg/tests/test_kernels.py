import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extransit import _kernels_py as pure
from extransit import kernels

try:
    from extransit import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="extension not built")
ints = st.integers(min_value=-10**6, max_value=10**6)
# kernels take trimmed tuples (no trailing zeros)
polys = st.lists(ints, max_size=6).map(pure._trim)
nonzero = st.lists(ints, min_size=1, max_size=5).filter(any).map(pure._trim)


@needs_compiled
@given(polys, polys)
def test_backends_agree_on_ring_ops(a, b):
    for name in ("padd", "psub", "pmul"):
        assert getattr(pure, name)(a, b) == getattr(compiled, name)(a, b)


@needs_compiled
@given(nonzero, nonzero)
def test_backends_agree_on_gcd_and_division(a, b):
    g1, g2 = pure.pgcd(a, b), compiled.pgcd(a, b)
    assert g1 == g2
    prod = pure.pmul(a, b)
    assert pure.pdivexact(prod, b) == compiled.pdivexact(prod, b) == a


@given(nonzero, nonzero, nonzero)
def test_gcd_divides(a, b, c):
    g = kernels.pgcd(kernels.pmul(a, c), kernels.pmul(b, c))
    # c divides the gcd up to content
    kernels.pdivexact(g, kernels.pprimitive(c))


def test_pure_backend_selected_by_env():
    env = dict(os.environ, EXTRANSIT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import extransit; print(extransit.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_backends_give_identical_reports():
    from extransit.report import body_of
    bodies = []
    for pure_flag in ("1", "0"):
        env = dict(os.environ, EXTRANSIT_PURE_PYTHON=pure_flag)
        env.pop("EXTRANSIT_OUTPUT_DIR", None)
        p = subprocess.run([sys.executable, "-m", "extransit", "verify", "--model", "t24",
                            "--order", "3", "--no-ledger"],
                           env=env, capture_output=True, text=True)
        assert p.returncode == 0, p.stderr
        bodies.append(body_of(p.stdout))
    assert bodies[0] == bodies[1]
