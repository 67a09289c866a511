"""The compiled core and the numpy fallback must agree to rounding level."""
import numpy as np
import pytest

from airyquench import _kernels_py as kpy
from airyquench._contour import Family, plan_legs

kcy = pytest.importorskip("airyquench._kernels_cy")


def test_airy_parity():
    rng = np.random.default_rng(1)
    x = np.concatenate([rng.uniform(-60, 20, 5000), [-8.0, 8.0, -7.9999, 8.0001, 0.0]])
    a1, p1 = kpy.airy_ai_arr(x)
    a2, p2 = kcy.airy_ai_arr(x)
    assert np.max(np.abs(a1 - a2)) < 1e-13
    assert np.max(np.abs(p1 - p2)) < 1e-12


def test_faddeeva_parity():
    rng = np.random.default_rng(2)
    z = rng.uniform(0, 25, 4000) * np.exp(1j * rng.uniform(0, np.pi, 4000))
    z = np.where(z.imag < 0, np.conj(z), z)
    w1 = kpy.faddeeva_upper(z)
    w2 = kcy.faddeeva_upper(z)
    assert np.max(np.abs(w1 - w2) / np.abs(w1)) < 1e-12


@pytest.mark.parametrize("window", [False, True])
def test_direct_sum_parity(window):
    rng = np.random.default_rng(3)
    src = rng.normal(size=3000) + 1j * rng.normal(size=3000)
    xo = np.linspace(-30.0, 30.0, 500)
    args = (0.0, 0.008, src, xo, 40.0, -0.7, window, 2.5, 0.25)
    d1 = kpy.direct_sum(*args)
    d2 = kcy.direct_sum(*args)
    scale = np.max(np.abs(d1)) + 1e-30
    assert np.max(np.abs(d1 - d2)) / scale < 1e-10


@pytest.mark.parametrize("y,t", [(3.0, 1.0), (-40.0, 10.0), (20.0, 0.01), (60.0, 5.0)])
def test_contour_parity(y, t):
    a_n = -9.022650853340980
    fam = Family(y, t, 1.0, a_n, 1.0, 0.5)
    legs, _ = plan_legs(fam)
    legs = np.asarray(legs, dtype=float)
    c1 = kpy.contour_sum(legs, 1.0, a_n, 1.0, 0.5, t, y)
    c2 = kcy.contour_sum(legs, 1.0, a_n, 1.0, 0.5, t, y)
    assert abs(c1 - c2) < 1e-12 * max(abs(c1), 1.0)
