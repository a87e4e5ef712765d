"""The compiled and fallback kernels must agree bit for bit."""

import numpy as np
import pytest

from morphclust import _backend, _pykernels
from morphclust.components import LabeledGrid

pytestmark = pytest.mark.skipif("cython" not in _backend.AVAILABLE, reason="extension not built")


@pytest.fixture
def ck():
    return _backend.AVAILABLE["cython"]


SHAPES = [(40, 40, 1), (9, 11, 7)]


@pytest.mark.parametrize("shape", SHAPES)
def test_dilate_and_label(ck, rng, shape):
    offs = np.array([(0, 0, 0), (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    for _ in range(10):
        occ = (rng.random(shape) < rng.uniform(0.05, 0.6)).astype(np.uint8)
        np.testing.assert_array_equal(ck.dilate(occ, offs), _pykernels.dilate(occ, offs))
        for full in (False, True):
            a, na = ck.label(occ, full)
            b, nb = _pykernels.label(occ, full)
            assert na == nb
            np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize("shape", SHAPES)
def test_edt_and_nearest(ck, rng, shape):
    for _ in range(10):
        lab = np.where(rng.random(shape) < 0.03, rng.integers(1, 5, shape), 0).astype(np.int32)
        lab = LabeledGrid.from_labels(np.unique(lab, return_inverse=True)[1].reshape(shape)).labels
        if not lab.any():
            continue
        d1, s1 = ck.edt(lab)
        d2, s2 = _pykernels.edt(lab)
        np.testing.assert_array_equal(d1, d2)
        np.testing.assert_array_equal(s1, s2)
        pts = rng.uniform(-1, np.array(shape), (80, 3))
        if shape[2] == 1:
            pts[:, 2] = 0
        # integer points exercise exact ties
        pts[:20] = np.round(pts[:20])
        for a, b in zip(ck.nearest_brute(pts, lab), _pykernels.nearest_brute(pts, lab)):
            np.testing.assert_array_equal(a, b)
        for a, b in zip(ck.nearest_window(pts, lab, d1), _pykernels.nearest_window(pts, lab, d1)):
            np.testing.assert_array_equal(a, b)
        for a, b in zip(ck.nearest_window(pts, lab, d1), ck.nearest_brute(pts, lab)):
            np.testing.assert_array_equal(a, b)
