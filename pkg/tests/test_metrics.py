import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hoc7.errors import DomainError
from hoc7.metrics import convergence_order, error_norms


def test_hand_values():
    rep = error_norms([1.0, 2.0, 3.0], [1.0, 2.5, 1.0], 0.5, x=[0.0, 0.5, 1.0])
    assert rep.linf == 2.0
    assert rep.l2 == math.sqrt(0.5 * (0.25 + 4.0))
    assert rep.pointwise[2] == (1.0, 3.0, 1.0, 2.0)
    assert rep.reliable


def test_zero_error():
    rep = error_norms(np.ones(5), np.ones(5), 0.1)
    assert rep.l2 == 0.0 and rep.linf == 0.0


def test_length_mismatch():
    with pytest.raises(DomainError):
        error_norms([1.0, 2.0], [1.0], 0.1)


@given(arrays(np.float64, st.integers(1, 50), elements=st.floats(-1e3, 1e3)), st.floats(1e-4, 1.0))
@settings(max_examples=100, deadline=None)
def test_norm_relations(e, h):
    rep = error_norms(e, np.zeros_like(e), h)
    assert rep.linf == np.max(np.abs(e))
    # L2 <= sqrt(n h) Linf
    assert rep.l2 <= math.sqrt(e.size * h) * rep.linf * (1 + 1e-12)
    # deterministic: same input, same bits
    assert error_norms(e, np.zeros_like(e), h).l2 == rep.l2


def test_convergence_orders():
    data = [(0.1, 1e-2), (0.05, 1e-2 / 16), (0.025, 1e-2 / 256)]
    assert convergence_order(data) == pytest.approx([4.0, 4.0])


def test_convergence_order_zero_error_gives_none():
    assert convergence_order([(0.2, 1e-3), (0.1, 0.0)]) == [None]


def test_convergence_order_validation():
    with pytest.raises(DomainError):
        convergence_order([(0.1, 1e-3)])
    with pytest.raises(DomainError):
        convergence_order([(0.1, 1e-3), (0.04, 1e-4)])
