from math import comb

import pytest

from multifan.algebra import (
    HilbertFunction,
    annihilator_basis,
    classes_equal,
    d_vector,
    derivative_matrix,
    hilbert,
    is_editable,
    var_dimension,
)
from multifan.catalog import (
    gamma_fan,
    octahedron_fan,
    square_fan,
    suspended_torus_collinear,
    suspended_torus_noncollinear,
    torus_fan,
)
from multifan.errors import NotSuspensionShaped, SymmetryViolation, ZeroVolumePolynomial
from multifan.exactmath import SparsePolynomial
from multifan.fan import MultiFan, interval_fan, join, suspend
from multifan.simplicial import SimplicialChain, point_cycle
from multifan.volume import volume_polynomial


def ops(text, m):
    return SparsePolynomial.from_text(text, m, var="d")


def test_var_dimension_examples():
    p = SparsePolynomial.from_text("c1^3", 2)
    assert [var_dimension(p, j) for j in range(4)] == [1, 1, 1, 1]
    sq = volume_polynomial(square_fan())
    assert var_dimension(sq, 1) == 2
    assert var_dimension(volume_polynomial(gamma_fan(independent=True)), 1) == 4


def test_derivative_matrix_shape_and_order():
    sq = volume_polynomial(square_fan())
    rows, cols, matrix = derivative_matrix(sq, 1)
    assert rows == [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    assert cols == sorted(cols, key=lambda mu: (sum(mu), mu), reverse=True)
    assert len(matrix) == 4 and len(matrix[0]) == len(cols)


def test_d_vector_examples():
    assert d_vector(gamma_fan(independent=False)) == (1, 2, 1)
    assert d_vector(gamma_fan(independent=True)) == (1, 4, 1)
    assert d_vector(octahedron_fan()) == (1, 3, 3, 1)


def test_d_vector_rejects_zero_polynomial():
    zero = MultiFan(SimplicialChain(2, 1, {}), [(1,), (-1,)])
    with pytest.raises(ZeroVolumePolynomial):
        d_vector(zero)


def test_asymmetric_ranks_are_a_consistency_error(monkeypatch):
    import multifan.algebra as alg

    # symmetry holds for every homogeneous polynomial, so simulate a broken rank
    monkeypatch.setattr(alg, "var_dimension", lambda p, j, certify=False: j + 1)
    with pytest.raises(SymmetryViolation):
        alg.d_vector(square_fan())


def test_hilbert_examples():
    h = hilbert(join(interval_fan(), interval_fan()))
    assert h.to_text() == "1+2t^2+t^4"
    collinear = hilbert(suspended_torus_collinear())
    assert collinear == HilbertFunction((1, 4, 4, 1)) * HilbertFunction((1, 1))
    point = MultiFan(point_cycle(), [])
    assert hilbert(point).to_text() == "1"


def test_annihilator_examples():
    sq = square_fan()
    assert annihilator_basis(sq, 0) == []
    basis = annihilator_basis(sq, 1)
    assert len(basis) == 2
    for op in (ops("d1 - d3", 4), ops("d2 - d4", 4)):
        assert classes_equal(sq, op, SparsePolynomial({}, 4))
    # a ghost vertex contributes its own partial to the annihilator
    g = gamma_fan()
    ghosted = MultiFan(g.cycle.with_m(7), list(g.coloring) + [(1, 2)])
    basis = annihilator_basis(ghosted, 1)
    d7 = ops("d7", 7)
    assert classes_equal(ghosted, d7, SparsePolynomial({}, 7))
    assert len(basis) == 7 - 4


def test_annihilator_sizes_complement_d_vector():
    fan = octahedron_fan()
    d = d_vector(fan)
    for j in range(fan.n + 1):
        assert len(annihilator_basis(fan, j)) + d[j] == comb(fan.m + j - 1, j)


def test_classes_equal_examples():
    sq = square_fan()
    d1 = ops("d1", 4)
    assert classes_equal(sq, d1, d1)
    assert classes_equal(sq, d1, ops("d3", 4))
    assert not classes_equal(sq, d1, ops("d2", 4))


def test_editability_examples():
    sphere = suspend(octahedron_fan())
    assert is_editable(sphere).editable
    assert is_editable(suspended_torus_collinear()).editable
    report = is_editable(suspended_torus_noncollinear())
    assert not report.editable
    assert report.d_vector == (1, 5, 12, 5, 1)
    with pytest.raises(NotSuspensionShaped):
        is_editable(torus_fan())


def test_hilbert_function_helpers():
    h = HilbertFunction((1, 2, 1))
    assert h.is_palindromic() and not HilbertFunction((1, 2)).is_palindromic()
    assert (h * HilbertFunction((1, 1))).coefficients == (1, 3, 3, 1)
    assert str(HilbertFunction((1, 0, 1))) == "1+t^4"
