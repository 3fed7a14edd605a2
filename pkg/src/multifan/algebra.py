"""Graded dimensions of the duality algebra ``D / Ann V``.

Everything is computed on the polynomial side: the class of an operator
``D`` in degree ``j`` is determined by ``D V``, so ``d_j`` is the dimension
of the span of all order-``j`` partial derivatives of ``V``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import ConsistencyError, MultiFanError, SymmetryViolation, ZeroVolumePolynomial
from .exactmath import (
    SparsePolynomial,
    apply_operator,
    kernel_basis,
    monomials_of_degree,
    rank,
    transpose,
)
from .fan import MultiFan, check_suspension_shape
from .volume import volume_polynomial


def _falling(a: int, b: int) -> int:
    return factorial(a) // factorial(a - b)


def derivative_matrix(
    p: SparsePolynomial, j: int, rows: list[tuple[int, ...]] | None = None
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]], list[list[Fraction]]]:
    """Coefficients of ``d^J p`` for every multiset ``J`` of size ``j``.

    Returns ``(row_monomials, column_monomials, matrix)``. Rows and columns
    are in graded-lex order; columns cover every degree ``deg p - j``
    monomial that occurs.
    """
    if rows is None:
        rows = monomials_of_degree(p.nvars, j)
    terms = p.terms
    columns: dict[tuple[int, ...], int] = {}
    entries: list[dict[int, Fraction]] = []
    for jm in rows:
        row: dict[int, Fraction] = {}
        for e, c in terms.items():
            if all(a >= b for a, b in zip(e, jm)):
                mu = tuple(a - b for a, b in zip(e, jm))
                f = 1
                for a, b in zip(e, jm):
                    if b:
                        f *= _falling(a, b)
                col = columns.setdefault(mu, len(columns))
                row[col] = row.get(col, Fraction(0)) + c * f
        entries.append(row)
    order = sorted(columns, key=lambda mu: (sum(mu), mu), reverse=True)
    remap = {columns[mu]: i for i, mu in enumerate(order)}
    matrix = []
    for row in entries:
        dense = [Fraction(0)] * len(order)
        for c, x in row.items():
            dense[remap[c]] = x
        matrix.append(dense)
    return rows, order, matrix


def var_dimension(p: SparsePolynomial, j: int, certify: bool = False) -> int:
    """``dim`` of the span of all order-``j`` partial derivatives of ``p``."""
    if p.is_zero():
        return 0
    if j < 0 or j > p.degree:
        return 0
    used = sorted(p.variables())
    # derivatives in variables absent from p vanish; work in the used ones
    sub_terms = {tuple(e[i] for i in used): c for e, c in p.terms.items()}
    q = SparsePolynomial(sub_terms, len(used))
    _, _, matrix = derivative_matrix(q, j)
    return rank(matrix, certify=certify)


@dataclass(frozen=True)
class HilbertFunction:
    """``sum d_j t^(2j)``."""

    coefficients: tuple[int, ...]

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def __mul__(self, other: "HilbertFunction") -> "HilbertFunction":
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for k, y in enumerate(b):
                out[i + k] += x * y
        return HilbertFunction(tuple(out))

    def to_text(self) -> str:
        parts = []
        for j, d in enumerate(self.coefficients):
            if d == 0:
                continue
            if j == 0:
                parts.append(str(d))
            else:
                t = "t^2" if j == 1 else f"t^{2 * j}"
                parts.append(t if d == 1 else f"{d}{t}")
        return "+".join(parts) or "0"

    def __str__(self) -> str:
        return self.to_text()


def _polynomial(fan_or_poly, polarization=None, seed=None) -> SparsePolynomial:
    if isinstance(fan_or_poly, SparsePolynomial):
        return fan_or_poly
    return volume_polynomial(fan_or_poly, polarization, seed)


def d_vector(fan_or_poly, certify: bool = False, polarization=None, seed: int | None = None) -> tuple[int, ...]:
    """``(d_0, ..., d_n)``; raises if Poincare symmetry fails."""
    v = _polynomial(fan_or_poly, polarization, seed)
    if v.is_zero():
        raise ZeroVolumePolynomial("volume polynomial is zero")
    if not v.is_homogeneous():
        raise MultiFanError("polynomial is not homogeneous")
    n = v.degree
    dims = tuple(var_dimension(v, j, certify=certify) for j in range(n + 1))
    if dims != dims[::-1] or dims[0] != 1 or dims[-1] != 1:
        raise SymmetryViolation(f"d-vector {dims} violates Poincare duality")
    return dims


def hilbert(fan_or_poly, certify: bool = False, polarization=None, seed: int | None = None) -> HilbertFunction:
    return HilbertFunction(d_vector(fan_or_poly, certify, polarization, seed))


def annihilator_basis(fan_or_poly, j: int, polarization=None, seed: int | None = None) -> list[SparsePolynomial]:
    """Basis of the degree-``j`` part of ``Ann V``, as polynomials in the partials."""
    v = _polynomial(fan_or_poly, polarization, seed)
    n = v.degree
    if not 0 <= j <= n:
        raise MultiFanError(f"degree {j} outside 0..{n}")
    rows, cols, matrix = derivative_matrix(v, j)
    if not cols:
        kernel = kernel_basis([], ncols=len(rows))
    else:
        kernel = kernel_basis(transpose(matrix))
    basis = []
    for vec in kernel:
        basis.append(SparsePolynomial({r: x for r, x in zip(rows, vec) if x}, v.nvars))
    expected = comb(v.nvars + j - 1, j) - var_dimension(v, j)
    if len(basis) != expected:
        raise ConsistencyError("annihilator dimension disagrees with rank")
    return basis


def classes_equal(fan_or_poly, d1: SparsePolynomial, d2: SparsePolynomial, polarization=None, seed=None) -> bool:
    """Whether two operators define the same class modulo ``Ann V``."""
    v = _polynomial(fan_or_poly, polarization, seed)
    return apply_operator(d1 - d2, v).is_zero()


@dataclass(frozen=True)
class EditabilityReport:
    editable: bool
    image_dims: tuple[int, ...]  # dim im(x d_y) in degree 2j
    kernel_dims: tuple[int, ...]  # dim Ker(x d_x) in degree 2j
    d_vector: tuple[int, ...]


def is_editable(fan: MultiFan, certify: bool = False, polarization=None, seed: int | None = None) -> EditabilityReport:
    """Compare ``im(x d_y)`` and ``Ker(x d_x)`` degree by degree.

    Since ``d_x d_y V = 0`` the image sits inside the kernel, so equal
    dimensions mean equal spaces.
    """
    x, y = check_suspension_shape(fan)
    v = volume_polynomial(fan, polarization, seed)
    dx = v.differentiate(x - 1)
    dy = v.differentiate(y - 1)
    if not dx.differentiate(y - 1).is_zero():
        raise ConsistencyError("d_x d_y V is not zero on a suspension-shaped fan")
    dims = d_vector(v, certify=certify)
    n = len(dims) - 1
    image = tuple(0 if j == 0 else var_dimension(dy, j - 1, certify) for j in range(n + 1))
    kernel = tuple(dims[j] - var_dimension(dx, j, certify) for j in range(n + 1))
    return EditabilityReport(image == kernel, image, kernel, dims)
