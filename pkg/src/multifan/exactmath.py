"""Exact rational linear algebra and sparse multivariate polynomials.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of row tuples. Polynomials store dense exponent tuples,
which is cheap for the few dozen variables that volume polynomials use.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import FormatError, SingularMatrix

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]
Monomial = tuple  # tuple[int, ...], one exponent per variable

# Two fixed primes below 2**31 so that products of residues fit in int64.
MODULAR_PRIMES = (2147483629, 2147483587)

__all__ = [
    "Rational",
    "SparsePolynomial",
    "apply_operator",
    "as_rational",
    "as_vector",
    "as_matrix",
    "determinant",
    "differentiate",
    "format_rational",
    "kernel_basis",
    "mat_vec",
    "monomials_of_degree",
    "rank",
    "solve",
    "transpose",
]


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: silently turning ``0.1`` into a 55-bit fraction is
    never what the caller meant.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise FormatError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational: {x!r}") from exc
    if isinstance(x, (np.integer,)):
        return Fraction(int(x))
    raise FormatError(f"not a rational: {x!r}")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"``; the denominator is always written."""
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


def as_vector(values: Iterable, length: int | None = None) -> tuple:
    vec = tuple(as_rational(v) for v in values)
    if length is not None and len(vec) != length:
        raise FormatError(f"expected a vector of length {length}, got {len(vec)}")
    return vec


def as_matrix(rows: Iterable[Iterable]) -> tuple:
    mat = tuple(as_vector(r) for r in rows)
    if mat and len({len(r) for r in mat}) != 1:
        raise FormatError("matrix rows have different lengths")
    return mat


def transpose(rows: Sequence[Sequence]) -> tuple:
    if not rows:
        return ()
    return tuple(zip(*rows))


def mat_vec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [[as_rational(x) for x in r] for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for i in range(col + 1, n):
            f = m[i][col] / p
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


def solve(a: Sequence[Sequence], b: Sequence) -> tuple:
    """Solve ``a x = b`` for square nonsingular ``a``."""
    n = len(a)
    m = [[as_rational(x) for x in row] + [as_rational(bi)] for row, bi in zip(a, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return tuple(row[n] for row in m)


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        row = [as_rational(x) for x in row]
        den = 1
        for x in row:
            den = math.lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _bareiss_rank(rows: list[list[int]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for col in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[col]
        for i in range(r + 1, len(rows)):
            a = rows[i][col]
            rows[i] = [(p * x - a * y) // prev for x, y in zip(rows[i], prow)]
        prev = p
        r += 1
    return r


def _modular_rank(rows: list[list[int]], p: int) -> int:
    a = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    nrows, ncols = a.shape
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1 :, col].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + r + 1
            a[idx] = (a[idx] - np.outer(below[mask], a[r]) % p) % p
        r += 1
    return r


def rank(matrix: Sequence[Sequence], certify: bool = False) -> int:
    """Exact rank over the rationals.

    By default the rank is computed modulo two fixed word-size primes and
    accepted when both agree; otherwise (or with ``certify=True``) it falls
    back to fraction-free Bareiss elimination over the integers. A modular
    rank never exceeds the rational rank, so agreement can only be wrong if
    both primes divide the same nonzero minor.
    """
    rows = _integer_rows(matrix)
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    if len(rows) > len(rows[0]):
        rows = [list(c) for c in zip(*rows)]
    if certify:
        return _bareiss_rank(rows)
    r1 = _modular_rank(rows, MODULAR_PRIMES[0])
    r2 = _modular_rank(rows, MODULAR_PRIMES[1])
    if r1 == r2:
        return r1
    return _bareiss_rank(rows)


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[as_rational(x) for x in row] for row in matrix]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    return m[:r], pivots


def kernel_basis(matrix: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of the right null space ``{x : M x = 0}``.

    ``ncols`` is needed only when the matrix has no rows.
    """
    if not matrix:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    ncols = len(matrix[0])
    red, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, graded-lex descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _grlex_key(e: tuple[int, ...]):
    return (sum(e), e)


class SparsePolynomial:
    """Multivariate polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero fractions.
    Instances are immutable and hashable.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None, nvars: int = 0):
        clean: dict[tuple[int, ...], Fraction] = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(int(x) for x in mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong length for {nvars} variables")
            if any(x < 0 for x in mono):
                raise ValueError(f"negative exponent in {mono}")
            q = as_rational(coef)
            if q:
                clean[mono] = clean.get(mono, Fraction(0)) + q
                if not clean[mono]:
                    del clean[mono]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, value, nvars: int) -> "SparsePolynomial":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "SparsePolynomial":
        e = [0] * nvars
        e[index] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def linear_form(cls, coefficients: Sequence, nvars: int | None = None) -> "SparsePolynomial":
        nvars = len(coefficients) if nvars is None else nvars
        terms = {}
        for i, a in enumerate(coefficients):
            e = [0] * nvars
            e[i] = 1
            terms[tuple(e)] = a
        return cls(terms, nvars)

    # basic queries
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True))

    def coefficient(self, mono: tuple[int, ...]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def variables(self) -> set[int]:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    # arithmetic
    def _check(self, other: "SparsePolynomial") -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(other, self.nvars)
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return SparsePolynomial(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            q = as_rational(other)
            return SparsePolynomial({e: c * q for e, c in self._terms.items()}, self.nvars)
        self._check(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return SparsePolynomial(terms, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = as_rational(other)
        return self * (1 / q)

    def __pow__(self, k: int):
        out = SparsePolynomial.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePolynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePolynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __call__(self, point: Sequence) -> Fraction:
        point = as_vector(point, self.nvars)
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x**k
            total += t
        return total

    def evaluate(self, point: Sequence) -> Fraction:
        return self(point)

    def embed(self, nvars: int, offset: int = 0) -> "SparsePolynomial":
        """Re-home the variables into a larger ring, shifted by ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("target ring too small")
        terms = {}
        for e, c in self._terms.items():
            new = [0] * nvars
            new[offset : offset + self.nvars] = e
            terms[tuple(new)] = c
        return SparsePolynomial(terms, nvars)

    def differentiate(self, index: int) -> "SparsePolynomial":
        return differentiate(self, index)

    def derivative(self, exponents: Sequence[int]) -> "SparsePolynomial":
        """Apply the monomial operator with the given exponent tuple."""
        exponents = tuple(exponents)
        terms = {}
        for e, c in self._terms.items():
            if all(a >= b for a, b in zip(e, exponents)):
                f = 1
                for a, b in zip(e, exponents):
                    if b:
                        f *= _falling(a, b)
                terms[tuple(a - b for a, b in zip(e, exponents))] = c * f
        return SparsePolynomial(terms, self.nvars)

    # text form
    def to_text(self, var: str = "c") -> str:
        """Canonical text: graded-lex descending terms, 1-based variable names."""
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"{var}{i + 1}")
                elif k > 1:
                    factors.append(f"{var}{i + 1}^{k}")
            coef = format_rational(abs(c))
            if factors and coef == "1/1":
                body = "*".join(factors)
            else:
                body = "*".join([coef] + factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    @classmethod
    def from_text(cls, text: str, nvars: int, var: str = "c") -> "SparsePolynomial":
        text = text.strip()
        if text == "0":
            return cls({}, nvars)
        tokens = re.findall(r"([+-]?)\s*([^+-]+)", text.replace(" ", ""))
        if not tokens or "".join(s + b for s, b in tokens) != text.replace(" ", ""):
            raise FormatError(f"cannot parse polynomial: {text!r}")
        terms: dict[tuple[int, ...], Fraction] = {}
        pat = re.compile(rf"^{re.escape(var)}(\d+)(?:\^(\d+))?$")
        for sign, body in tokens:
            coef = Fraction(1)
            e = [0] * nvars
            factors = body.split("*")
            for f in factors:
                mt = pat.match(f)
                if mt:
                    idx = int(mt.group(1)) - 1
                    if not 0 <= idx < nvars:
                        raise FormatError(f"variable {f} out of range")
                    e[idx] += int(mt.group(2) or 1)
                else:
                    coef *= as_rational(f)
            if sign == "-":
                coef = -coef
            terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + coef
        return cls(terms, nvars)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.to_text()!r}, nvars={self.nvars})"


def differentiate(p: SparsePolynomial, index: int) -> SparsePolynomial:
    """Partial derivative with respect to the variable with 0-based ``index``."""
    if not 0 <= index < p.nvars:
        raise IndexError(f"variable index {index} out of range for {p.nvars} variables")
    terms = {}
    for e, c in p._terms.items():
        k = e[index]
        if k:
            new = list(e)
            new[index] = k - 1
            terms[tuple(new)] = c * k
    return SparsePolynomial(terms, p.nvars)


def apply_operator(d: SparsePolynomial, p: SparsePolynomial) -> SparsePolynomial:
    """Act with ``d`` (a polynomial in the partials) on ``p``."""
    if d.nvars != p.nvars:
        raise ValueError(f"variable count mismatch: {d.nvars} vs {p.nvars}")
    out = SparsePolynomial({}, p.nvars)
    for e, c in d._terms.items():
        out = out + p.derivative(e) * c
    return out
