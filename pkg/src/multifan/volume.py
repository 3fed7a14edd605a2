"""Volume polynomials of complete simplicial multi-fans.

For a generic polarization vector ``v``, every facet ``I`` with weight
``w(I)`` contributes

    w(I) / (det lambda(I) * prod_j a_j) * (a_1 c_{i_1} + ... + a_n c_{i_n})^n / n!

where ``a`` are the coordinates of ``v`` in the basis ``lambda(I)``. The
determinant is taken with sign, rows in sorted vertex order, so that cycle
weights carry the orientation and the standard fan of a rectangle yields its
area.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from . import config
from .errors import GenericityExhausted, NonGenericPolarization
from .exactmath import SparsePolynomial, as_vector, monomials_of_degree, solve
from .fan import MultiFan

GENERICITY_ATTEMPTS = 32
INITIAL_BOUND = 4


@dataclass(frozen=True)
class ConeTerm:
    simplex: tuple[int, ...]
    weight: Fraction
    det: Fraction
    alpha: tuple[Fraction, ...]


@dataclass(frozen=True)
class PolarizationVector:
    vector: tuple[Fraction, ...]
    verified: bool = False


def cone_terms(fan: MultiFan, v: Sequence) -> list[ConeTerm]:
    """Per-facet ingredients of the volume formula for polarization ``v``."""
    v = as_vector(v, fan.n)
    out = []
    for s, w in fan.cycle.items():
        cols = [fan.vector(i) for i in s]
        a = [tuple(c[r] for c in cols) for r in range(fan.n)]
        out.append(ConeTerm(s, w, fan.determinant(s), solve(a, v)))
    return out


def is_generic(fan: MultiFan, v: Sequence) -> bool:
    return all(all(a != 0 for a in t.alpha) for t in cone_terms(fan, v))


def find_polarization(fan: MultiFan, seed: int | None = None) -> PolarizationVector:
    """Seeded random integer vector with all facet coordinates nonzero.

    The coordinate bound doubles after every rejected draw.
    """
    rng = random.Random(config.DEFAULT_SEED if seed is None else seed)
    bound = INITIAL_BOUND
    for _ in range(GENERICITY_ATTEMPTS):
        v = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(fan.n))
        if is_generic(fan, v):
            return PolarizationVector(v, verified=True)
        bound *= 2
    raise GenericityExhausted(f"no generic polarization after {GENERICITY_ATTEMPTS} draws")


@lru_cache(maxsize=None)
def _power_expansion(n: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """Exponents ``k`` with ``|k| = n`` and the weight ``1 / prod k_j!``."""
    out = []
    for k in monomials_of_degree(n, n):
        den = 1
        for x in k:
            den *= factorial(x)
        out.append((k, Fraction(1, den)))
    return tuple(out)


def volume_polynomial(
    fan: MultiFan,
    polarization: Sequence | PolarizationVector | None = None,
    seed: int | None = None,
) -> SparsePolynomial:
    """``V(c_1, ..., c_m)``, a homogeneous polynomial of degree ``n``."""
    m, n = fan.m, fan.n
    if n == 0:
        total = sum((w for _, w in fan.cycle.items()), Fraction(0))
        return SparsePolynomial.constant(total, m)
    if polarization is None:
        v = find_polarization(fan, seed).vector
    else:
        v = polarization.vector if isinstance(polarization, PolarizationVector) else as_vector(polarization, n)
        if not is_generic(fan, v):
            raise NonGenericPolarization("polarization vector has a zero facet coordinate")
    expansion = _power_expansion(n)
    terms: dict[tuple[int, ...], Fraction] = {}
    for t in cone_terms(fan, v):
        prod = Fraction(1)
        for a in t.alpha:
            prod *= a
        scale = t.weight / (t.det * prod)
        for k, inv_fact in expansion:
            coef = scale * inv_fact
            e = [0] * m
            for a, kj, vertex in zip(t.alpha, k, t.simplex):
                if kj:
                    coef *= a**kj
                    e[vertex - 1] = kj
            key = tuple(e)
            terms[key] = terms.get(key, Fraction(0)) + coef
    return SparsePolynomial(terms, m)


def evaluate_volume(fan: MultiFan, c: Sequence, polarization=None, seed: int | None = None) -> Fraction:
    """Volume of the multi-polytope with support parameters ``c``."""
    return volume_polynomial(fan, polarization, seed)(as_vector(c, fan.m))


def derivative_by_set(p: SparsePolynomial, vertices: Iterable[int]) -> SparsePolynomial:
    """``d_{i_1} ... d_{i_j} p`` for a multiset of 1-based vertices."""
    e = [0] * p.nvars
    for v in vertices:
        e[int(v) - 1] += 1
    return p.derivative(e)
