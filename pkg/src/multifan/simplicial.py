"""Weighted simplicial chains and the complexes that support them.

Vertices are the integers ``1..m``. A simplex is a strictly increasing tuple
of vertices, and boundary signs follow that sorted order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import GhostVertex, MultiFanError, NonOrientable, NotInSupport, NotPure
from .exactmath import as_rational, rank


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``seq`` (0 if it has repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class SimplicialChain:
    """A chain ``sum w(I) I`` over simplices of a fixed cardinality ``k``.

    Zero weights are dropped on construction. Instances are immutable.
    """

    __slots__ = ("m", "k", "_weights", "_hash")

    def __init__(self, m: int, k: int, weights: Mapping[Iterable[int], object] | None = None):
        if m < 0 or k < 0:
            raise ValueError("m and k must be non-negative")
        clean: dict[tuple[int, ...], Fraction] = {}
        for simplex, w in (weights or {}).items():
            simplex = tuple(int(v) for v in simplex)
            s = tuple(sorted(simplex))
            if len(s) != k or len(set(s)) != k:
                raise MultiFanError(f"simplex {simplex} does not have {k} distinct vertices")
            if s and (s[0] < 1 or s[-1] > m):
                raise MultiFanError(f"simplex {simplex} has vertices outside 1..{m}")
            q = as_rational(w) * permutation_sign(simplex)
            clean[s] = clean.get(s, Fraction(0)) + q
        self.m = m
        self.k = k
        self._weights = {s: w for s, w in clean.items() if w}
        self._hash = None

    @classmethod
    def from_facets(cls, m: int, facets: Iterable[Iterable[int]]) -> "SimplicialChain":
        """Chain with weight +1 on every listed (ordered) simplex."""
        facets = [tuple(f) for f in facets]
        k = len(facets[0]) if facets else 0
        return cls(m, k, {f: 1 for f in facets})

    @property
    def weights(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._weights)

    def weight(self, simplex: Iterable[int]) -> Fraction:
        simplex = tuple(simplex)
        sign = permutation_sign(simplex)
        return self._weights.get(tuple(sorted(simplex)), Fraction(0)) * sign

    @property
    def dimension(self) -> int:
        return self.k - 1

    def simplices(self) -> list[tuple[int, ...]]:
        return sorted(self._weights)

    def items(self):
        return sorted(self._weights.items())

    def __len__(self) -> int:
        return len(self._weights)

    def is_zero(self) -> bool:
        return not self._weights

    def vertices(self) -> set[int]:
        return {v for s in self._weights for v in s}

    def ghost_vertices(self) -> list[int]:
        used = self.vertices()
        return [v for v in range(1, self.m + 1) if v not in used]

    def is_cycle(self) -> bool:
        if self.k == 0:
            return True
        return boundary(self).is_zero()

    def _check(self, other: "SimplicialChain") -> None:
        if (self.m, self.k) != (other.m, other.k):
            raise MultiFanError(
                f"chains live in different groups: (m={self.m}, k={self.k}) vs (m={other.m}, k={other.k})"
            )

    def __add__(self, other: "SimplicialChain") -> "SimplicialChain":
        self._check(other)
        w = dict(self._weights)
        for s, x in other._weights.items():
            w[s] = w.get(s, Fraction(0)) + x
        return SimplicialChain(self.m, self.k, w)

    def __neg__(self) -> "SimplicialChain":
        return SimplicialChain(self.m, self.k, {s: -w for s, w in self._weights.items()})

    def __sub__(self, other: "SimplicialChain") -> "SimplicialChain":
        return self + (-other)

    def __mul__(self, scalar) -> "SimplicialChain":
        q = as_rational(scalar)
        return SimplicialChain(self.m, self.k, {s: w * q for s, w in self._weights.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialChain):
            return NotImplemented
        return (self.m, self.k, self._weights) == (other.m, other.k, other._weights)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self.k, frozenset(self._weights.items())))
        return self._hash

    def __repr__(self) -> str:
        body = " ".join(f"{'+' if w > 0 else '-'}{abs(w)}*{list(s)}" for s, w in self.items())
        return f"SimplicialChain(m={self.m}, k={self.k}: {body or '0'})"

    def with_m(self, m: int) -> "SimplicialChain":
        """Same chain viewed on a larger (or smaller) vertex range."""
        return SimplicialChain(m, self.k, self._weights)

    def relabel(self, mapping: Mapping[int, int] | Sequence[int], m: int | None = None) -> "SimplicialChain":
        """Rename vertices; weights pick up the sign of the re-sorting."""
        if not isinstance(mapping, Mapping):
            mapping = {i + 1: v for i, v in enumerate(mapping)}
        m = self.m if m is None else m
        out: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        for s, w in self._weights.items():
            image = tuple(mapping.get(v, v) for v in s)
            sign = permutation_sign(image)
            if sign == 0:
                raise MultiFanError(f"relabelling collapses simplex {s}")
            out[tuple(sorted(image))] += w * sign
        return SimplicialChain(m, self.k, out)


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on ``1..m`` given by its facets."""

    m: int
    facets: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        facets = frozenset(tuple(sorted(f)) for f in self.facets)
        # drop non-maximal simplices
        by_size = sorted(facets, key=len, reverse=True)
        maximal: list[tuple[int, ...]] = []
        for f in by_size:
            fs = set(f)
            if not any(fs < set(g) for g in maximal):
                maximal.append(f)
        object.__setattr__(self, "facets", frozenset(maximal))

    @cached_property
    def _faces(self) -> dict[int, frozenset]:
        faces: dict[int, set] = defaultdict(set)
        for f in self.facets:
            for k in range(len(f) + 1):
                faces[k].update(combinations(f, k))
        return {k: frozenset(v) for k, v in faces.items()}

    def faces(self, k: int) -> list[tuple[int, ...]]:
        """Faces with exactly ``k`` vertices, sorted."""
        return sorted(self._faces.get(k, ()))

    def __contains__(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        return s in self._faces.get(len(s), ())

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_empty(self) -> bool:
        return not self.facets

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def vertices(self) -> list[int]:
        return sorted(v for (v,) in self._faces.get(1, ()))

    def f_vector(self) -> list[int]:
        """``(f_0, ..., f_dim)``: number of faces of each dimension."""
        return [len(self._faces.get(k, ())) for k in range(1, self.dimension + 2)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * f for i, f in enumerate(self.f_vector()))

    def link(self, face: Iterable[int]) -> "SimplicialComplex":
        face = tuple(sorted(face))
        if face not in self:
            raise NotInSupport(f"{list(face)} is not a face")
        fs = set(face)
        return SimplicialComplex(
            self.m, frozenset(tuple(v for v in f if v not in fs) for f in self.facets if fs <= set(f))
        )

    def is_pseudomanifold(self) -> bool:
        """Pure, and every ridge lies in exactly two facets."""
        if not self.facets or not self.is_pure():
            return False
        count: dict[tuple, int] = defaultdict(int)
        for f in self.facets:
            for ridge in combinations(f, len(f) - 1):
                count[ridge] += 1
        return all(c == 2 for c in count.values())


def boundary(chain: SimplicialChain) -> SimplicialChain:
    """Simplicial boundary with signs ``(-1)^position`` in sorted order."""
    if chain.k < 1:
        raise MultiFanError("boundary needs simplices with at least one vertex")
    out: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for s, w in chain._weights.items():
        for pos in range(len(s)):
            out[s[:pos] + s[pos + 1 :]] += w if pos % 2 == 0 else -w
    return SimplicialChain(chain.m, chain.k - 1, out)


def support_complex(chain: SimplicialChain) -> SimplicialComplex:
    return SimplicialComplex(chain.m, frozenset(chain._weights))


def link_cycle(chain: SimplicialChain, face: Iterable[int]) -> SimplicialChain:
    """The chain ``sum eps * w(J + I) I`` over the link of ``face``.

    ``eps`` is the sign of moving ``face`` in front of ``I``; with it the link
    of a cycle is again a cycle.
    """
    face = tuple(sorted(face))
    fs = set(face)
    out = {}
    for s, w in chain._weights.items():
        if fs <= set(s):
            rest = tuple(v for v in s if v not in fs)
            out[rest] = w * permutation_sign(face + rest)
    if not out:
        raise NotInSupport(f"{list(face)} is not a face of the support")
    return SimplicialChain(chain.m, chain.k - len(face), out)


def join_cycles(a: SimplicialChain, b: SimplicialChain) -> SimplicialChain:
    """Join on disjoint vertex sets; ``b``'s vertices are shifted by ``a.m``."""
    out = {}
    for s1, w1 in a._weights.items():
        for s2, w2 in b._weights.items():
            out[s1 + tuple(v + a.m for v in s2)] = w1 * w2
    return SimplicialChain(a.m + b.m, a.k + b.k, out)


def zero_sphere(m: int = 2, x: int = 1, y: int = 2) -> SimplicialChain:
    """The 0-cycle ``x - y``."""
    return SimplicialChain(m, 1, {(x,): 1, (y,): -1})


def point_cycle(weight=1) -> SimplicialChain:
    """The (-1)-dimensional cycle: the empty simplex with a weight."""
    return SimplicialChain(0, 0, {(): weight})


def suspension(chain: SimplicialChain) -> SimplicialChain:
    """Join with ``x - y``; the apices are vertices ``m+1`` and ``m+2``."""
    return join_cycles(chain, zero_sphere())


def fundamental_cycle(complex_: SimplicialComplex) -> SimplicialChain:
    """Coherently oriented ±1 cycle on an orientable pseudomanifold.

    Each connected component is oriented so that its lexicographically first
    facet gets weight +1.
    """
    if not complex_.is_pseudomanifold():
        raise MultiFanError("complex is not a pseudomanifold")
    facets = sorted(complex_.facets)
    by_ridge: dict[tuple, list] = defaultdict(list)
    for f in facets:
        for pos in range(len(f)):
            by_ridge[f[:pos] + f[pos + 1 :]].append((f, -1 if pos % 2 else 1))
    orient: dict[tuple, int] = {}
    for start in facets:
        if start in orient:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            f = stack.pop()
            for pos in range(len(f)):
                ridge = f[:pos] + f[pos + 1 :]
                sign_f = -1 if pos % 2 else 1
                for g, sign_g in by_ridge[ridge]:
                    if g == f:
                        continue
                    want = -orient[f] * sign_f * sign_g
                    if g in orient:
                        if orient[g] != want:
                            raise NonOrientable("pseudomanifold is not orientable")
                    else:
                        orient[g] = want
                        stack.append(g)
    return SimplicialChain(complex_.m, len(facets[0]), orient)


def _boundary_rank(complex_: SimplicialComplex, k: int) -> int:
    """Rank of the boundary map from k-vertex faces to (k-1)-vertex faces."""
    if k == 0:
        return 0
    top = complex_.faces(k)
    if not top:
        return 0
    if k == 1:
        return 1
    index = {f: i for i, f in enumerate(complex_.faces(k - 1))}
    rows = []
    for s in top:
        row = [0] * len(index)
        for pos in range(k):
            row[index[s[:pos] + s[pos + 1 :]]] = -1 if pos % 2 else 1
        rows.append(row)
    return rank(rows, certify=True)


def betti_numbers(complex_: SimplicialComplex) -> list[int]:
    """Reduced rational Betti numbers ``b~_0 .. b~_dim``."""
    if complex_.is_empty():
        return []
    dim = complex_.dimension
    ranks = [_boundary_rank(complex_, k) for k in range(dim + 3)]
    out = []
    for j in range(dim + 1):
        fj = len(complex_.faces(j + 1))
        out.append(fj - ranks[j + 1] - ranks[j + 2])
    return out


def h_vector(complex_: SimplicialComplex) -> list[int]:
    """``h_0..h_d`` for a pure complex whose facets have ``d`` vertices."""
    if not complex_.is_pure():
        raise NotPure("h-vector needs a pure complex")
    d = complex_.dimension + 1
    f = [1] + complex_.f_vector()  # f[i] = number of faces with i vertices
    return [
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1)) for k in range(d + 1)
    ]


def is_homology_sphere(complex_: SimplicialComplex) -> bool:
    """Rational homology sphere of the complex's own dimension."""
    if complex_.is_empty():
        return False
    if complex_.dimension == -1:
        return True
    if not complex_.is_pseudomanifold():
        return False
    b = betti_numbers(complex_)
    return all(x == 0 for x in b[:-1]) and b[-1] == 1


def h_double_prime(complex_: SimplicialComplex) -> list[int]:
    """Betti-corrected h''-numbers of a connected orientable homology manifold.

    With ``d`` vertices per facet and reduced Betti numbers ``b``::

        h''_j = h_j - C(d, j) * sum_{s=1}^{j} (-1)^(j-s) b_{s-1}     (0 < j < d)
        h''_d = h_d - sum_{s=1}^{d-1} (-1)^(d-s) b_{s-1}
    """
    h = h_vector(complex_)
    d = len(h) - 1
    if not complex_.is_pseudomanifold():
        raise MultiFanError("h'' needs a closed pseudomanifold")
    b = betti_numbers(complex_)
    if b[0] != 0:
        raise MultiFanError("h'' needs a connected complex")
    fundamental_cycle(complex_)  # raises unless orientable
    if d <= 4:
        for v in complex_.vertices():
            if not is_homology_sphere(complex_.link((v,))):
                raise MultiFanError(f"vertex {v} does not have a sphere link")
    out = [h[0]]
    for j in range(1, d):
        out.append(h[j] - comb(d, j) * sum((-1) ** (j - s) * b[s - 1] for s in range(1, j + 1)))
    out.append(h[d] - sum((-1) ** (d - s) * b[s - 1] for s in range(1, d)))
    return out


def is_smooth_vertex(chain: SimplicialChain, vertex: int) -> bool:
    """True when the link of ``vertex`` is a fundamental cycle of a homology sphere."""
    if vertex not in chain.vertices():
        raise GhostVertex(f"vertex {vertex} is a ghost vertex")
    link = link_cycle(chain, (vertex,))
    if len({abs(w) for w in link._weights.values()}) != 1:
        return False
    if link.k == 0:
        return True
    if not link.is_cycle():
        return False
    return is_homology_sphere(support_complex(link))


def connected_sum_cycles(
    a: SimplicialChain, b: SimplicialChain, identify: Iterable[tuple[int, int]]
) -> tuple[SimplicialChain, dict[int, int]]:
    """Identify vertices of ``b`` with vertices of ``a`` and add the chains.

    Unidentified vertices of ``b`` are appended after ``a``'s in increasing
    order. Returns the sum and the vertex map applied to ``b``.
    """
    if a.k != b.k:
        raise MultiFanError("connected sum needs chains of the same dimension")
    pairs = dict((int(y), int(x)) for x, y in identify)
    if len(set(pairs.values())) != len(pairs):
        raise MultiFanError("identification is not injective")
    mapping = dict(pairs)
    nxt = a.m
    for v in range(1, b.m + 1):
        if v not in mapping:
            nxt += 1
            mapping[v] = nxt
    return a.with_m(nxt) + b.relabel(mapping, m=nxt), mapping
