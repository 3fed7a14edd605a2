"""Complete simplicial multi-fans: a weighted cycle plus a vector coloring."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    ColoringMismatch,
    DegenerateColoring,
    DependentGlueSet,
    DimensionMismatch,
    GenericityExhausted,
    MultiFanError,
    NotACycle,
    NotInSupport,
    NotSuspensionShaped,
    SingularMatrix,
)
from .exactmath import as_vector, determinant, mat_vec, rank, solve
from .simplicial import (
    SimplicialChain,
    boundary,
    connected_sum_cycles,
    is_smooth_vertex,
    join_cycles,
    link_cycle,
    zero_sphere,
)


def _unit(n: int, i: int, scale=1) -> tuple:
    return tuple(Fraction(scale if j == i else 0) for j in range(n))


class MultiFan:
    """A validated pair ``(cycle, coloring)``.

    ``coloring[i - 1]`` is the vector assigned to vertex ``i``; ghost vertices
    may carry ``None``. ``apex`` optionally marks the two suspension points of
    a suspension-shaped fan.
    """

    __slots__ = ("cycle", "coloring", "apex", "_dets")

    def __init__(
        self,
        cycle: SimplicialChain,
        coloring: Sequence[Sequence | None],
        apex: tuple[int, int] | None = None,
    ):
        n = cycle.k
        if len(coloring) != cycle.m:
            raise DimensionMismatch(f"coloring has {len(coloring)} values for {cycle.m} vertices")
        col = []
        for i, vec in enumerate(coloring, start=1):
            if vec is None:
                col.append(None)
                continue
            vec = as_vector(vec)
            if len(vec) != n:
                raise DimensionMismatch(f"vertex {i}: vector of length {len(vec)} in dimension {n}")
            col.append(vec)
        if n > 0 and not boundary(cycle).is_zero():
            raise NotACycle("chain has nonzero boundary")
        for v in cycle.vertices():
            if col[v - 1] is None:
                raise DimensionMismatch(f"vertex {v} is in the support but has no vector")
        dets = {}
        for s in cycle.simplices():
            d = determinant([col[v - 1] for v in s])
            if d == 0:
                raise DegenerateColoring(f"vectors on simplex {list(s)} are not a basis")
            dets[s] = d
        if apex is not None:
            x, y = (int(a) for a in apex)
            if x == y or not (1 <= x <= cycle.m and 1 <= y <= cycle.m):
                raise MultiFanError(f"bad apex pair {apex}")
            if any(x in s and y in s for s in dets):
                raise NotSuspensionShaped("apex pair lies in the support")
            apex = (x, y)
        self.cycle = cycle
        self.coloring = tuple(col)
        self.apex = apex
        self._dets = dets

    @property
    def n(self) -> int:
        return self.cycle.k

    @property
    def m(self) -> int:
        return self.cycle.m

    def vector(self, vertex: int):
        return self.coloring[vertex - 1]

    def determinant(self, simplex: Iterable[int]) -> Fraction:
        """``det`` of the rows ``coloring[i]`` for ``i`` in sorted order."""
        return self._dets[tuple(sorted(simplex))]

    def ghost_vertices(self) -> list[int]:
        return self.cycle.ghost_vertices()

    def smooth_vertices(self) -> list[int]:
        return [v for v in sorted(self.cycle.vertices()) if is_smooth_vertex(self.cycle, v)]

    def with_apex(self, apex: tuple[int, int] | None) -> "MultiFan":
        return MultiFan(self.cycle, self.coloring, apex)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiFan):
            return NotImplemented
        return (self.cycle, self.coloring, self.apex) == (other.cycle, other.coloring, other.apex)

    def __hash__(self) -> int:
        return hash((self.cycle, self.coloring, self.apex))

    def __repr__(self) -> str:
        return f"MultiFan(n={self.n}, m={self.m}, facets={len(self.cycle)}, apex={self.apex})"


def new_multifan(cycle: SimplicialChain, coloring, apex=None) -> MultiFan:
    return MultiFan(cycle, coloring, apex)


def check_suspension_shape(fan: MultiFan) -> tuple[int, int]:
    """Return the apex pair, or raise unless the fan is suspension-shaped.

    Suspension-shaped means every facet contains exactly one apex and the
    two apex links cancel, as they do for ``x - y`` joined with a cycle.
    """
    if fan.apex is None:
        raise NotSuspensionShaped("no apex pair is marked")
    x, y = fan.apex
    for s in fan.cycle.simplices():
        if (x in s) == (y in s):
            raise NotSuspensionShaped(f"facet {list(s)} does not contain exactly one apex")
    try:
        lx = link_cycle(fan.cycle, (x,))
        ly = link_cycle(fan.cycle, (y,))
    except NotInSupport as exc:
        raise NotSuspensionShaped(str(exc)) from exc
    if not (lx + ly).is_zero():
        raise NotSuspensionShaped("apex links are not opposite cycles")
    return x, y


def _quotient_basis(vectors: Sequence[tuple], n: int) -> list[tuple]:
    """Columns ``vectors + e_k`` for the lexicographically first completing k's."""
    j = len(vectors)
    for coords in combinations(range(n), n - j):
        cols = list(vectors) + [_unit(n, k) for k in coords]
        if determinant(cols) != 0:
            return cols
    raise DegenerateColoring("face vectors are linearly dependent")


def project(fan: MultiFan, face: Iterable[int]) -> MultiFan:
    """The projected multi-fan on the link of ``face``.

    Vectors are pushed to ``V / span(face vectors)`` written in the
    coordinates of a fixed complement basis; any other complement changes the
    result by an invertible linear map.
    """
    face = tuple(sorted(int(v) for v in face))
    cycle = link_cycle(fan.cycle, face)
    n = fan.n
    k = len(face)
    basis = _quotient_basis([fan.vector(v) for v in face], n)
    # solve(A, b) wants A with basis vectors as columns
    a = [tuple(col[r] for col in basis) for r in range(n)]
    coloring = []
    for vec in fan.coloring:
        if vec is None:
            coloring.append(None)
        else:
            coloring.append(solve(a, vec)[k:])
    apex = None
    if fan.apex is not None and set(fan.apex) <= cycle.vertices():
        apex = fan.apex
    return MultiFan(cycle, coloring, apex)


def join(a: MultiFan, b: MultiFan) -> MultiFan:
    """Join with block coloring ``(l', 0)`` / ``(0, l'')``; ``b`` is shifted by ``a.m``."""
    cycle = join_cycles(a.cycle, b.cycle)
    na, nb = a.n, b.n
    zeros_a = (Fraction(0),) * na
    zeros_b = (Fraction(0),) * nb
    coloring = [None if v is None else v + zeros_b for v in a.coloring]
    coloring += [None if v is None else zeros_a + v for v in b.coloring]
    if a.apex is not None:
        apex = a.apex
    elif b.apex is not None:
        apex = (b.apex[0] + a.m, b.apex[1] + a.m)
    else:
        apex = None
    return MultiFan(cycle, coloring, apex)


def interval_fan(a=1, b=-1) -> MultiFan:
    """1-dimensional fan ``x - y`` with values ``a`` and ``b`` (opposite signs)."""
    return MultiFan(zero_sphere(), [(a,), (b,)])


def suspend(fan: MultiFan, apex_x=None, apex_y=None) -> MultiFan:
    """Fan on the suspension, apices at ``m+1, m+2``.

    The base vectors become ``(v, 0)``; the apex values default to ``+e_n`` and
    ``-e_n`` (the join with an interval fan). Any values with nonzero last
    coordinate keep the fan nondegenerate.
    """
    s = join(fan, interval_fan())
    n = s.n
    coloring = list(s.coloring)
    if apex_x is not None:
        coloring[-2] = as_vector(apex_x, n)
    if apex_y is not None:
        coloring[-1] = as_vector(apex_y, n)
    return MultiFan(s.cycle, coloring, (fan.m + 1, fan.m + 2))


def _merge_colorings(a: MultiFan, b: MultiFan) -> list:
    if (a.m, a.n) != (b.m, b.n):
        raise DimensionMismatch(f"fans differ in shape: (m={a.m}, n={a.n}) vs (m={b.m}, n={b.n})")
    used_a, used_b = a.cycle.vertices(), b.cycle.vertices()
    out = []
    for v in range(1, a.m + 1):
        va, vb = a.vector(v), b.vector(v)
        if v in used_a and v in used_b and va != vb:
            raise ColoringMismatch(f"vertex {v} has different vectors")
        if v in used_a or vb is None:
            out.append(va)
        elif v in used_b or va is None:
            out.append(vb)
        else:
            out.append(va)
    return out


def add(a: MultiFan, b: MultiFan, apex=None) -> MultiFan:
    """Sum of fans sharing vertex set and coloring."""
    coloring = _merge_colorings(a, b)
    return MultiFan(a.cycle + b.cycle, coloring, apex)


def subtract(a: MultiFan, b: MultiFan, apex=None) -> MultiFan:
    coloring = _merge_colorings(a, b)
    return MultiFan(a.cycle - b.cycle, coloring, apex)


def connected_sum(a: MultiFan, b: MultiFan, identify: Iterable[tuple[int, int]]) -> MultiFan:
    """Identify vertices ``(va, vb)`` and add the cycles.

    Glued vertices must carry equal vectors, and those vectors must be
    linearly independent. Unglued vertices of ``b`` are appended after ``a``.
    """
    if a.n != b.n:
        raise DimensionMismatch("connected sum needs fans of the same dimension")
    pairs = [(int(x), int(y)) for x, y in identify]
    for x, y in pairs:
        if a.vector(x) is None or a.vector(x) != b.vector(y):
            raise ColoringMismatch(f"vertices {x} and {y} carry different vectors")
    glue = [a.vector(x) for x, _ in pairs]
    if glue and rank(glue) < len(glue):
        raise DependentGlueSet("glued vectors are linearly dependent")
    cycle, mapping = connected_sum_cycles(a.cycle, b.cycle, pairs)
    coloring = list(a.coloring) + [None] * (cycle.m - a.m)
    for v, target in mapping.items():
        if target > a.m:
            coloring[target - 1] = b.vector(v)
    return MultiFan(cycle, coloring)


def gl_transform(fan: MultiFan, matrix: Sequence[Sequence]) -> MultiFan:
    a = [as_vector(r, fan.n) for r in matrix]
    if len(a) != fan.n:
        raise DimensionMismatch("transform must be n x n")
    if determinant(a) == 0:
        raise SingularMatrix("transform is not invertible")
    coloring = [None if v is None else mat_vec(a, v) for v in fan.coloring]
    return MultiFan(fan.cycle, coloring, fan.apex)


def recolor(fan: MultiFan, vertex: int, value) -> MultiFan:
    coloring = list(fan.coloring)
    coloring[vertex - 1] = as_vector(value, fan.n)
    return MultiFan(fan.cycle, coloring, fan.apex)


def relabel(fan: MultiFan, mapping: Mapping[int, int]) -> MultiFan:
    """Apply a vertex permutation of ``1..m``."""
    perm = {v: mapping.get(v, v) for v in range(1, fan.m + 1)}
    if sorted(perm.values()) != list(range(1, fan.m + 1)):
        raise MultiFanError("relabelling must be a permutation of 1..m")
    coloring = [None] * fan.m
    for v, w in perm.items():
        coloring[w - 1] = fan.vector(v)
    apex = None if fan.apex is None else (perm[fan.apex[0]], perm[fan.apex[1]])
    return MultiFan(fan.cycle.relabel(perm), coloring, apex)


def drop_vertex(fan: MultiFan, vertex: int) -> MultiFan:
    """Remove a ghost vertex and shift higher labels down by one."""
    if vertex in fan.cycle.vertices():
        raise MultiFanError(f"vertex {vertex} is not a ghost")
    mapping = {v: v - 1 for v in range(vertex + 1, fan.m + 1)}
    cycle = fan.cycle.relabel(mapping, m=fan.m - 1)
    coloring = fan.coloring[: vertex - 1] + fan.coloring[vertex:]
    apex = None
    if fan.apex is not None and vertex not in fan.apex:
        apex = tuple(mapping.get(a, a) for a in fan.apex)
    return MultiFan(cycle, coloring, apex)


def split_vertex(fan: MultiFan, vertex: int, value) -> tuple[MultiFan, MultiFan]:
    """Two fans differing only in the vector at ``vertex``, on a common vertex set.

    A new vertex ``y = m + 1`` carries ``value``. The first fan keeps the
    cycle through ``vertex`` (``y`` is a ghost); the second routes the cycle
    through ``y`` instead (``vertex`` is a ghost). Their difference is
    suspension-shaped with apices ``(vertex, y)``.
    """
    m = fan.m
    y = m + 1
    coloring = list(fan.coloring) + [as_vector(value, fan.n)]
    first = MultiFan(fan.cycle.with_m(m + 1), coloring)
    second = MultiFan(fan.cycle.relabel({vertex: y}, m=m + 1), coloring)
    return first, second


def _independent(vectors: list) -> bool:
    return rank(vectors, certify=True) == len(vectors)


def random_coloring(
    cycle: SimplicialChain,
    n: int | None = None,
    rng: random.Random | None = None,
    fixed: Mapping[int, Sequence] | None = None,
    bound: int = 10,
    attempts: int = 32,
) -> list:
    """Random integer vectors at the unfixed support vertices, nondegenerate on every facet.

    Vertices are filled one at a time, keeping every partially assigned
    facet linearly independent, so a dead end only arises from the fixed
    values themselves.
    """
    n = cycle.k if n is None else n
    rng = rng or random.Random(0)
    fixed = {int(k): as_vector(v, n) for k, v in (fixed or {}).items()}
    facets = cycle.simplices()
    support = sorted(cycle.vertices())
    for _ in range(attempts):
        coloring: list = [None] * cycle.m
        for v, vec in fixed.items():
            coloring[v - 1] = vec
        ok = True
        for v in support:
            if coloring[v - 1] is not None:
                continue
            touching = [s for s in facets if v in s]
            for _draw in range(100):
                vec = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))
                coloring[v - 1] = vec
                if all(
                    _independent([coloring[u - 1] for u in s if coloring[u - 1] is not None])
                    for s in touching
                ):
                    break
            else:
                ok = False
                break
        if ok:
            try:
                MultiFan(cycle, coloring)
            except DegenerateColoring:
                continue
            return coloring
    raise GenericityExhausted("could not find a nondegenerate coloring")


def random_fan(cycle: SimplicialChain, seed: int = 0, fixed=None, apex=None, bound: int = 10) -> MultiFan:
    rng = random.Random(seed)
    return MultiFan(cycle, random_coloring(cycle, rng=rng, fixed=fixed, bound=bound), apex)
