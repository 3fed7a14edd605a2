"""Bistellar moves on weighted cycles in dimensions 2 and 3.

A move removes a face ``A`` whose link is the boundary of a simplex ``B``
not already in the complex, and puts in ``dA * B`` instead of ``A * dB``. On
the cycle this is ``omega - c * d(A u B)`` where ``c`` is the common weight
of the old facets relative to their signs in ``d(A u B)``.

Kinds are ``(dim B, dim A)``: in dimension 2 the moves are ``(0, 2)``,
``(1, 1)``, ``(2, 0)``; in dimension 3 they are ``(0, 3)``, ``(1, 2)``,
``(2, 1)``, ``(3, 0)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DegenerateColoring, GenericityExhausted, MoveNotApplicable, MultiFanError
from .exactmath import as_vector
from .fan import MultiFan, check_suspension_shape, drop_vertex, project, relabel
from .simplicial import is_smooth_vertex

VALID_KINDS = {
    3: {(0, 2), (1, 1), (2, 0)},
    4: {(0, 3), (1, 2), (2, 1), (3, 0)},
}


@dataclass(frozen=True)
class MoveSpec:
    kind: tuple[int, int]
    target: tuple[int, ...]
    new_vertex: int | None = None

    def to_dict(self) -> dict:
        return {"kind": list(self.kind), "target": list(self.target), "new_vertex": self.new_vertex}


def _signed_boundary_faces(sigma: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    return {sigma[:i] + sigma[i + 1 :]: (-1 if i % 2 else 1) for i in range(len(sigma))}


def _link_vertices(fan: MultiFan, face: tuple[int, ...]) -> tuple[set, list]:
    fs = set(face)
    link = [tuple(v for v in s if v not in fs) for s in fan.cycle.simplices() if fs <= set(s)]
    return {v for s in link for v in s}, link


def inserted_simplex(fan: MultiFan, kind: tuple[int, int], target) -> tuple[int, ...]:
    """The simplex ``B`` a move of this kind on ``target`` would insert.

    Raises :class:`MoveNotApplicable` if the move is not a valid bistellar
    move here.
    """
    n = fan.n
    if n not in VALID_KINDS or tuple(kind) not in VALID_KINDS[n]:
        raise MoveNotApplicable(f"kind {kind} is not a move in dimension {n - 1}")
    p, q = kind
    a = tuple(sorted(target))
    if len(a) != q + 1:
        raise MoveNotApplicable(f"kind {kind} needs a target with {q + 1} vertices")
    verts, link = _link_vertices(fan, a)
    if not link:
        raise MoveNotApplicable(f"{list(a)} is not a face")
    if p == 0:
        if link != [()]:
            raise MoveNotApplicable(f"{list(a)} is not a facet")
        return (fan.m + 1,)
    b = tuple(sorted(verts))
    if len(b) != p + 1 or sorted(link) != sorted(combinations(b, p)):
        raise MoveNotApplicable(f"link of {list(a)} is not the boundary of a {p}-simplex")
    bs = set(b)
    if any(bs <= set(s) for s in fan.cycle.simplices()):
        raise MoveNotApplicable(f"{list(b)} is already a face")
    return b


def _draw_vector(rng: random.Random, n: int, bound: int) -> tuple:
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))


def apply_move(fan: MultiFan, spec: MoveSpec, new_lambda=None, seed: int | None = None) -> MultiFan:
    """Apply one bistellar move.

    A vertex inserted by a ``(0, q)`` move gets ``new_lambda`` or a seeded
    random vector that keeps every new facet nondegenerate. A vertex removed
    by a ``(p, 0)`` move is dropped and higher labels shift down.
    """
    a = tuple(sorted(spec.target))
    b = inserted_simplex(fan, spec.kind, a)
    sigma = tuple(sorted(a + b))
    faces = _signed_boundary_faces(sigma)
    aset = set(a)
    c = None
    for face, sign in faces.items():
        w = fan.cycle.weight(face)
        if aset <= set(face):
            ratio = w * sign
            if abs(ratio) != 1 or (c is not None and ratio != c):
                raise MoveNotApplicable("facets around the target are not a coherent +-1 patch")
            c = ratio
        elif w != 0:
            raise MoveNotApplicable(f"{list(face)} is already a facet")
    m = fan.m + 1 if spec.kind[0] == 0 else fan.m
    weights = fan.cycle.weights
    for face, sign in faces.items():
        weights[face] = weights.get(face, Fraction(0)) - c * sign
    cycle = type(fan.cycle)(m, fan.n, weights)
    coloring = list(fan.coloring)
    if spec.kind[0] == 0:
        new = b[0]
        coloring.append(None)
        if new_lambda is not None:
            coloring[new - 1] = as_vector(new_lambda, fan.n)
            result = MultiFan(cycle, coloring, fan.apex)
        else:
            rng = random.Random(seed)
            result = None
            bound = 8
            for _ in range(64):
                coloring[new - 1] = _draw_vector(rng, fan.n, bound)
                try:
                    result = MultiFan(cycle, coloring, fan.apex)
                    break
                except DegenerateColoring:
                    bound *= 2
            if result is None:
                raise GenericityExhausted("no generic vector for the inserted vertex")
    else:
        result = MultiFan(cycle, coloring, fan.apex)
    if spec.kind[1] == 0:
        result = drop_vertex(result, a[0])
    return result


def candidate_moves(fan: MultiFan, avoid: set[int] = frozenset()) -> list[MoveSpec]:
    """Every applicable move whose vertices avoid ``avoid``, in a fixed order."""
    n = fan.n
    if n not in VALID_KINDS:
        raise MultiFanError("moves are implemented for 2- and 3-dimensional cycles")
    faces = set()
    for s in fan.cycle.simplices():
        for k in range(1, n + 1):
            faces.update(combinations(s, k))
    out = []
    for a in sorted(faces, key=lambda f: (-len(f), f)):
        if _touches(a, avoid):
            continue
        kind = (n - len(a), len(a) - 1)
        try:
            b = inserted_simplex(fan, kind, a)
        except MoveNotApplicable:
            continue
        if len(b) > 1 and _touches(b, avoid):
            continue
        spec = MoveSpec(kind, a, b[0] if kind[0] == 0 else None)
        try:
            _check_weights(fan, a, b)
        except MoveNotApplicable:
            continue
        out.append(spec)
    return out


def _touches(face, avoid) -> bool:
    return any(v in avoid for v in face)


def _check_weights(fan: MultiFan, a, b) -> None:
    faces = _signed_boundary_faces(tuple(sorted(tuple(a) + tuple(b))))
    ratios = {fan.cycle.weight(f) * s for f, s in faces.items() if set(a) <= set(f)}
    if len(ratios) != 1 or abs(next(iter(ratios))) != 1:
        raise MoveNotApplicable("incoherent weights")


def singular_set(fan: MultiFan) -> set[int]:
    return {v for v in fan.cycle.vertices() if not is_smooth_vertex(fan.cycle, v)}


def random_moves(fan: MultiFan, count: int, seed: int = 0, suspended: bool | None = None):
    """Apply ``count`` seeded random moves away from singular vertices.

    On a suspension-shaped 3-dimensional fan the moves are suspended 2-moves
    of the base (``suspended=None`` picks this automatically). Returns the
    new fan and the list of applied moves.
    """
    rng = random.Random(seed)
    if suspended is None:
        suspended = fan.apex is not None and fan.n == 4
    log = []
    for _ in range(count):
        if suspended:
            x, y = check_suspension_shape(fan)
            base = _base_fan_view(fan, x)
            avoid = singular_set(fan) - {x, y}
            candidates = [s for s in candidate_moves(base, avoid) if _suspendable(fan, s)]
        else:
            candidates = candidate_moves(fan, singular_set(fan))
        rng.shuffle(candidates)
        sub_seed = rng.randrange(2**31)
        for spec in candidates:
            # a move may put two dependent rays into one new facet; skip it
            try:
                if suspended:
                    fan = suspended_move(fan, spec, seed=sub_seed)
                else:
                    fan = apply_move(fan, spec, seed=sub_seed)
            except DegenerateColoring:
                continue
            log.append(spec)
            break
        else:
            break
    return fan, log


def _base_fan_view(fan: MultiFan, x: int) -> MultiFan:
    """The base of the suspension as the fan projected at apex ``x``."""
    return project(fan, (x,))


def _suspendable(fan: MultiFan, spec: MoveSpec) -> bool:
    try:
        _suspension_steps(fan, spec)
    except MoveNotApplicable:
        return False
    return True


def _suspension_steps(fan: MultiFan, spec: MoveSpec) -> list[tuple[tuple[int, int], tuple[int, ...]]]:
    """3-dimensional steps realizing the suspension of a 2-dimensional move."""
    x, y = fan.apex
    kind = tuple(spec.kind)
    t = tuple(sorted(spec.target))
    if kind == (0, 2):
        return [((0, 3), tuple(sorted(t + (y,)))), ((1, 2), t)]
    if kind == (2, 0):
        return [((2, 1), tuple(sorted(t + (x,)))), ((3, 0), t)]
    if kind == (1, 1):
        return [((1, 2), tuple(sorted(t + (y,)))), ((2, 1), t)]
    raise MoveNotApplicable(f"{kind} is not a 2-dimensional move")


def suspended_move(fan: MultiFan, spec: MoveSpec, new_lambda=None, seed: int | None = None) -> MultiFan:
    """Suspension of a 2-dimensional move on the base of a suspended fan.

    ``(0, 2)`` on triangle ``abc``: insert ``d`` into ``abcy``, then the
    ``(1, 2)``-move on ``abcd, abcx``. ``(1, 1)`` on edge ``bd``: the
    ``(1, 2)``-move on ``abdy, bcdy``, then the ``(2, 1)``-move on ``bd``.
    ``(2, 0)`` is the reverse of ``(0, 2)``. Apices stay the two largest labels.
    """
    if fan.n != 4:
        raise MoveNotApplicable("suspended moves act on suspensions of 2-cycles")
    x, y = check_suspension_shape(fan)
    if (x, y) != (fan.m - 1, fan.m):
        raise MoveNotApplicable("apices must be the two largest labels")
    if any(v in (x, y) for v in spec.target):
        raise MoveNotApplicable("base move may not touch the apices")
    steps = _suspension_steps(fan, spec)
    result = fan
    for kind, target in steps:
        result = apply_move(result, MoveSpec(kind, target), new_lambda=new_lambda, seed=seed)
    if tuple(spec.kind) == (0, 2):
        # new vertex landed at m + 1; move it below the apices
        m = result.m
        result = relabel(result, {m: m - 2, m - 2: m - 1, m - 1: m})
    elif tuple(spec.kind) == (2, 0):
        result = result.with_apex((result.m - 1, result.m))
    check_suspension_shape(result)
    return result
