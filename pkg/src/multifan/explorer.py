"""Singular vertices, coloring strata at them, and the count ``r`` of d-vectors.

Colorings at smooth vertices do not change the d-vector, so only the values
at singular vertices matter. Up to ``GL(V)`` those values are described by a
stratum: how the singular vertices split into collinearity classes and the
rank spanned by the classes. Each stratum is sampled a few times; disagreement
inside a stratum is reported as an error instead of being averaged away.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import config
from .algebra import d_vector
from .errors import MultiFanError, NotACycle, SampleDisagreement, TooManySingularPoints
from .exactmath import rank
from .fan import MultiFan, random_fan
from .simplicial import SimplicialChain, is_smooth_vertex

EXHAUSTIVE_LIMIT = 3


@dataclass(frozen=True)
class SingularityReport:
    vertices: tuple[int, ...]
    # edges of the support joining two singular vertices
    adjacent_pairs: tuple[tuple[int, int], ...] = ()

    @property
    def isolated(self) -> bool:
        return not self.adjacent_pairs


def singular_vertices(fan_or_cycle) -> SingularityReport:
    """Support vertices whose link is not a homology sphere."""
    cycle = fan_or_cycle.cycle if isinstance(fan_or_cycle, MultiFan) else fan_or_cycle
    singular = tuple(v for v in sorted(cycle.vertices()) if not is_smooth_vertex(cycle, v))
    edges = {e for s in cycle.simplices() for e in combinations(s, 2)}
    bad = tuple(sorted(e for e in edges if e[0] in singular and e[1] in singular))
    return SingularityReport(singular, bad)


@dataclass(frozen=True)
class StratumSpec:
    """Collinearity classes of singular vertices and the rank they span."""

    classes: tuple[tuple[int, ...], ...]
    rank: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for c in self.classes for v in c))

    def label(self) -> str:
        if not self.classes:
            return "no singular vertices"
        sizes = "+".join(str(len(c)) for c in self.classes)
        return f"classes {sizes}, rank {self.rank}"

    def to_dict(self) -> dict:
        return {"classes": [list(c) for c in self.classes], "rank": self.rank, "label": self.label()}


def _integer_partitions(k: int, largest: int | None = None):
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _integer_partitions(k - first, first):
            yield (first,) + rest


def enumerate_strata(singular, n: int, exhaustive: bool = True) -> list[StratumSpec]:
    """Rank patterns of the singular values up to ``GL(V)`` and relabeling.

    For up to three points this is the complete list: 1, 2 and 4 strata for
    1, 2 and 3 points. Larger sets raise :class:`TooManySingularPoints`
    unless ``exhaustive=False``, in which case the same recipe (integer
    partition into classes, every feasible rank) is applied without any
    completeness claim.
    """
    pts = tuple(sorted(singular))
    if exhaustive and len(pts) > EXHAUSTIVE_LIMIT:
        raise TooManySingularPoints(f"{len(pts)} singular vertices; exhaustive mode handles at most 3")
    if not pts:
        return [StratumSpec((), 0)]
    out = []
    for sizes in _integer_partitions(len(pts)):
        classes, start = [], 0
        for s in sizes:
            classes.append(pts[start : start + s])
            start += s
        c = len(classes)
        lowest = 1 if c == 1 else 2
        for r in range(min(c, n), lowest - 1, -1):
            out.append(StratumSpec(tuple(classes), r))
    return out


def representative_vectors(spec: StratumSpec, n: int) -> list[tuple[Fraction, ...]]:
    """One vector per class: ``e_1, ..., e_r``, then points on a moment curve
    in their span so that any two classes stay non-collinear."""
    r = spec.rank
    reps = []
    for i in range(len(spec.classes)):
        if i < r:
            vec = [Fraction(int(j == i)) for j in range(n)]
        else:
            t = i - r + 2
            vec = [Fraction(t**j) if j < r else Fraction(0) for j in range(n)]
        reps.append(tuple(vec))
    if reps:
        if rank(reps, certify=True) != r:
            raise MultiFanError(f"stratum {spec.label()} not realized in dimension {n}")
        for a, b in combinations(reps, 2):
            if rank([a, b], certify=True) != 2:
                raise MultiFanError(f"stratum {spec.label()} has collinear classes")
    return reps


def stratum_values(spec: StratumSpec, n: int, rng: random.Random) -> dict[int, tuple]:
    """Values at the singular vertices: random nonzero multiples of the class vectors."""
    values = {}
    for rep, cls in zip(representative_vectors(spec, n), spec.classes):
        for v in cls:
            scale = 0
            while scale == 0:
                scale = rng.randint(-5, 5)
            values[v] = tuple(scale * x for x in rep)
    return values


@dataclass(frozen=True)
class StratumReport:
    spec: StratumSpec
    d_vectors: tuple[tuple[int, ...], ...]
    seeds: tuple[int, ...]

    @property
    def samples(self) -> int:
        return len(self.d_vectors)

    @property
    def agrees(self) -> bool:
        return len(set(self.d_vectors)) <= 1

    @property
    def d_vector(self) -> tuple[int, ...] | None:
        return self.d_vectors[0] if self.agrees and self.d_vectors else None

    def to_dict(self) -> dict:
        return {
            "stratum": self.spec.to_dict(),
            "d_vectors": [list(d) for d in self.d_vectors],
            "seeds": list(self.seeds),
            "agrees": self.agrees,
        }


@dataclass(frozen=True)
class RInvariantReport:
    strata: tuple[StratumReport, ...]
    singular: SingularityReport
    seed: int
    d_vectors: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def r(self) -> int:
        return len(self.d_vectors)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "d_vectors": [list(d) for d in self.d_vectors],
            "singular_vertices": list(self.singular.vertices),
            "adjacent_singular_pairs": [list(e) for e in self.singular.adjacent_pairs],
            "seed": self.seed,
            "strata": [s.to_dict() for s in self.strata],
        }


def _sample(cycle: SimplicialChain, n: int, spec: StratumSpec, sample_seed: int) -> tuple[int, ...]:
    rng = random.Random(sample_seed)
    fixed = stratum_values(spec, n, rng)
    fan = random_fan(cycle, seed=rng.randrange(2**31), fixed=fixed)
    return d_vector(fan, seed=rng.randrange(2**31))


def r_invariant(
    cycle: SimplicialChain,
    n: int | None = None,
    samples_per_stratum: int = config.SAMPLES_PER_STRATUM,
    seed: int | None = None,
    strata: list[StratumSpec] | None = None,
    workers: int = 1,
) -> RInvariantReport:
    """Sample every stratum and count the distinct d-vectors.

    Raises :class:`SampleDisagreement` if two samples of one stratum give
    different d-vectors. ``workers > 1`` spreads the samples over processes;
    results are merged by (stratum, sample) index so the report does not
    depend on scheduling.
    """
    if not cycle.is_cycle():
        raise NotACycle("r is defined for cycles only")
    n = cycle.k if n is None else n
    seed = config.DEFAULT_SEED if seed is None else seed
    singular = singular_vertices(cycle)
    if strata is None:
        strata = enumerate_strata(singular.vertices, n)
    master = random.Random(seed)
    jobs = []
    for spec in strata:
        for _ in range(samples_per_stratum):
            jobs.append((spec, master.randrange(2**31)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sample, *zip(*[(cycle, n, s, sd) for s, sd in jobs])))
    else:
        results = [_sample(cycle, n, s, sd) for s, sd in jobs]
    reports = []
    for i, spec in enumerate(strata):
        lo = i * samples_per_stratum
        chunk = slice(lo, lo + samples_per_stratum)
        rep = StratumReport(spec, tuple(results[chunk]), tuple(sd for _, sd in jobs[chunk]))
        if not rep.agrees:
            raise SampleDisagreement(f"stratum {spec.label()} produced d-vectors {sorted(set(rep.d_vectors))}")
        reports.append(rep)
    distinct = tuple(sorted({r.d_vector for r in reports if r.d_vector is not None}))
    return RInvariantReport(tuple(reports), singular, seed, distinct)
