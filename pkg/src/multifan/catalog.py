"""Built-in cycles and fans used throughout the tests and the CLI."""

from __future__ import annotations

from fractions import Fraction

from .fan import MultiFan, interval_fan, join, random_fan, suspend
from .simplicial import (
    boundary,
    SimplicialChain,
    SimplicialComplex,
    connected_sum_cycles,
    fundamental_cycle,
    point_cycle,
    suspension,
)

GAMMA_EDGES = [(1, 6), (6, 2), (2, 5), (5, 1), (3, 6), (6, 4), (4, 5), (5, 3)]

# Borromean rings (three singular vertices) and the second three-component
# link: reference d-vectors for user-supplied triangulations, keyed by
# stratum label. These triangulations are not built here.
REFERENCE_DVECTORS = {
    "borromean": {"all": (1, 27, 100, 27, 1)},
    "three_component_link": {
        "collinear": (1, 14, 34, 14, 1),
        "rank2": (1, 14, 38, 14, 1),
        "independent": (1, 14, 40, 14, 1),
    },
}


def gamma_cycle() -> SimplicialChain:
    """Eulerian graph on 6 vertices; 5 and 6 are the singular vertices."""
    return SimplicialChain.from_facets(6, GAMMA_EDGES)


def gamma_fan(independent: bool = True, smooth=None) -> MultiFan:
    """``omega_Gamma`` with e_1 at vertices 1-4 unless ``smooth`` overrides them."""
    smooth = smooth or [(1, 0)] * 4
    y = (1, 1) if independent else (0, 1)
    return MultiFan(gamma_cycle(), list(smooth) + [(0, 1), y])


def square_cycle() -> SimplicialChain:
    """4-cycle 1 -> 2 -> 3 -> 4 -> 1."""
    return SimplicialChain.from_facets(4, [(1, 2), (2, 3), (3, 4), (4, 1)])


def square_fan() -> MultiFan:
    """Rays e1, e2, -e1, -e2; volume ``(c1 + c3)(c2 + c4)``."""
    return MultiFan(square_cycle(), [(1, 0), (0, 1), (-1, 0), (0, -1)])


def cross_polytope_fan(n: int) -> MultiFan:
    """Join of ``n`` interval fans: vertices ``2i-1, 2i`` carry ``+e_i, -e_i``."""
    fan = MultiFan(point_cycle(), [])
    for _ in range(n):
        fan = join(fan, interval_fan())
    return fan


def octahedron_fan() -> MultiFan:
    return cross_polytope_fan(3)


def simplex_boundary_cycle(n: int) -> SimplicialChain:
    """Boundary of the simplex on ``n + 1`` vertices (an (n-1)-sphere)."""
    full = SimplicialChain(n + 1, n + 1, {tuple(range(1, n + 2)): 1})
    return boundary(full)


def simplex_boundary_fan(n: int) -> MultiFan:
    """Complete fan of the simplex: e_1..e_n and -(e_1 + ... + e_n)."""
    coloring = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    coloring.append(tuple(Fraction(-1) for _ in range(n)))
    return MultiFan(simplex_boundary_cycle(n), coloring)


def minimal_torus() -> SimplicialChain:
    """The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    facets = set()
    for i in range(7):
        facets.add(tuple(sorted(((i + d) % 7) + 1 for d in (0, 1, 3))))
        facets.add(tuple(sorted(((i + d) % 7) + 1 for d in (0, 2, 3))))
    return fundamental_cycle(SimplicialComplex(7, frozenset(facets)))


def genus_g_surface(g: int) -> SimplicialChain:
    """Orientable surface of genus ``g >= 1`` with ``7 + 4(g - 1)`` vertices.

    Copies of the minimal torus are glued along a triangle whose two copies
    carry opposite orientations, so the triangle cancels in the sum.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    torus = minimal_torus()
    tri = torus.simplices()[0]
    surface = torus
    for _ in range(g - 1):
        # any facet works: only three vertices are identified
        target = surface.simplices()[-1]
        pairs = list(zip(target, tri))
        total, _ = connected_sum_cycles(surface, torus, pairs)
        if total.weight(target) != 0:
            total, _ = connected_sum_cycles(surface, -torus, pairs)
        surface = total
    return surface


def suspended(cycle: SimplicialChain) -> SimplicialChain:
    return suspension(cycle)


def torus_fan(seed: int = 0) -> MultiFan:
    return random_fan(minimal_torus(), seed=seed)


def suspended_torus_collinear(seed: int = 0) -> MultiFan:
    """Join of a torus fan with an interval fan: apex values e_4 and -e_4."""
    return suspend(torus_fan(seed))


def suspended_torus_noncollinear(seed: int = 0) -> MultiFan:
    """Random coloring of the suspended torus with apex values e_1 and e_2."""
    cycle = suspension(minimal_torus())
    fixed = {8: (1, 0, 0, 0), 9: (0, 1, 0, 0)}
    return random_fan(cycle, seed=seed, fixed=fixed, apex=(8, 9))


def catalog() -> dict[str, object]:
    """Named cycles and fans, built fresh on each call."""
    return {
        "gamma_cycle": gamma_cycle(),
        "gamma_collinear": gamma_fan(independent=False),
        "gamma_independent": gamma_fan(independent=True),
        "interval": interval_fan(),
        "square": square_fan(),
        "octahedron": octahedron_fan(),
        "cross_polytope_4": cross_polytope_fan(4),
        "simplex_boundary_3": simplex_boundary_fan(3),
        "minimal_torus": minimal_torus(),
        "torus_fan": torus_fan(),
        "genus_2_surface": genus_g_surface(2),
        "suspended_torus_collinear": suspended_torus_collinear(),
        "suspended_torus_noncollinear": suspended_torus_noncollinear(),
        "suspended_octahedron": suspend(octahedron_fan(), apex_y=(1, 1, 1, -1)),
    }
