import pytest

from multifan.catalog import gamma_cycle, minimal_torus, octahedron_fan
from multifan.errors import MultiFanError, SampleDisagreement, TooManySingularPoints
from multifan.exactmath import rank
from multifan.explorer import (
    StratumSpec,
    enumerate_strata,
    r_invariant,
    representative_vectors,
    singular_vertices,
)
from multifan.simplicial import SimplicialChain, suspension


def test_singular_vertex_examples():
    assert singular_vertices(octahedron_fan().cycle).vertices == ()
    assert singular_vertices(suspension(minimal_torus())).vertices == (8, 9)
    report = singular_vertices(gamma_cycle())
    assert report.vertices == (5, 6) and report.isolated


def test_adjacent_singular_vertices_are_reported():
    # oriented cycles 1-2-3 and 1-4-2-5: vertices 1 and 2 have degree 4 and share an edge
    graph = SimplicialChain.from_facets(5, [(1, 2), (2, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 1)])
    assert graph.is_cycle()
    report = singular_vertices(graph)
    assert report.vertices == (1, 2)
    assert report.adjacent_pairs == ((1, 2),) and not report.isolated


def test_stratum_counts():
    assert [len(enumerate_strata(range(1, k + 1), 4)) for k in (0, 1, 2, 3)] == [1, 1, 2, 4]
    with pytest.raises(TooManySingularPoints):
        enumerate_strata(range(1, 5), 4)
    assert len(enumerate_strata(range(1, 5), 4, exhaustive=False)) > 4
    # in the plane three independent values are impossible
    assert len(enumerate_strata((1, 2, 3), 2)) == 3


def test_representatives_realize_the_pattern():
    for k in (1, 2, 3):
        for spec in enumerate_strata(range(1, k + 1), 4):
            reps = representative_vectors(spec, 4)
            assert rank(reps, certify=True) == spec.rank
    with pytest.raises(MultiFanError):
        representative_vectors(StratumSpec(((1,), (2,), (3,)), 3), 2)


def test_r_on_gamma():
    report = r_invariant(gamma_cycle(), seed=5)
    assert report.r == 2
    assert report.d_vectors == ((1, 2, 1), (1, 4, 1))
    assert all(s.agrees and s.samples == 3 for s in report.strata)


def test_r_on_manifolds_is_one():
    assert r_invariant(octahedron_fan().cycle, seed=1).r == 1
    assert r_invariant(suspension(octahedron_fan().cycle), seed=1).r == 1


def test_disagreement_is_surfaced(monkeypatch):
    import multifan.explorer as ex

    counter = iter(range(100))
    monkeypatch.setattr(ex, "_sample", lambda cycle, n, spec, seed: (1, next(counter), 1))
    with pytest.raises(SampleDisagreement):
        ex.r_invariant(gamma_cycle(), seed=0)


def test_report_is_deterministic_and_serializable():
    a = r_invariant(gamma_cycle(), seed=9).to_dict()
    b = r_invariant(gamma_cycle(), seed=9).to_dict()
    assert a == b and a["r"] == 2 and a["singular_vertices"] == [5, 6]


def test_parallel_workers_match_serial():
    serial = r_invariant(gamma_cycle(), seed=3)
    parallel = r_invariant(gamma_cycle(), seed=3, workers=2)
    assert serial == parallel
