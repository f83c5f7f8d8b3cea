import pytest

from oracles import brute_force_automorphisms
from symcensus import constructions as C
from symcensus.census.propsuite import (
    GRAPH_COUNTS, all_graphs, brute_force_aut_count, run_suites,
)
from symcensus.census.voltage_search import closed_walk_coefficients, gl2, search_zp2_covers
from symcensus.coverings import VoltageAssignment

SMALL = {"covers": 12, "ct_samples": 6, "max_n": 5, "relabelings": 2}


def test_suites_pass_on_small_config():
    results = run_suites(SMALL)
    assert [r.name for r in results][0] == "s-arc counts"
    for r in results:
        assert r.passed, r.failures
        assert r.line().startswith("PASS")


def test_suites_are_deterministic():
    a = run_suites(SMALL, ["fold-parity", "ct-quotient"])
    b = run_suites(SMALL, ["fold-parity", "ct-quotient"])
    assert [r.line() for r in a] == [r.line() for r in b]


def test_suite_selection_does_not_shift_streams():
    alone = run_suites(SMALL, ["ct-quotient"])[0]
    mixed = run_suites(SMALL, ["fold-parity", "ct-quotient"])[1]
    assert alone.line() == mixed.line()


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suites(SMALL, ["bogus"])


def test_graph_generation_counts():
    classes = all_graphs(6)
    assert [len(classes[n]) for n in range(7)] == list(GRAPH_COUNTS[:7])


@pytest.mark.parametrize("g", [C.cycle(6), C.octahedron(), C.complete_bipartite(3, 4), C.path_graph(5)])
def test_numpy_brute_force_agrees_with_oracle(g):
    adj = [g.neighbors(v) for v in range(g.n)]
    assert brute_force_aut_count(g) == len(brute_force_automorphisms(adj))


def test_gl2_sizes():
    assert len(gl2(2)) == 6 and len(gl2(3)) == 48


def test_closed_walks_of_length_three_are_triangles():
    va = VoltageAssignment(C.octahedron(), (2, 2))
    table = closed_walk_coefficients(va, 3)
    # each arc of the octahedron lies on two triangles, walked once each way from that arc
    assert all(sum(c.values()) == 2 for c in table.values())


def test_walk_filter_loses_nothing_for_p2():
    full = search_zp2_covers(C.octahedron(), 2, lengths=())
    fast = search_zp2_covers(C.octahedron(), 2)
    assert full.connected == fast.connected == 16002
    assert len(full.arc_transitive) == len(fast.arc_transitive) == 5
    assert not full.violations and not fast.violations
    # arc-transitive covers exist, but CT is never normal in them
    assert all(not c.ct_normal for c in fast.arc_transitive)
