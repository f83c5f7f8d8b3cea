import io
import random

import pytest

from symcensus import constructions as C
from symcensus.coverings import (
    CoveringError, PreconditionError, VoltageAssignment, VoltageError, derived_graph,
    fold_parity_check, lift_consistency_check, quotient_graph, read_voltages, reduction_case,
    verify_covering, voltage_assignment_from_quotient, write_voltages,
)
from symcensus.graphs import Graph, is_bipartite, is_connected, valency
from symcensus.groups import make_group, regular_representation, right_multiplication
from symcensus.perm import Permutation, schreier_sims
from symcensus.symmetry import NotAutomorphismError, automorphism_group, is_isomorphic


def shift(n, k):
    return schreier_sims([Permutation([(i + k) % n for i in range(n)])], n)


def twin_swap(g):
    return schreier_sims([Permutation([v ^ 1 for v in range(g.n)])], g.n)


def by_words(tag, p, *words):
    G = C.family_group(tag, p)
    return schreier_sims([right_multiplication(G, G.word(w)) for w in words], 6 * p * p)


# -- derived graphs ------------------------------------------------------------------


def test_c3_double_cover_is_c6():
    base = C.cycle(3)
    va = VoltageAssignment(base, (2,), {(1, 2): (1,)})
    d = derived_graph(va)
    assert is_isomorphic(d.graph, C.cycle(6))
    assert d.report.is_covering and d.report.fold_number == 2


def test_trivial_voltage_gives_two_triangles():
    va = VoltageAssignment(C.cycle(3), (2,))
    d = derived_graph(va)
    assert not is_connected(d.graph)
    assert is_isomorphic(d.graph, C.disjoint_union(C.cycle(3), C.cycle(3)))
    assert d.report.is_covering


def test_random_octahedron_cover():
    va = VoltageAssignment.random(C.octahedron(), (5,), random.Random(3))
    d = derived_graph(va)
    assert d.graph.n == 30 and valency(d.graph) == 4
    assert d.ct_group.order == 5 and d.ct_group.is_semiregular()
    rep = verify_covering(d.graph, C.octahedron(), d.projection)
    assert rep.is_covering and rep.fold_number == 5
    assert is_isomorphic(quotient_graph(d.graph, d.ct_group).graph, C.octahedron())


def test_vertex_indexing():
    va = VoltageAssignment(C.cycle(3), (3,), {(1, 2): (1,)})
    d = derived_graph(va)
    K = va.K
    assert d.vertex(2, K.element((1,))) == 2 * 3 + 1
    assert d.projection[7] == 2


def test_tree_edge_voltage_rejected():
    with pytest.raises(VoltageError):
        VoltageAssignment(C.cycle(3), (2,), {(0, 2): (1,)})


def test_non_edge_rejected():
    with pytest.raises(VoltageError):
        VoltageAssignment(C.path_graph(3), (2,), {(0, 2): (1,)})


def test_nonabelian_voltage_group_rejected():
    with pytest.raises(CoveringError):
        VoltageAssignment(C.cycle(3), make_group((3,), True, (-1,)))


def test_disconnected_base_rejected():
    with pytest.raises(CoveringError):
        VoltageAssignment(C.disjoint_union(C.cycle(3), C.cycle(3)), (2,))


def test_reversed_orientation_carries_inverse():
    va = VoltageAssignment(C.cycle(5), (5,), {(3, 2): (1,)})
    assert va.voltage(2, 3) == va.K.element((4,))
    assert va.voltage(3, 2) == va.K.element((1,))


def test_t_reduction_preserves_the_cover():
    base = C.prism(3)
    rng = random.Random(11)
    K = make_group((4,))
    arcs = {e: rng.choice(K.elements) for e in base.edges()}
    va = VoltageAssignment.from_arc_voltages(base, K, arcs)
    assert all(va.voltage(u, v) == K.identity for u, v in va.spanning_tree)
    # derived graph of the unreduced assignment, built by hand
    rows = [[] for _ in range(base.n * 4)]
    for (u, v), x in arcs.items():
        for g in K.elements:
            a, b = u * 4 + K.index(g), v * 4 + K.index(K.mul(x, g))
            rows[a].append(b)
            rows[b].append(a)
    assert is_isomorphic(derived_graph(va).graph, Graph(base.n * 4, rows))


def test_relabel_gives_isomorphic_cover():
    va = VoltageAssignment.random(C.petersen(), (3,), random.Random(5))
    perm = list(range(10))
    random.Random(6).shuffle(perm)
    vb = va.relabel(perm)
    assert vb.base == C.petersen().relabel(perm)
    assert is_isomorphic(derived_graph(va).graph, derived_graph(vb).graph)


def test_ct_fixes_fibres_and_edges():
    va = VoltageAssignment.random(C.complete_graph(5), (2, 2), random.Random(9))
    d = derived_graph(va)
    for h in d.ct_group.elements():
        assert all(d.projection[h[v]] == d.projection[v] for v in range(d.graph.n))
        if not h.is_identity():
            assert not any({h[u], h[v]} == {u, v} for u, v in d.graph.edges())


# -- quotients and covering checks -----------------------------------------------------


def test_c6_by_half_turn():
    q = quotient_graph(C.cycle(6), shift(6, 3))
    assert is_isomorphic(q.graph, C.cycle(3))
    rep = verify_covering(C.cycle(6), q.graph, q.orbit_of)
    assert rep.is_covering and rep.fold_number == 2
    assert fold_parity_check(C.cycle(6), q.graph, rep).status == "pass"


def test_c6_by_third_turn_loses_valency():
    q = quotient_graph(C.cycle(6), shift(6, 2))
    assert q.graph.n == 2 and q.graph.m == 1
    assert not verify_covering(C.cycle(6), q.graph, q.orbit_of).is_covering
    assert q.valency_drop(C.cycle(6)) == [1] * 6


def test_twin_swap_quotient():
    g = C.lex_cycle_2k1(12)
    N = twin_swap(g)
    q = quotient_graph(g, N)
    assert N.is_semiregular()
    assert is_isomorphic(q.graph, C.cycle(12))
    assert set(q.multiplicity.values()) == {4}
    rep = verify_covering(g, q.graph, q.orbit_of)
    assert not rep.is_covering and rep.bad_vertices


def test_quotient_needs_automorphisms():
    with pytest.raises(NotAutomorphismError):
        quotient_graph(C.path_graph(3), schreier_sims([Permutation([1, 0, 2])], 3))


def test_verify_covering_rejects_non_surjective():
    with pytest.raises(CoveringError):
        verify_covering(C.cycle(6), C.cycle(3), [0, 1, 0, 1, 0, 1])


def test_family_e_central_translation_cover():
    g = C.family("e", 5)
    N = by_words("e", 5, "xy")
    assert N.order == 5
    q = quotient_graph(g, N)
    rep = verify_covering(g, q.graph, q.orbit_of)
    assert rep.is_covering and rep.fold_number == 5 and q.graph.n == 30
    assert rep.ct_group.order == 5


def test_fold_parity_vacuous_when_not_covering():
    g = C.lex_cycle_2k1(12)
    q = quotient_graph(g, twin_swap(g))
    rep = verify_covering(g, q.graph, q.orbit_of, compute_ct=False)
    assert fold_parity_check(g, q.graph, rep).status == "vacuous"


def test_fold_parity_over_random_covers():
    rng = random.Random(20240611)
    bases = [C.cycle(3), C.cycle(5), C.complete_graph(4), C.petersen()]
    bipartite = 0
    for k in (2, 3, 4, 5):
        for i in range(40):
            va = VoltageAssignment.random(bases[i % len(bases)], (k,), rng)
            d = derived_graph(va)
            out = fold_parity_check(d.graph, va.base, d.report)
            assert out.status != "fail"
            bipartite += is_bipartite(d.graph)
    assert bipartite > 0


def test_quotient_valency_never_exceeds_base():
    rng = random.Random(2)
    for _ in range(20):
        va = VoltageAssignment.random(C.octahedron(), (6,), rng)
        d = derived_graph(va)
        for k in (2, 3, 6):
            sub = [h for h in d.ct_group.elements() if h.order() == k]
            if not sub:
                continue
            N = schreier_sims([sub[0]], d.graph.n)
            q = quotient_graph(d.graph, N)
            drops = q.valency_drop(d.graph)
            assert min(drops) >= 0
            rep = verify_covering(d.graph, q.graph, q.orbit_of, compute_ct=False)
            assert rep.is_covering == (max(drops) == 0)


# -- reduction cases ---------------------------------------------------------------------


def test_reduction_twin_swap_is_cycle_quotient():
    g = C.lex_cycle_2k1(12)
    res = reduction_case(g, twin_swap(g))
    assert res.case == 3 and res.tag == "cycle-quotient" and res.orbit_count == 12
    assert res.quotient_valency == 2 and res.semiregular


def test_reduction_family_a_normal_cover():
    g = C.family("a", 5)
    A = automorphism_group(g)
    res = reduction_case(g, by_words("a", 5, "x y^12"), A)
    assert res.case == 4 and res.orbit_count == 30 and res.quotient_valency == 4 and res.semiregular


def test_reduction_family_a_by_x_is_cycle_quotient():
    g = C.family("a", 5)
    res = reduction_case(g, by_words("a", 5, "x"))
    assert res.case == 3 and res.orbit_count == 30


def test_reduction_transitive_and_halves():
    g = C.family("a", 3)
    G = C.family_group("a", 3)
    assert reduction_case(g, regular_representation(G)).case == 1
    h = C.lex_cycle_2k1(6)
    swaps = [Permutation([v ^ 1 if v // 2 == i else v for v in range(12)]) for i in range(6)]
    rot2 = Permutation([(v + 4) % 12 for v in range(12)])
    res = reduction_case(h, schreier_sims(swaps + [rot2], 12))
    assert res.case == 2 and res.tag == "bipartition-halves"


def test_reduction_preconditions():
    with pytest.raises(PreconditionError):
        reduction_case(C.prism(4), shift(8, 4))
    g = C.family("a", 5)
    with pytest.raises(PreconditionError):
        reduction_case(g, by_words("a", 5, "y^6"))


# -- lifts ------------------------------------------------------------------------------------


def test_cycle_lift():
    Z3 = make_group((3,))
    base = C.cayley(Z3, [Z3.element((1,)), Z3.element((2,))])
    va = VoltageAssignment(base, (5,), {(1, 2): (1,)})
    rep = lift_consistency_check(base, Z3, va)
    assert rep.cover.graph.n == 15 and is_isomorphic(rep.cover.graph, C.cycle(15))
    assert rep.cayley == "yes" and rep.normal is True and rep.aut_order == 30


def test_order_150_lift():
    g = C.family("a", 5)
    va, quo, _ = voltage_assignment_from_quotient(g, by_words("a", 5, "x y^12"))
    Z = make_group((30,))
    base = C.cayley(Z, [Z.element((k,)) for k in (1, 29, 19, 11)])
    iso = is_isomorphic(quo.graph, base)
    assert iso
    rep = lift_consistency_check(base, Z, va.relabel(iso.mapping))
    assert rep.cover.graph.n == 150 and is_isomorphic(rep.cover.graph, g)
    assert rep.cayley == "yes" and rep.normal is True


def test_lift_needs_normal_cayley_base():
    G = make_group((6, 2))
    base = C.cayley(G, [G.element((a, b)) for a in (1, 5) for b in (0, 1)])
    with pytest.raises(PreconditionError):
        lift_consistency_check(base, G, VoltageAssignment(base, (5,)))


def test_voltages_from_quotient_rebuild_the_graph():
    g = C.family("e", 5)
    va, quo, mapping = voltage_assignment_from_quotient(g, by_words("e", 5, "xy"))
    d = derived_graph(va)
    assert sorted(mapping) == list(range(g.n))
    assert d.graph.relabel(mapping) == g


# -- voltage files ------------------------------------------------------------------------------


def test_voltage_file_round_trip():
    base = C.octahedron()
    va = VoltageAssignment.random(base, (3, 3), random.Random(4))
    text = write_voltages(va)
    assert text.splitlines()[0] == "6 9 2 3 3"
    assert read_voltages(text, base) == va
    buf = io.StringIO()
    write_voltages(va, buf)
    assert buf.getvalue() == text


def test_voltage_file_comments_and_missing_edges():
    base = C.cycle(3)
    va = read_voltages("# C3 double cover\n3 2 1 2\n", base)
    assert all(x == va.K.identity for x in va.voltages.values())


@pytest.mark.parametrize("text", [
    "",
    "3 2 1\n",
    "4 2 1 2\n",
    "3 3 1 2\n",
    "3 2 1 2\n0 2 1\n",
    "3 2 1 2\n1 2\n",
    "3 2 1 2\n1 2 1\n2 1 1\n",
    "3 2 1 2\nx 2 1\n",
    "3 2 1 2\n0 5 1\n",
])
def test_voltage_file_errors(text):
    with pytest.raises(VoltageError):
        read_voltages(text, C.cycle(3))
