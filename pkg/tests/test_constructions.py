import pytest

from symcensus import constructions as C
from symcensus.graphs import is_connected, valency
from symcensus.groups import make_group, regular_representation, right_multiplication
from symcensus.perm import Permutation
from symcensus.symmetry import automorphism_group, is_isomorphic, transitivity


def test_cayley_z6_is_c6():
    G = make_group((6,))
    g = C.cayley(G, [G.element((1,)), G.element((5,))])
    assert g == C.cycle(6)


def test_cayley_family_a_words():
    G = C.family_group("a", 5)
    S = [G.word(w) for w in ("y", "y^-1", "xy", "(xy)^-1")]
    g = C.cayley(G, S)
    assert g.n == 150 and valency(g) == 4 and is_connected(g)


def test_cayley_family_e_words():
    G = C.family_group("e", 5)
    g = C.cayley(G, [G.word(w) for w in ("xt", "x^-1t", "yzt", "y^-1zt")])
    assert g.n == 150 and valency(g) == 4 and g.meta["connected"]


def test_cayley_rejects_bad_sets():
    G = make_group((6,))
    with pytest.raises(C.ConstructionError):
        C.cayley(G, [G.identity, G.element((1,)), G.element((5,))])
    with pytest.raises(C.ConstructionError):
        C.cayley(G, [G.element((1,))])


def test_cayley_is_vertex_transitive():
    g = C.family("c", 3)
    G = C.family_group("c", 3)
    for a in G.generators:
        assert g.is_automorphism(right_multiplication(G, a).images)
    R = regular_representation(G)
    assert all(g.is_automorphism(h.images) for h in R.generators)


@pytest.mark.parametrize("tag, eps", [("a", None), ("b", 2), ("b", 3), ("c", None), ("d", 7), ("e", None)])
def test_family_at_five(tag, eps):
    g = C.family(tag, 5, eps)
    assert g.n == 150 and valency(g) == 4 and is_connected(g)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_families_for_small_primes(p):
    built = 0
    for tag in "ace":
        g = C.family(tag, p)
        assert g.n == 6 * p * p and valency(g) == 4 and is_connected(g)
        built += 1
    if p % 4 == 1:
        eps = C.sqrt_minus_one(p)[0]
        assert C.family("b", p, eps).n == 6 * p * p
        deps = C.sqrt_minus_one(p * p)[0]
        assert C.family("d", p, deps).n == 6 * p * p
    assert built == 3


@pytest.mark.parametrize("args", [("b", 7, 2), ("b", 5, 4), ("b", 5, 1), ("a", 9, None), ("d", 5, 2), ("z", 5, None)])
def test_family_errors(args):
    with pytest.raises(C.ConstructionError):
        C.family(*args)


def test_family_c_at_two_is_disconnected():
    with pytest.raises(C.ConstructionError):
        C.family("c", 2)


def test_bicayley_matching():
    H = make_group((6,))
    g = C.bicayley(H, S=[H.identity])
    assert g.n == 12 and g.m == 6 and valency(g) == 1


def test_bicayley_prism():
    H = C.cyclic_group(6)
    e = H.element
    g = C.bicayley(H, {e((1,)), e((5,))}, {e((1,)), e((5,))}, {e((0,))})
    assert g.n == 12 and valency(g) == 3
    assert g == C.prism(6)


def test_bicayley_rose_window_twelve():
    H = C.cyclic_group(12)
    e = H.element
    g = C.bicayley(H, {e((1,)), e((11,))}, {e((1,)), e((11,))}, {e((0,)), e((2,))})
    assert g.n == 24 and valency(g) == 4
    assert g == C.rose_window(12, 2, 1)


def test_bicayley_action_two_orbits():
    H = C.cyclic_group(12)
    g = C.rose_window(12, 2, 1)
    act = C.bicayley_action(H)
    assert len(act.orbits()) == 2 and act.is_semiregular()
    assert all(g.is_automorphism(h.images) for h in act.generators)


def test_bicayley_rejects_identity_in_R():
    H = C.cyclic_group(5)
    with pytest.raises(C.ConstructionError):
        C.bicayley(H, R=[H.identity])


def test_rose_window_equals_bicayley_definition():
    n, a, r = 8, 3, 3
    H = C.cyclic_group(n)
    e = H.element
    spec = C.BiCayleySpec(H, frozenset({e((1,)), e((-1,))}), frozenset({e((r,)), e((-r,))}),
                          frozenset({e((0,)), e((a,))}))
    assert C.rose_window(n, a, r).edges() == C.bicayley(spec).edges()


def test_rose_window_sizes_and_errors():
    assert C.rose_window(27, 2, 1).n == 54 and valency(C.rose_window(27, 2, 1)) == 4
    with pytest.raises(C.ConstructionError):
        C.rose_window(2, 1, 1)
    with pytest.raises(C.ConstructionError):
        C.rose_window(12, 0, 1)


def test_lex_product_identity_case():
    pet = C.petersen()
    assert C.lex_product(pet, C.empty_graph(1)) == pet


def test_c3_lex_2k1_is_octahedron():
    g = C.lex_cycle_2k1(3)
    assert g.n == 6 and valency(g) == 4
    # both pair vertex 2i with 2i+1 as the only non-neighbour
    assert g == C.octahedron()


def test_lex_product_row_major():
    g = C.lex_cycle_2k1(12)
    assert g.labels[5] == (2, 1)
    assert g.has_edge(0, 2) and g.has_edge(0, 3) and not g.has_edge(0, 1)
    assert transitivity(g).vertex_transitive


def test_lex_product_carries_factor_automorphisms():
    G, H = C.cycle(5), C.complete_graph(3)
    X = C.lex_product(G, H)
    k = H.n
    AG, AH = automorphism_group(G), automorphism_group(H)
    for a in AG.generators:
        assert X.is_automorphism([a[v // k] * k + v % k for v in range(X.n)])
    for b in AH.generators:
        for x in range(G.n):
            images = [v if v // k != x else x * k + b[v % k] for v in range(X.n)]
            assert X.is_automorphism(images)
    # in-fibre edges and cross edges are never swapped when H has edges
    assert transitivity(X).edge_orbits == 2
    assert transitivity(C.lex_product(G, C.empty_graph(2))).arc_transitive


@pytest.mark.parametrize("n", [12, 27])
def test_rose_window_is_lex_product(n):
    assert is_isomorphic(C.rose_window(n, 2, 1), C.lex_cycle_2k1(n))


def test_named_graphs():
    assert valency(C.cycle(5)) == 2
    o = C.octahedron()
    assert (o.n, o.m, valency(o)) == (6, 12, 4)
    assert C.empty_graph(2).m == 0
    with pytest.raises(C.ConstructionError):
        C.cycle(2)


def test_labels_publish_group_elements():
    g = C.family("a", 3)
    G = C.family_group("a", 3)
    assert list(g.labels) == list(G.elements)
    assert g.label_map()[0] == str(G.identity)


def test_sqrt_minus_one():
    assert C.sqrt_minus_one(5) == [2, 3]
    assert C.sqrt_minus_one(25) == [7, 18]
    assert C.sqrt_minus_one(7) == []
    assert Permutation.identity(3).is_identity()
