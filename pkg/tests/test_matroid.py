"""Binary matroids: minors, duality, the excluded-minor screen."""

import itertools

import pytest
from conftest import random_embedded_graph
from hypothesis import given, settings
from hypothesis import strategies as st

from stablulc.embedding import EmbeddedGraph, complete_graph, toric_grid
from stablulc.errors import CapExceeded, FormatError, PreconditionError
from stablulc.gf2 import BitMatrix, BitVector, Span, nullspace, rref
from stablulc.matroid import (BinaryMatroid, css_counterexample_screen,
                              excluded_minor_catalog, format_matroid,
                              has_minor, is_cographic, is_graphic,
                              is_isomorphic, minor_closure_check,
                              parse_matroid, surface_code_matroid)


def mat(cols, *rows):
    return BitMatrix(cols, tuple(BitVector.from_string(r.replace(" ", ""))
                                 for r in rows))


def cycle_matroid(g):
    return BinaryMatroid(g.incidence_matrix(), g.edge_order())


TRIANGLE = cycle_matroid(complete_graph(3))
K4 = cycle_matroid(complete_graph(4))


@st.composite
def matroids(draw, max_rows=4, max_cols=6):
    cols = draw(st.integers(1, max_cols))
    nrows = draw(st.integers(1, max_rows))
    rows = tuple(BitVector(cols, draw(st.integers(0, (1 << cols) - 1)))
                 for _ in range(nrows))
    return BinaryMatroid.from_matrix(BitMatrix(cols, rows))


# -- representation ------------------------------------------------------------

def test_rank_size_and_loops():
    m = BinaryMatroid.from_matrix(mat(4, "1010", "0111", "1101"))
    assert (m.size, m.rank) == (4, 2)
    assert m.loop_labels() == ()
    with_loop = BinaryMatroid.from_matrix(mat(3, "100", "101"),
                                          ["a", "b", "c"])
    assert with_loop.loop_labels() == ("b",)


def test_label_validation():
    with pytest.raises(ValueError, match="label count"):
        BinaryMatroid(mat(3, "111"), ["a", "b"])
    with pytest.raises(ValueError, match="distinct"):
        BinaryMatroid(mat(2, "11"), ["a", "a"])
    with pytest.raises(ValueError, match="unknown element"):
        TRIANGLE.delete("nope")


def test_equals_is_presentation_independent():
    a = BinaryMatroid.from_matrix(mat(3, "110", "011"))
    b = BinaryMatroid.from_matrix(mat(3, "101", "011", "110"))
    assert a.equals(b) and b.equals(a)
    c = BinaryMatroid.from_matrix(mat(3, "100", "010"))
    assert not a.equals(c)
    with pytest.raises(ValueError, match="ground sets"):
        a.equals(BinaryMatroid.from_matrix(mat(3, "110"), ["x", "y", "z"]))


# -- circuits ----------------------------------------------------------------------

def brute_circuits(m):
    """Minimal column sets whose rank drops below their size."""

    def dependent(js):
        return Span(m.column(j) for j in js).rank < len(js)

    found = []
    for r in range(1, m.size + 1):
        for js in itertools.combinations(range(m.size), r):
            if dependent(js) and not any(c <= set(js) for c in found):
                found.append(set(js))
    return {frozenset(c) for c in found}


def test_triangle_has_one_circuit():
    assert TRIANGLE.circuits() == (frozenset({0, 1, 2}),)


def test_loops_and_parallels_are_small_circuits():
    m = BinaryMatroid.from_matrix(mat(4, "1100", "0010"))
    # column 3 is a loop, columns 0 and 1 are parallel
    assert frozenset({3}) in m.circuits()
    assert frozenset({0, 1}) in m.circuits()


@settings(max_examples=60, deadline=None)
@given(matroids())
def test_circuits_match_brute_force(m):
    assert set(m.circuits()) == brute_circuits(m)


def test_circuits_respect_the_cap():
    free = BinaryMatroid.from_matrix(mat(1, "0"))
    big = BinaryMatroid(BitMatrix(30, (BitVector(30, 1),)),
                        [str(i) for i in range(30)])
    assert free.circuits(cap=4) == (frozenset({0}),)
    with pytest.raises(CapExceeded):
        big.circuits(cap=1024)


# -- minors and duality ----------------------------------------------------------

def test_delete_and_contract_on_the_triangle():
    d = TRIANGLE.delete(TRIANGLE.labels[0])
    assert (d.size, d.rank) == (2, 2) and d.circuits() == ()
    c = TRIANGLE.contract(TRIANGLE.labels[0])
    assert (c.size, c.rank) == (2, 1)
    assert c.circuits() == (frozenset({0, 1}),)


def test_contracting_a_loop_deletes_it():
    m = BinaryMatroid.from_matrix(mat(3, "100", "101"), ["a", "b", "c"])
    assert m.contract("b").equals(m.delete("b"))


@settings(max_examples=60, deadline=None)
@given(matroids())
def test_dual_involution_and_rank_complement(m):
    assert m.dual().dual().equals(m)
    assert m.rank + m.dual().rank == m.size


@settings(max_examples=60, deadline=None)
@given(matroids(), st.data())
def test_deletion_contraction_exchange_under_duality(m, data):
    e = data.draw(st.sampled_from(m.labels))
    assert m.delete(e).dual().equals(m.dual().contract(e))
    assert m.contract(e).dual().equals(m.dual().delete(e))


# -- isomorphism --------------------------------------------------------------------

def test_column_shuffle_is_isomorphic():
    m = BinaryMatroid.from_matrix(mat(5, "11010", "01101", "10011"))
    perm = [3, 0, 4, 2, 1]
    shuffled = BitMatrix(5, tuple(
        BitVector(5, sum(((r.bits >> perm[i]) & 1) << i for i in range(5)))
        for r in m.representation.rows))
    assert is_isomorphic(m, BinaryMatroid.from_matrix(shuffled))


def test_same_rank_same_size_not_isomorphic():
    # K4 versus a doubled three-edge path: both rank 3 on six elements,
    # but only the latter has two-element circuits
    doubled = BinaryMatroid.from_matrix(
        mat(6, "110000", "111100", "001111", "000011"))
    assert (doubled.rank, doubled.size) == (3, 6)
    assert (K4.rank, K4.size) == (3, 6)
    assert not is_isomorphic(K4, doubled)


def test_fano_not_isomorphic_to_its_dual():
    cat = excluded_minor_catalog()
    assert is_isomorphic(cat.f7, cat.f7)
    assert not is_isomorphic(cat.f7, cat.f7_dual)


# -- minor search -----------------------------------------------------------------

def test_minor_witness_reconstructs_the_target():
    found, (deleted, contracted) = has_minor(K4, TRIANGLE)
    assert found
    assert len(deleted) == 2 and len(contracted) == 1
    assert deleted == tuple(sorted(deleted))
    assert not set(deleted) & set(contracted)
    again = K4.contract_all(contracted).delete_all(deleted)
    assert is_isomorphic(again, TRIANGLE)
    # the witness is deterministic
    assert has_minor(K4, TRIANGLE) == (found, (deleted, contracted))


def test_minor_of_itself_and_impossible_sizes():
    assert has_minor(TRIANGLE, TRIANGLE) == (True, ((), ()))
    cat = excluded_minor_catalog()
    assert has_minor(cat.f7, cat.mk5) == (False, None)    # too small
    assert has_minor(TRIANGLE, cat.f7) == (False, None)


def test_k5_contains_k4_but_not_fano():
    k5 = cycle_matroid(complete_graph(5))
    found, witness = has_minor(k5, K4)
    assert found
    assert not has_minor(k5, excluded_minor_catalog().f7)[0]


def test_minor_search_cap():
    big = cycle_matroid(toric_grid(3, 3))     # 18 elements
    with pytest.raises(CapExceeded):
        has_minor(big, TRIANGLE)


# -- the catalog and graphicness ---------------------------------------------------

def test_catalog_names_and_parameters():
    cat = excluded_minor_catalog()
    named = cat.named()
    assert sorted(named) == ["F7", "F7*", "MK33", "MK33*", "MK5", "MK5*"]
    assert (named["MK5"].rank, named["MK5"].size) == (4, 10)
    assert (named["MK33*"].rank, named["MK33*"].size) == (4, 9)
    assert named["F7*"].equals(named["F7"].dual())


def test_fano_is_neither_graphic_nor_cographic():
    cat = excluded_minor_catalog()
    for m in (cat.f7, cat.f7_dual):
        assert not is_graphic(m)
        assert not is_cographic(m)


def test_graphic_side_of_the_catalog():
    cat = excluded_minor_catalog()
    assert is_graphic(cat.mk5) and not is_cographic(cat.mk5)
    assert is_cographic(cat.mk5_dual) and not is_graphic(cat.mk5_dual)
    assert is_graphic(cat.mk33) and not is_cographic(cat.mk33)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_cycle_matroids_are_graphic(rng):
    g = random_embedded_graph(rng, max_vertices=4, max_edges=6)
    if g.num_edges == 0:
        return
    m = cycle_matroid(g)
    assert is_graphic(m)
    assert is_cographic(m.dual())


# -- surface-code matroids --------------------------------------------------------

def test_toric_matroid_rank_grows_with_cocycles():
    g = toric_grid(3, 3)
    plain = surface_code_matroid(g)
    assert plain.equals(cycle_matroid(g))
    assert plain.rank == 8
    xz = g.homology_logical_supports()
    cocycles = [x for x, _ in xz]
    assert surface_code_matroid(g, cocycles[:1]).rank == 9
    assert surface_code_matroid(g, cocycles).rank == 10


def test_chosen_cocycle_validation():
    g = toric_grid(3, 3)
    with pytest.raises(PreconditionError, match="length"):
        surface_code_matroid(g, [BitVector(3, 0b111)])
    with pytest.raises(PreconditionError, match="not a cocycle"):
        surface_code_matroid(g, [BitVector(18, 0b1)])
    with pytest.raises(PreconditionError, match="trivial"):
        surface_code_matroid(g, [g.star(sorted(g.vertices)[0])])


def test_minor_closure_on_the_torus():
    g = toric_grid(2, 2)
    cocycles = [x for x, _ in g.homology_logical_supports()]
    for e in sorted(g.edges)[:4]:
        assert minor_closure_check(g, e, cocycles)


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_minor_closure_on_random_graphs(rng):
    g = random_embedded_graph(rng, max_vertices=4, max_edges=6,
                              connected=True)
    if g.num_edges < 2:
        return
    for e in sorted(g.edges):
        assert minor_closure_check(g, e)


def test_minor_closure_preconditions():
    one = EmbeddedGraph(("v",), {"e": ("v", "v")},
                        {"v": (("e", 0), ("e", 1))})
    with pytest.raises(PreconditionError, match="two edges"):
        minor_closure_check(one, "e")
    two = EmbeddedGraph(("v",), {"e": ("v", "v"), "f": ("v", "v")},
                        {"v": (("e", 0), ("e", 1), ("f", 0), ("f", 1))})
    through_loop = BitVector(2, 0b01)     # hits edge e
    with pytest.raises(PreconditionError, match="loop"):
        minor_closure_check(two, "e", [through_loop])


# -- the counterexample screen -----------------------------------------------------

def test_k4_state_is_ruled_out_graphic():
    inc = complete_graph(4).incidence_matrix()
    g_mat, _, _ = rref(inc)
    res = css_counterexample_screen(g_mat, nullspace(g_mat))
    assert res.ruled_out and res.reason == "graphic"
    assert res.line() == "RULED_OUT graphic"
    assert (res.n, res.d, res.d_dual) == (6, 3, 3)


def test_hamming_state_is_inconclusive():
    checks = mat(7, "1010101", "0110011", "0001111")
    gens = nullspace(checks)
    res = css_counterexample_screen(gens, checks)
    assert res.status == "INCONCLUSIVE"
    assert res.line() == "INCONCLUSIVE"
    assert (res.n, res.d, res.d_dual) == (7, 3, 4)


def test_screen_enforces_its_hypotheses():
    with pytest.raises(PreconditionError, match="mismatch"):
        css_counterexample_screen(mat(3, "111"), mat(2, "11"))
    with pytest.raises(PreconditionError, match="orthogonal"):
        css_counterexample_screen(mat(3, "110"), mat(3, "011"))
    with pytest.raises(PreconditionError, match="sum"):
        css_counterexample_screen(mat(4, "1111"), mat(4, "1100"))
    with pytest.raises(PreconditionError, match="distance 2"):
        css_counterexample_screen(mat(2, "11"), mat(2, "11"))


# -- text format --------------------------------------------------------------------

def test_matroid_round_trip():
    m = BinaryMatroid.from_matrix(mat(5, "11010", "01101"),
                                  ["a", "b", "c", "d", "e"])
    again = parse_matroid(format_matroid(m))
    assert again.labels == m.labels
    assert again.equals(m)


def test_matroid_parse_diagnostics():
    with pytest.raises(FormatError, match="duplicate labels"):
        parse_matroid("labels: a\nlabels: b\n1 1\n1\n")
    with pytest.raises(FormatError, match="2 labels for 3"):
        parse_matroid("1 3\n101\nlabels: a b\n")
