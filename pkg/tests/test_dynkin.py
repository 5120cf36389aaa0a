import math

import numpy as np
import pytest

from beltlab.belt import is_recurrent
from beltlab.dynkin import (
    BLACK,
    WHITE,
    DynkinSpec,
    belt_coloring,
    bipartite_coloring,
    box_product,
    build_diagram,
    coxeter_number,
    parse_product,
    product_of,
)
from beltlab.errors import AffineUnsupportedError, BadRankError, MissingMetadataError, NotBipartiteError
from beltlab.quiver import Quiver, quiver_from_json, quiver_to_json

FINITE = ["A1", "A2", "A3", "A5", "D4", "D5", "D7", "E6", "E7", "E8"]
AFFINE = ["A1~", "A3~", "A5~", "D4~", "D5~", "D6~", "E6~", "E7~", "E8~"]


def adjacency(g):
    a = np.zeros((g.vertex_count, g.vertex_count))
    for u, v, m in g.edges:
        a[u, v] = a[v, u] = m
    return a


@pytest.mark.parametrize("name", FINITE)
def test_coxeter_number_matches_spectral_radius(name):
    # largest adjacency eigenvalue of a finite type diagram is 2 cos(pi / h)
    spec = DynkinSpec.parse(name)
    g = build_diagram(spec)
    lam = max(np.linalg.eigvalsh(adjacency(g)))
    assert lam == pytest.approx(2 * math.cos(math.pi / coxeter_number(spec)), abs=1e-9)


@pytest.mark.parametrize("name", AFFINE)
def test_affine_diagrams_have_spectral_radius_two(name):
    spec = DynkinSpec.parse(name)
    g = build_diagram(spec)
    assert g.vertex_count == spec.rank + 1
    assert max(np.linalg.eigvalsh(adjacency(g))) == pytest.approx(2.0, abs=1e-9)


@pytest.mark.parametrize("name", FINITE)
def test_finite_diagrams_are_trees(name):
    g = build_diagram(DynkinSpec.parse(name))
    assert g.edge_count() == g.vertex_count - 1


def test_parse_forms():
    assert DynkinSpec.parse("A1^(1)") == DynkinSpec.parse("A1~") == DynkinSpec("A_affine", 1)
    assert DynkinSpec.parse("D4").name == "D4"
    assert DynkinSpec.parse("E6~").name == "E6^(1)"
    with pytest.raises(ValueError):
        DynkinSpec.parse("B3")
    assert parse_product("A3xA1~") == (DynkinSpec("A", 3), DynkinSpec("A_affine", 1))


@pytest.mark.parametrize("family,rank", [("A", 0), ("D", 3), ("E", 5), ("E", 9), ("A_affine", 0), ("D_affine", 3)])
def test_bad_ranks(family, rank):
    with pytest.raises(BadRankError):
        DynkinSpec(family, rank)


def test_odd_cycles_are_not_bipartite():
    with pytest.raises(NotBipartiteError):
        build_diagram(DynkinSpec("A_affine", 2))


def test_kronecker_double_edge():
    g = build_diagram(DynkinSpec("A_affine", 1))
    assert g.edges == ((0, 1, 2),)


def test_affine_has_no_coxeter_number():
    with pytest.raises(AffineUnsupportedError):
        coxeter_number(DynkinSpec.parse("A3~"))
    assert coxeter_number(DynkinSpec.parse("E8")) == 30


def test_a2_box_a2_is_oriented_four_cycle():
    q = product_of("A2", "A2")
    assert q.n == 4 and q.arrow_count() == 4
    assert all(len(q.in_neighbors(z)) == 1 and len(q.out_neighbors(z)) == 1 for z in range(4))
    col = belt_coloring(q)
    # around the cycle the colors alternate
    for u, v, _ in q.arrows():
        assert col[u] != col[v]


def test_a1_box_a1_is_single_vertex():
    q = product_of("A1", "A1")
    assert q.n == 1 and q.arrow_count() == 0


def test_a1_box_a2_coloring():
    assert sorted(belt_coloring(product_of("A1", "A2"))) == [BLACK, WHITE]


def test_a3_box_kronecker_coloring_classes():
    col = belt_coloring(product_of("A3", "A1~"))
    assert {z for z in range(6) if col[z] == WHITE} == {1, 3, 5}
    assert {z for z in range(6) if col[z] == BLACK} == {0, 2, 4}


@pytest.mark.parametrize(
    "left,right",
    [("A2", "A3"), ("A3", "A1~"), ("D4", "A2"), ("A1~", "A1~"), ("A2", "A3~"), ("E6", "A1")],
)
def test_box_product_size_and_recurrence(left, right):
    g, g2 = build_diagram(DynkinSpec.parse(left)), build_diagram(DynkinSpec.parse(right))
    q = box_product(g, g2)
    assert q.n == g.vertex_count * g2.vertex_count
    assert q.arrow_count() == g.edge_count() * g2.vertex_count + g2.edge_count() * g.vertex_count
    col = belt_coloring(q)
    assert is_recurrent(q, col)


def test_box_provenance_survives_json():
    q = product_of("A3", "A1~")
    back = quiver_from_json(quiver_to_json(q))
    assert back.factors == q.factors and back.box == ("A3", "A1^(1)")
    assert belt_coloring(back) == belt_coloring(q)


def test_missing_metadata():
    q = Quiver.from_arrows(2, [(0, 1)])
    with pytest.raises(MissingMetadataError):
        belt_coloring(q)
    assert sorted(bipartite_coloring(q)) == [BLACK, WHITE]
