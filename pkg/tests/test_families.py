from math import comb

import pytest

from spextral import families as fam
from spextral.graph import graph6_encode


def test_named_graphs():
    assert fam.complete(4).num_edges == 6
    assert fam.path(5).num_edges == 4
    assert fam.cycle(5).degrees == (2,) * 5
    assert fam.star(4).degrees == (4, 1, 1, 1, 1)
    assert fam.complete_bipartite(2, 3).num_edges == 6
    assert fam.copies(3, fam.complete(2)).num_edges == 3
    with pytest.raises(ValueError):
        fam.cycle(2)


@pytest.mark.parametrize(
    "f, edges",
    [
        (fam.Split(10, 3), 24),
        (fam.SplitPlus(29, 2), 56),
        (fam.CliqueJoinCliques(28, 1, 4, 0), 54),
        (fam.LinearForestExtremal(9, 2), 12),
        (fam.CliqueUnionIsolated(8, 5), 10),
    ],
)
def test_edge_counts(f, edges):
    assert f.edge_count() == edges
    assert fam.build(f).num_edges == edges


def test_split_plus_small():
    g = fam.SplitPlus(5, 2).build()
    assert g.num_edges == 8
    assert g.has_edge(2, 3) and not g.has_edge(3, 4)


def test_layout_puts_hubs_first():
    g = fam.Split(8, 3).build()
    assert g.degrees[:3] == (7, 7, 7)
    assert set(g.degrees[3:]) == {3}
    c = fam.CliqueJoinCliques(10, 2, 4, 2).build()
    # two hubs, two triangles, one K_2
    assert c.degrees[:2] == (9, 9)
    assert c.degrees[2:8] == (4,) * 6
    assert c.degrees[8:] == (3, 3)


def test_split_n2_is_k2():
    assert graph6_encode(fam.Split(2, 1).build()) == "A_"


@pytest.mark.parametrize("n", range(3, 40))
@pytest.mark.parametrize("h", range(0, 4))
def test_split_formula(n, h):
    f = fam.Split(n, h)
    assert f.build().num_edges == h * n - h * (h + 1) // 2
    if n - h >= 2:
        assert fam.SplitPlus(n, h).build().num_edges == f.edge_count() + 1


def test_clique_join_formula_grid():
    for k in range(0, 4):
        for l in range(3, 8):
            for n in range(k, 60):
                r = (n - k) % (l - 1)
                f = fam.CliqueJoinCliques(n, k, l, r)
                expect = comb(k, 2) + k * (n - k) + f.d * comb(l - 1, 2) + comb(r, 2)
                assert f.build().num_edges == expect == f.edge_count()


def test_linear_forest_parts():
    f = fam.LinearForestExtremal(10, 3)
    assert (f.d, f.s) == (4, 0)
    f = fam.LinearForestExtremal(9, 3)
    assert (f.d, f.s) == (3, 1)
    assert f.build().n == 9


@pytest.mark.parametrize(
    "make",
    [
        lambda: fam.Split(3, 4),
        lambda: fam.SplitPlus(4, 3),
        lambda: fam.CliqueJoinCliques(10, 1, 4, 3),
        lambda: fam.CliqueJoinCliques(10, 1, 4, 1),
        lambda: fam.LinearForestExtremal(1, 3),
        lambda: fam.CliqueUnionIsolated(3, 4),
    ],
)
def test_invalid_parameters(make):
    with pytest.raises(ValueError):
        make()


def test_describe():
    assert fam.describe(fam.Split(5, 2)) == {"kind": "Split", "n": 5, "h": 2}
