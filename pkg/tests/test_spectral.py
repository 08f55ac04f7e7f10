import math

import numpy as np
import pytest
from hypothesis import given

from conftest import graphs
from spextral import families as fam
from spextral.errors import ConvergenceError
from spextral.graph import Graph
from spextral.spectral import (
    EquitablePartition,
    equitable_from_family,
    hong_bound,
    level_parameters,
    perron_level_sets,
    power_iteration,
    quotient_rho,
    rho_split_closed,
    structure_claims,
)


class TestPowerIteration:
    @pytest.mark.parametrize(
        "g, rho",
        [
            (fam.complete(3), 2.0),
            (fam.star(4), 2.0),
            (fam.path(4), (1 + math.sqrt(5)) / 2),
            (fam.cycle(7), 2.0),
            (fam.empty(5), 0.0),
            (fam.complete_bipartite(3, 4), math.sqrt(12)),
        ],
    )
    def test_known_values(self, g, rho):
        res = power_iteration(g)
        assert abs(res.rho - rho) <= 1e-12
        assert res.residual <= 1e-12

    def test_disconnected_takes_largest_component(self):
        g = fam.union(fam.path(3), fam.complete(4))
        res = power_iteration(g)
        assert abs(res.rho - 3) < 1e-12
        assert np.all(res.vector[:3] == 0)

    def test_bipartite_needs_the_shift(self):
        # plain power iteration oscillates on bipartite graphs
        assert abs(power_iteration(fam.path(2)).rho - 1) < 1e-12

    def test_non_convergence(self):
        with pytest.raises(ConvergenceError) as info:
            power_iteration(fam.path(40), tol=1e-15, max_iter=3)
        assert info.value.best is not None

    @given(graphs(min_n=1, max_n=9))
    def test_matches_numpy(self, g):
        expect = max(np.linalg.eigvalsh(g.to_numpy().astype(float)))
        assert abs(power_iteration(g).rho - expect) <= 1e-9

    @given(graphs(min_n=2, max_n=8))
    def test_edge_addition_does_not_decrease_rho(self, g):
        non = g.non_edges()
        if non:
            u, v = non[0]
            assert power_iteration(g.with_edge(u, v)).rho >= power_iteration(g).rho - 1e-9


class TestClosedForms:
    def test_split_closed_form(self):
        for p in range(1, 5):
            for n in range(p, 60):
                assert abs(rho_split_closed(n, p) - power_iteration(fam.Split(n, p).build()).rho) <= 1e-9

    @given(graphs(min_n=1, max_n=9))
    def test_hong_bound(self, g):
        assert hong_bound(g) >= power_iteration(g).rho - 1e-9

    def test_hong_bound_tight_on_regular(self):
        assert abs(hong_bound(fam.cycle(6)) - 2) < 1e-12


class TestQuotients:
    def test_split_quotient(self):
        p = equitable_from_family(fam.Split(10, 3))
        assert p.quotient == ((2, 7), (3, 0))

    def test_split_plus_quotient(self):
        p = equitable_from_family(fam.SplitPlus(12, 2))
        assert p.quotient == ((1, 2, 8), (2, 1, 0), (2, 0, 0))

    def test_clique_join_quotient(self):
        p = equitable_from_family(fam.CliqueJoinCliques(28, 1, 4, 0))
        assert p.quotient == ((0, 27), (1, 2))
        assert abs(quotient_rho(p) - (1 + math.sqrt(28))) < 1e-12

    @pytest.mark.parametrize(
        "f",
        [
            fam.Split(30, 2),
            fam.SplitPlus(31, 3),
            fam.CliqueJoinCliques(33, 2, 5, 3),
            fam.LinearForestExtremal(20, 3),
            fam.LinearForestExtremal(21, 3),
        ],
    )
    def test_quotient_matches_full_graph(self, f):
        assert abs(quotient_rho(equitable_from_family(f)) - power_iteration(f.build()).rho) <= 1e-9

    def test_many_cells_use_iteration(self):
        # 4 cells: hub, two different cliques, isolated-in-the-rest vertex
        g = fam.join(fam.complete(1), fam.union(fam.union(fam.complete(3), fam.complete(2)), fam.empty(1)))
        p = EquitablePartition.from_cells(g, [[0], [1, 2, 3], [4, 5], [6]])
        assert abs(quotient_rho(p) - power_iteration(g).rho) <= 1e-9

    def test_rejects_non_equitable(self):
        with pytest.raises(AssertionError):
            EquitablePartition.from_cells(fam.path(4), [[0, 1], [2, 3]])

    def test_rejects_non_partition(self):
        with pytest.raises(ValueError):
            EquitablePartition.from_cells(fam.path(4), [[0, 1], [2]])


class TestLevelSets:
    def test_parameters(self):
        h, t, alpha = level_parameters(1, 4)
        assert (h, t) == (2, 26)
        assert alpha == 1 / (2 * 3 * 26**2)

    def test_split_hubs_are_rpp(self):
        for n in (150, 200, 300):
            ls = perron_level_sets(fam.Split(n, 2).build(), 1, 4)
            assert ls.Rpp == {0, 1}
            assert ls.R == set(range(n))

    def test_rejects_disconnected(self):
        with pytest.raises(ValueError):
            perron_level_sets(fam.empty(3), 1, 4)

    def test_boundary_flag(self):
        # every unit-vector weight is within 1 of every cut
        ls = perron_level_sets(fam.complete(4), 1, 4, tol=1.0)
        assert ls.boundary == {0, 1, 2, 3}

    def test_claims_on_split(self):
        rep = structure_claims(fam.Split(200, 3).build(), 2, 4)
        assert rep.A and rep.B and rep.C and rep.D
        assert rep.Rpp_complete and rep.dominating
        assert rep.outside_edges == 0

    def test_claims_on_split_plus(self):
        rep = structure_claims(fam.SplitPlus(200, 2).build(), 1, 5)
        assert rep.D and not rep.C
        assert rep.outside_edges == 1

    def test_as_dict_keys(self):
        d = structure_claims(fam.Split(50, 2).build(), 1, 4).as_dict()
        assert set(d) == {"A", "B", "C", "D", "outside_edges", "Rpp_complete", "dominating"}


def test_graph_from_matrix_spectrum():
    g = Graph.from_matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert abs(power_iteration(g).rho - 2) < 1e-12
