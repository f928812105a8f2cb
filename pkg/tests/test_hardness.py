import math
from itertools import combinations

import numpy as np
import pytest

from vaxnet.graph import Graph
from vaxnet.hardness import (
    EnumerationGuardError,
    convert,
    densest_subgraph_bruteforce,
    expected_survivors_mc,
    girth,
    initial_state,
    is_connected,
    optimal_vaccination_bruteforce,
    special_case,
    survivors_if_vaccinated,
    verify_claim1,
)
from vaxnet.model import run_to_absorption

from . import oracles


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def random_connected(rng, n, p=0.45):
    return oracles.random_graph(rng, n, p_edge=p, ensure_connected=True)


class TestConvert:
    def test_single_edge(self):
        inst = convert(Graph(2, [(0, 1)]))
        assert inst.graph.n == 4
        assert inst.graph.m == 4

    def test_triangle(self, triangle):
        inst = convert(triangle)
        assert inst.graph.n == 7
        assert inst.graph.m == 9

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError, match="connected"):
            convert(Graph(4, [(0, 1), (2, 3)]))

    def test_structural_invariants(self):
        rng = np.random.default_rng(31)
        for _ in range(15):
            h = random_connected(rng, int(rng.integers(2, 8)))
            inst = convert(h)
            g = inst.graph
            assert g.n == h.n + h.m + 1
            assert g.m == h.n + 2 * h.m
            assert sorted(g.neighbors(inst.x)) == list(inst.y_nodes)
            y_set = set(inst.y_nodes.tolist())
            for z in inst.z_nodes:
                nbrs = g.neighbors(int(z))
                assert len(nbrs) == 2
                assert set(nbrs.tolist()) <= y_set
            # weight pattern of the reduction
            p = inst.params
            assert (p.omega_d[inst.z_nodes] == 1.0).all()
            assert p.omega_d[inst.x] == 0.0
            assert (p.omega_d[inst.y_nodes] == 0.0).all()
            assert (p.omega_r == 0.0).all()
            assert (p.omega_i == 1.0).all()
            assert (g.edge_weights == 1.0).all()


class TestDensestSubgraph:
    def test_k4(self, k4):
        _, best = densest_subgraph_bruteforce(k4, 3)
        assert best == 3

    def test_triangle_k2(self, triangle):
        nodes, best = densest_subgraph_bruteforce(triangle, 2)
        assert best == 1
        assert len(nodes) == 2

    def test_matches_second_enumerator(self):
        rng = np.random.default_rng(32)
        for _ in range(10):
            h = random_connected(rng, 7)
            for k in range(1, 8):
                _, a = densest_subgraph_bruteforce(h, k)
                b = oracles.densest_subgraph_second_enumerator(h, k)
                assert a == b

    def test_guard(self):
        h = cycle(40)
        with pytest.raises(EnumerationGuardError):
            densest_subgraph_bruteforce(h, 20)

    def test_k_bounds(self, triangle):
        with pytest.raises(ValueError):
            densest_subgraph_bruteforce(triangle, 0)


class TestGirthAndSpecialCases:
    def test_girth_values(self, triangle):
        assert girth(triangle) == 3
        assert girth(cycle(5)) == 5
        assert girth(Graph(4, [(0, 1), (1, 2), (1, 3)])) == math.inf
        # C5 plus a chord creates a triangle... C5 chord {0,2} -> girth 3
        assert girth(Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])) == 3

    def test_tree(self):
        tree = Graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
        assert special_case(tree, 4) == 3

    def test_k_at_least_n(self, triangle):
        assert special_case(triangle, 5) == 3

    def test_below_girth(self):
        assert special_case(cycle(5), 4) == 3

    def test_no_special_case(self, k4):
        assert special_case(k4, 3) is None

    def test_agrees_with_bruteforce(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            h = random_connected(rng, int(rng.integers(2, 8)))
            for k in range(1, h.n + 1):
                known = special_case(h, k)
                if known is not None:
                    _, best = densest_subgraph_bruteforce(h, k)
                    assert known == best


class TestVaccinationBruteforce:
    def test_k0_only_x_and_y_survive(self, triangle):
        inst = convert(triangle)
        _, surv = optimal_vaccination_bruteforce(inst, 0)
        assert surv == triangle.n + 1

    def test_matches_naive_enumeration(self):
        rng = np.random.default_rng(34)
        for _ in range(8):
            h = random_connected(rng, int(rng.integers(2, 6)))
            inst = convert(h)
            pool = list(inst.y_nodes) + list(inst.z_nodes)
            for k in range(0, min(4, len(pool)) + 1):
                _, fast = optimal_vaccination_bruteforce(inst, k)
                naive = max(
                    survivors_if_vaccinated(inst, subset)
                    for subset in combinations(pool, k)
                )
                assert fast == naive

    def test_returned_set_achieves_the_optimum(self, k4):
        inst = convert(k4)
        chosen, surv = optimal_vaccination_bruteforce(inst, 3)
        assert len(chosen) == 3
        assert survivors_if_vaccinated(inst, chosen) == surv

    def test_cannot_vaccinate_x(self, triangle):
        inst = convert(triangle)
        with pytest.raises(ValueError):
            survivors_if_vaccinated(inst, [inst.x])


class TestSimulationAgreement:
    """The closed-form survivor rule must match actual simulation runs."""

    def test_simulation_is_deterministic_on_converted_instances(self):
        rng = np.random.default_rng(35)
        for beta in (2.0, 0.7):  # outcome must not depend on beta > 0
            h = random_connected(rng, 5)
            inst = convert(h, beta=beta)
            pool = list(inst.y_nodes) + list(inst.z_nodes)
            vacc = [pool[i] for i in rng.choice(len(pool), 3, replace=False)]
            want = survivors_if_vaccinated(inst, vacc)
            mean, se = expected_survivors_mc(
                inst.graph, inst.params, vacc, [inst.x], reps=30, rng=rng
            )
            assert se == 0.0
            assert mean == want

    def test_run_to_absorption_freezes(self, triangle):
        inst = convert(triangle)
        out = run_to_absorption(
            initial_state(inst), inst.graph, inst.params, np.random.default_rng(0)
        )
        assert not out.truncated
        assert inst.graph.n - out.dead == survivors_if_vaccinated(inst, [])

    def test_mc_bounds(self):
        g = Graph(2, [(0, 1)])
        from .conftest import make_params

        p = make_params(2, omega_d=[0.5, 0.5], omega_i=[0, 0])
        mean, se = expected_survivors_mc(
            g, p, [1], [0], reps=50, rng=np.random.default_rng(1)
        )
        assert mean == 1.0  # node 0 always dies eventually, node 1 vaccinated
        with pytest.raises(ValueError):
            expected_survivors_mc(g, p, [], [0], reps=0, rng=np.random.default_rng(1))


class TestClaim1:
    def test_holds_in_the_applicable_range(self):
        rng = np.random.default_rng(36)
        checked = 0
        for _ in range(12):
            h = random_connected(rng, int(rng.integers(3, 8)))
            gh = girth(h)
            if math.isinf(gh):
                continue
            for k in range(int(gh), h.n):
                res = verify_claim1(h, k)
                assert res.holds, (h.edges.tolist(), k)
                checked += 1
        assert checked > 0

    def test_identity_fails_below_girth(self, triangle):
        # below the girth the densest k-subgraph identity no longer matches
        # the vaccination optimum: vaccinating k=2 z-nodes saves both, while
        # two H-nodes induce only one edge
        res = verify_claim1(triangle, 2)
        assert res.opt_h == 1
        assert res.opt_g == 6
        assert not res.holds


def test_is_connected(triangle):
    assert is_connected(triangle)
    assert not is_connected(Graph(3, [(0, 1)]))
    assert is_connected(Graph(1, []))
