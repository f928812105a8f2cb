import numpy as np
import pytest

from vaxnet.graph import Graph
from vaxnet.model import (
    Compartment,
    D,
    DiseaseParams,
    EpidemicState,
    I,
    R,
    S,
    V,
    infection_probability,
    initialize_state,
    run_to_absorption,
    sample_disease_params,
    step,
)

from .conftest import make_params
from .oracles import random_graph


def state_of(comps):
    return EpidemicState(np.array(comps, dtype=np.int8), round=0)


class TestInfectionProbability:
    def test_no_infectious_neighbors(self, path3):
        p = make_params(3)
        st = state_of([S, S, S])
        assert infection_probability(0, st, path3, p) == 0.0

    def test_single_infectious_neighbor(self, path3):
        # one neighbor, infectious, omega_i = 0.4, beta = 2 -> 0.8
        p = make_params(3, omega_i=[0.4, 1, 1])
        st = state_of([S, I, S])
        assert infection_probability(0, st, path3, p) == pytest.approx(0.8)

    def test_clamped_to_one(self, star4):
        p = make_params(5)
        st = state_of([S, I, I, I, I])
        assert infection_probability(0, st, star4, p) == 1.0

    def test_isolated_node(self):
        g = Graph(3, [(0, 1)])  # node 2 isolated
        p = make_params(3)
        st = state_of([S, I, S])
        assert infection_probability(2, st, g, p) == 0.0

    def test_fractional_pressure(self, path3):
        p = make_params(3, omega_i=[1, 0.5, 1])
        st = state_of([I, S, S])
        # b sees one of two unit-weight neighbors infectious: 2 * 0.5 * 1/2
        assert infection_probability(1, st, path3, p) == pytest.approx(0.5)

    def test_rejects_non_susceptible(self, path3):
        p = make_params(3)
        st = state_of([I, S, S])
        with pytest.raises(ValueError):
            infection_probability(0, st, path3, p)


class TestStep:
    def test_no_infectious_is_a_fixed_point(self, path3):
        p = make_params(3)
        st = state_of([S, R, V])
        nxt = step(st, path3, p, np.random.default_rng(0))
        assert np.array_equal(nxt.compartments, st.compartments)
        assert nxt.round == 1

    def test_certain_death(self, path3):
        p = make_params(3, omega_d=[0, 1, 0], omega_i=[0, 0, 0])
        st = state_of([S, I, S])
        nxt = step(st, path3, p, np.random.default_rng(0))
        assert nxt.compartments[1] == D

    def test_certain_infection(self):
        g = Graph(2, [(0, 1)])
        p = make_params(2)  # omega_i = 1, beta = 2 -> clamped probability 1
        st = state_of([I, S])
        nxt = step(st, g, p, np.random.default_rng(0))
        assert nxt.compartments[1] == I

    def test_synchronous_update_reads_old_state(self):
        # 0 -> 1 -> 2 chain: node 2 cannot catch the disease in the round
        # where node 1 itself becomes infectious
        g = Graph(3, [(0, 1), (1, 2)])
        p = make_params(3)
        st = state_of([I, S, S])
        nxt = step(st, g, p, np.random.default_rng(0))
        assert nxt.compartments[1] == I
        assert nxt.compartments[2] == S

    def test_death_beats_recovery(self, path3):
        p = make_params(3, omega_d=[0, 1, 0], omega_r=[0, 1, 0], gamma=1.0)
        st = state_of([V, I, V])
        nxt = step(st, path3, p, np.random.default_rng(0))
        assert nxt.compartments[1] == D

    def test_certain_recovery(self, path3):
        p = make_params(3, omega_r=[0, 1, 0], gamma=1.0, omega_i=[0, 0, 0])
        st = state_of([S, I, S])
        nxt = step(st, path3, p, np.random.default_rng(0))
        assert nxt.compartments[1] == R


class TestParamsAndInit:
    def test_sample_ranges_and_determinism(self, star4):
        p1 = sample_disease_params(star4, 2.0, 0.6, np.random.default_rng(9))
        p2 = sample_disease_params(star4, 2.0, 0.6, np.random.default_rng(9))
        assert np.array_equal(p1.omega_i, p2.omega_i)
        assert np.array_equal(p1.omega_d, p2.omega_d)
        assert p1.omega_d.max() <= 0.1
        assert p1.omega_i.min() >= 0.0 and p1.omega_i.max() <= 1.0

    def test_sample_mean(self):
        g = Graph(100_000, [(0, 1)])
        p = sample_disease_params(g, 2.0, 0.6, np.random.default_rng(1))
        assert abs(p.omega_i.mean() - 0.5) < 0.01
        assert abs(p.omega_d.mean() - 0.05) < 0.001

    def test_validate_errors(self):
        with pytest.raises(ValueError):
            make_params(3, beta=-1)
        with pytest.raises(ValueError):
            make_params(3, gamma=1.5)
        with pytest.raises(ValueError):
            make_params(3, omega_i=[0.5, 0.5])  # wrong length
        with pytest.raises(ValueError):
            make_params(3, omega_d=[0, 0, 2.0])

    def test_initialize_state(self, star4):
        st = initialize_state(star4, [1, 2], 2, np.random.default_rng(0))
        assert st.round == 0
        counts = st.counts()
        assert counts[V] == 2 and counts[I] == 2 and counts[S] == 1
        assert st.compartments[1] == V and st.compartments[2] == V

    def test_initialize_last_free_node(self, star4):
        st = initialize_state(star4, [0, 1, 2, 3], 1, np.random.default_rng(0))
        assert st.compartments[4] == I

    def test_initialize_too_many_infectious(self, star4):
        with pytest.raises(ValueError):
            initialize_state(star4, [0, 1], 4, np.random.default_rng(0))

    def test_initialize_bad_node_id(self, star4):
        with pytest.raises(IndexError):
            initialize_state(star4, [7], 1, np.random.default_rng(0))


class TestInvariants:
    """Process invariants over randomized trajectories."""

    def test_random_trajectories(self):
        rng = np.random.default_rng(42)
        for _ in range(30):
            g = random_graph(rng, int(rng.integers(3, 15)), weights="jaccard")
            p = sample_disease_params(g, 2.0, 0.6, rng)
            st = initialize_state(g, [], max(1, g.n // 5), rng)
            prev = st.counts()
            for _ in range(25):
                frozen = np.isin(st.compartments, (R, D, V))
                snapshot = st.compartments.copy()
                st = step(st, g, p, rng)
                counts = st.counts()
                assert counts.sum() == g.n
                assert counts[D] >= prev[D]
                assert counts[R] >= prev[R]
                assert counts[V] == prev[V]
                assert counts[S] <= prev[S]
                # frozen compartments never change
                assert np.array_equal(
                    st.compartments[frozen], snapshot[frozen]
                )
                prev = counts

    def test_no_spontaneous_infection(self):
        rng = np.random.default_rng(5)
        g = random_graph(rng, 10)
        p = sample_disease_params(g, 2.0, 0.6, rng)
        st = initialize_state(g, [], 2, rng)
        for _ in range(20):
            exposed = set()
            for v in np.flatnonzero(st.compartments == I):
                exposed.update(g.neighbors(int(v)))
            sus = np.flatnonzero(st.compartments == S)
            nxt = step(st, g, p, rng)
            for v in sus:
                if v not in exposed:
                    assert nxt.compartments[v] == S
            st = nxt


class TestRunToAbsorption:
    def test_nothing_to_do(self, path3):
        p = make_params(3)
        out = run_to_absorption(state_of([R, R, R]), path3, p, np.random.default_rng(0))
        assert out.rounds == 0
        assert out.survival_ratio == 1.0

    def test_survival_ratio_definition(self, path3):
        p = make_params(3, omega_d=[0, 1, 0], omega_i=[0, 0, 0])
        out = run_to_absorption(state_of([S, I, S]), path3, p, np.random.default_rng(0))
        assert out.dead == 1
        assert out.survival_ratio == pytest.approx(2 / 3)
        assert out.n == 3

    def test_frozen_infectious_configuration(self, path3):
        # omega_d = omega_r = 0 makes the infectious node permanent; the run
        # must still stop once infections are exhausted
        p = make_params(3)
        out = run_to_absorption(state_of([I, S, S]), path3, p, np.random.default_rng(0))
        assert out.infectious == 3
        assert not out.truncated
        assert out.rounds <= 3

    def test_truncation_flag(self, path3):
        p = make_params(3, omega_i=[0, 0, 0], omega_r=[0, 1e-9, 0], gamma=1.0)
        out = run_to_absorption(
            state_of([S, I, S]), path3, p, np.random.default_rng(0), max_rounds=5
        )
        assert out.truncated
        assert out.rounds == 5

    def test_max_rounds_validation(self, path3):
        p = make_params(3)
        with pytest.raises(ValueError):
            run_to_absorption(state_of([S, I, S]), path3, p, np.random.default_rng(0), 0)

    def test_matches_plain_stepping(self):
        """Absorbed counts agree with manually stepping the same stream."""
        rng_a = np.random.default_rng(11)
        g = random_graph(np.random.default_rng(2), 12, weights="jaccard")
        p = sample_disease_params(g, 2.0, 0.6, np.random.default_rng(3))
        st0 = initialize_state(g, [0], 2, rng_a)
        out = run_to_absorption(st0, g, p, rng_a)

        rng_b = np.random.default_rng(11)
        st = initialize_state(g, [0], 2, rng_b)
        for _ in range(out.rounds):
            st = step(st, g, p, rng_b)
        counts = st.counts()
        assert counts[D] == out.dead
        assert counts[R] == out.recovered


def test_compartment_values():
    assert [c.value for c in Compartment] == [0, 1, 2, 3, 4]
