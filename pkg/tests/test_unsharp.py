import math

import numpy as np
import pytest

from mzduality.errors import (
    ContractViolation,
    InfeasibleWitnessError,
    InvalidObservableError,
    UnsupportedRegimeError,
)
from mzduality.operators import hermitian_eigenvalues
from mzduality.sampling import haar_unitary, random_bloch_vector
from mzduality.unsharp import (
    UnsharpObservable,
    assemble_joint,
    classify_margin,
    guess_effect_bruteforce,
    guess_observable,
    interference_effect_bruteforce,
    interference_observable,
    jm_closed_form,
    jm_oracle,
    oracle_search,
)
from mzduality.which_path import Strategy, eta_values

from conftest import QUARTER_TURN, SX, ZERO, make_config, random_config

S = 1 / math.sqrt(2)


def obs(bias, *direction):
    return UnsharpObservable(bias, np.array(direction, dtype=float))


def random_observable(rng, bias=None):
    length = rng.uniform()
    if bias is None:
        bias = rng.uniform(-1, 1) * (1 - length)
    return UnsharpObservable(bias, random_bloch_vector(rng, length))


def random_strategy(rng, d):
    size = int(rng.integers(0, d + 1))
    return Strategy(haar_unitary(d, rng).T, rng.choice(d, size, replace=False))


class TestObservable:
    def test_rejects_non_positive(self):
        with pytest.raises(InvalidObservableError):
            obs(0.5, 0, 0, 0.6)

    def test_effect_round_trip(self, rng):
        o = random_observable(rng)
        back = UnsharpObservable.from_effect(o.effect())
        assert back.bias == pytest.approx(o.bias, abs=1e-15)
        assert np.allclose(back.direction, o.direction, atol=1e-15)
        assert hermitian_eigenvalues(o.effect())[0] >= -1e-15


class TestInterferenceObservable:
    def test_sharp_path(self):
        n = interference_observable(make_config(r=1.0))
        assert n.bias == 0 and np.allclose(n.direction, [0, 0, 1], atol=1e-15)

    def test_symmetric(self):
        assert np.allclose(interference_observable(make_config()).direction, [1, 0, 0], atol=1e-15)

    def test_asymmetric(self):
        n = interference_observable(make_config(r=0.8))
        assert np.allclose(n.direction, [0.8, 0, 0.6], atol=1e-15)
        assert n.norm == pytest.approx(1, abs=1e-15)

    @pytest.mark.parametrize("port", ["A", "B"])
    def test_matches_partial_trace(self, rng, port):
        worst = 0.0
        for _ in range(300):
            cfg = random_config(rng, port=port)
            closed = interference_observable(cfg).effect()
            worst = max(worst, np.max(np.abs(closed - interference_effect_bruteforce(cfg))))
        assert worst <= 1e-12

    def test_reproduces_click_probability(self, rng):
        from mzduality.interferometer import detection_probability_from_state

        for _ in range(100):
            cfg = random_config(rng)
            p = np.trace(cfg.particle_state @ interference_observable(cfg).effect()).real
            assert p == pytest.approx(detection_probability_from_state(cfg), abs=1e-12)


class TestGuessObservable:
    def test_perfect_marking(self):
        m = guess_observable(Strategy.computational(2, {0}), ZERO, SX)
        assert m.bias == 0 and np.allclose(m.direction, [0, 0, 1])

    def test_empty_subset(self):
        m = guess_observable(Strategy.computational(2, set()), ZERO, SX)
        assert m.bias == -1 and np.all(m.direction == 0)

    def test_quarter_turn(self):
        m = guess_observable(Strategy.computational(2, {0}), ZERO, QUARTER_TURN)
        assert m.bias == pytest.approx(0.5, abs=1e-15)
        assert np.allclose(m.direction, [0, 0, 0.5], atol=1e-15)

    def test_matches_partial_trace_for_any_r_phi(self, rng):
        worst = 0.0
        for _ in range(100):
            cfg = random_config(rng)
            strategy = random_strategy(rng, cfg.detector_dim)
            closed = guess_observable(strategy, cfg.detector_state, cfg.detector_unitary).effect()
            for r, phi in [(cfg.r, cfg.phi), (0.5, 0.0), (rng.uniform(), rng.uniform(0, 7))]:
                brute = guess_effect_bruteforce(cfg.replace(r=r, phi=phi), strategy)
                worst = max(worst, np.max(np.abs(brute - closed)))
        assert worst <= 1e-12

    def test_geometry(self, rng):
        for _ in range(300):
            cfg = random_config(rng)
            strategy = random_strategy(rng, cfg.detector_dim)
            etas = eta_values(strategy, cfg.detector_state, cfg.detector_unitary)
            m = guess_observable(strategy, cfg.detector_state, cfg.detector_unitary).direction
            n = interference_observable(cfg).direction
            assert m[0] == 0 and m[1] == 0
            assert n[2] == pytest.approx(2 * cfg.r - 1, abs=1e-15)
            assert m @ n == pytest.approx((etas.eta_s - etas.eta_s_u) * (2 * cfg.r - 1), abs=1e-14)
            n_sym = interference_observable(cfg.replace(r=0.5)).direction
            assert abs(m @ n_sym) <= 1e-12


class TestClosedForm:
    def test_orthogonal_compatible(self):
        res = jm_closed_form(obs(0, 0, 0, 0.6), obs(0, 0.6, 0, 0))
        assert res.jointly_measurable
        assert res.margin == pytest.approx(0.4, abs=1e-12)

    def test_orthogonal_incompatible(self):
        res = jm_closed_form(obs(0, 0, 0, 0.8), obs(0, 0.8, 0, 0))
        assert not res.jointly_measurable
        assert res.margin == pytest.approx(-0.4, abs=1e-12)

    @pytest.mark.parametrize("x", [-0.3, 0.0, 0.2])
    def test_parallel(self, x):
        assert jm_closed_form(obs(x, 0, 0, 0.7), obs(0, 0, 0, -1)).jointly_measurable

    def test_trivial_first(self):
        assert jm_closed_form(obs(0.4, 0, 0, 0), obs(0, 1, 0, 0)).jointly_measurable

    def test_boundary(self):
        res = jm_closed_form(obs(0, 0, 0, S), obs(0, S, 0, 0))
        assert abs(res.margin) <= 1e-9
        assert classify_margin(res.margin) == "boundary"

    def test_biased_second_unsupported(self):
        with pytest.raises(UnsupportedRegimeError):
            jm_closed_form(obs(0, 0, 0, 0.5), obs(0.1, 0.5, 0, 0))

    def test_unbiased_pairs_match_known_criterion(self, rng):
        # two unbiased observables are compatible iff |m+n| + |m-n| <= 2
        for _ in range(2000):
            m = random_bloch_vector(rng, rng.uniform())
            n = random_bloch_vector(rng, rng.uniform())
            known = np.linalg.norm(m + n) + np.linalg.norm(m - n) - 2
            if abs(known) < 1e-9:
                continue
            assert jm_closed_form(UnsharpObservable(0, m), UnsharpObservable(0, n)).jointly_measurable == (known <= 0)

    def test_setup_pair_implies_overlap_inequality(self, rng):
        for _ in range(500):
            cfg = random_config(rng)
            strategy = random_strategy(rng, cfg.detector_dim)
            rho_d, u = cfg.detector_state, cfg.detector_unitary
            res = jm_closed_form(guess_observable(strategy, rho_d, u), interference_observable(cfg))
            e = eta_values(strategy, rho_d, u)
            overlap = math.sqrt(e.eta_s * e.eta_s_u) + math.sqrt(e.eta_sbar * e.eta_sbar_u)
            assert res.jointly_measurable
            assert overlap >= abs(cfg.detector_overlap) - 1e-9


class TestOracle:
    @pytest.mark.parametrize("y", [-0.6, 0.0, 0.35, 1.0])
    def test_trivial_second(self, rng, y):
        found, witness = jm_oracle(random_observable(rng), obs(y, 0, 0, 0))
        assert found and witness is not None

    def test_sharp_noncommuting(self):
        found, witness = jm_oracle(obs(0, 0, 0, 1), obs(0, 1, 0, 0))
        assert not found and witness is None
        found, _ = jm_oracle(obs(0, 0, 0, 1), obs(0, S, 0, S))
        assert not found

    def test_boundary_has_witness(self):
        a, b = obs(0, 0, 0, S), obs(0, S, 0, 0)
        found, witness = jm_oracle(a, b)
        assert found
        witness.check(a, b)
        assert witness.min_eigenvalue() >= -1e-9

    def test_clear_cases_certified(self):
        search = oracle_search(obs(0, 0, 0, 1), obs(0, 1, 0, 0))
        assert search.certified and search.levels == 0

    def test_agrees_with_closed_form(self, rng):
        for _ in range(500):
            a, b = random_observable(rng), random_observable(rng, bias=0.0)
            closed = jm_closed_form(a, b)
            found, witness = jm_oracle(a, b)
            assert found == closed.jointly_measurable or abs(closed.margin) <= 1e-3
            if found:
                witness.check(a, b)

    def test_biased_second_via_swap(self, rng):
        # with the first observable unbiased the closed form applies to the swapped pair
        checked = 0
        for _ in range(500):
            a, b = random_observable(rng, bias=0.0), random_observable(rng)
            if b.norm == 0:
                continue
            closed = jm_closed_form(b, a)
            if abs(closed.margin) <= 1e-3:
                continue
            assert jm_oracle(a, b).jointly_measurable == closed.jointly_measurable
            checked += 1
        assert checked > 400

    def test_order_symmetric(self, rng):
        for _ in range(200):
            a, b = random_observable(rng), random_observable(rng)
            s1, s2 = oracle_search(a, b), oracle_search(b, a)
            if abs(s1.min_eigenvalue) > 1e-6:
                assert s1.jointly_measurable == s2.jointly_measurable


class TestAssembleJoint:
    def test_trivial_second(self, rng):
        a, b = random_observable(rng), obs(0, 0, 0, 0)
        joint = assemble_joint(a.effect() / 2, a, b)
        joint.check(a, b)

    def test_commuting_product(self):
        a, b = obs(0.1, 0, 0, 0.6), obs(0, 0, 0, -0.9)
        joint = assemble_joint(a.effect() @ b.effect(), a, b)
        joint.check(a, b)
        assert np.allclose(sum(joint.effects()), np.eye(2))

    def test_perturbed_witness_rejected(self):
        a, b = obs(0, 0, 0, S), obs(0, S, 0, 0)
        _, witness = jm_oracle(a, b)
        with pytest.raises(InfeasibleWitnessError):
            assemble_joint(witness.pp + 0.1 * np.diag([1, -1]), a, b)

    def test_non_hermitian_rejected(self):
        a = obs(0, 0, 0, 0.2)
        with pytest.raises(ContractViolation):
            assemble_joint(np.array([[0.1, 0.1], [0, 0.1]]), a, a)

    def test_check_detects_wrong_marginal(self, rng):
        a, b = obs(0, 0, 0, 0.3), obs(0, 0.3, 0, 0)
        _, witness = jm_oracle(a, b)
        with pytest.raises(ContractViolation):
            witness.check(b, a)
