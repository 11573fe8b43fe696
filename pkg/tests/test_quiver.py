import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import skew_matrices
from oracles import naive_conjugate, naive_is_period, naive_mutate, naive_phi, random_skew
from quiver_reduction.exceptions import IndexOutOfRange, NonPositivePoint, NotPeriodic, NotSkewSymmetric
from quiver_reduction.quiver import (
    IterationMap,
    MutationMap,
    QuiverFamilyParams,
    detect_period,
    fomin6,
    is_period,
    iteration_map,
    mutate_matrix,
    mutate_point,
    mutation_sequence,
    new_exchange_matrix,
    render_recurrence,
    sigma_conjugate,
)


class TestExchangeMatrix:
    def test_rejects_non_skew(self):
        with pytest.raises(NotSkewSymmetric):
            new_exchange_matrix([[0, 1], [1, 0]])

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(NotSkewSymmetric):
            new_exchange_matrix([[1, 0], [0, -1]])

    def test_rejects_ragged(self):
        with pytest.raises(Exception):
            new_exchange_matrix([[0, 1], [-1]])

    def test_big_integers_survive(self):
        big = 10**40
        B = new_exchange_matrix([[0, big], [-big, 0]])
        assert mutate_matrix(mutate_matrix(B, 1), 1) == B
        assert B[0, 1] == big

    def test_fomin6_rows(self):
        B = fomin6(2, 13, 5, 7)
        assert B.tolist()[0] == [0, -2, 13, -7, 13, -5]
        assert B.tolist() == [[-x for x in row] for row in zip(*B.tolist())]

    def test_family_params_object(self):
        assert fomin6(QuiverFamilyParams(1, 1, 2, 3)) == fomin6(1, 1, 2, 3)


class TestMutation:
    def test_example_matrix_mutation(self):
        B = fomin6(2, 13, 5, 7)
        assert mutate_matrix(B, 1).tolist() == naive_mutate(B.tolist(), 0)

    def test_index_errors(self):
        B = fomin6(2, 6, 2, 4)
        for k in (0, 7, -1):
            with pytest.raises(IndexOutOfRange):
                mutate_matrix(B, k)

    @settings(max_examples=150, deadline=None)
    @given(skew_matrices(), st.data())
    def test_matches_sign_case_rule(self, rows, data):
        B = new_exchange_matrix(rows)
        k = data.draw(st.integers(1, B.n))
        assert mutate_matrix(B, k).tolist() == naive_mutate(rows, k - 1)

    @settings(max_examples=150, deadline=None)
    @given(skew_matrices(), st.data())
    def test_involution_and_skew_closure(self, rows, data):
        B = new_exchange_matrix(rows)
        k = data.draw(st.integers(1, B.n))
        once = mutate_matrix(B, k)
        assert once.tolist() == [[-x for x in r] for r in zip(*once.tolist())]
        assert mutate_matrix(once, k) == B

    def test_point_mutation_all_ones(self):
        B = fomin6(2, 13, 5, 7)
        _, u = mutate_point(B, 1, np.ones(6))
        assert u[0] == pytest.approx(2.0)
        np.testing.assert_allclose(u[1:], 1.0)

    def test_point_mutation_rejects_nonpositive(self):
        B = fomin6(2, 6, 2, 4)
        with pytest.raises(NonPositivePoint):
            mutate_point(B, 1, [1, 1, 0, 1, 1, 1])
        with pytest.raises(NonPositivePoint):
            mutate_point(B, 1, [1, 1, np.nan, 1, 1, 1])

    def test_batch_equals_loop(self, rng):
        B = fomin6(2, 13, 5, 7)
        U = np.exp(rng.uniform(-1, 1, size=(7, 6)))
        _, batch = mutate_point(B, 3, U)
        for row, u in zip(batch, U):
            np.testing.assert_allclose(row, mutate_point(B, 3, u)[1], rtol=1e-15)

    @settings(max_examples=100, deadline=None)
    @given(skew_matrices(max_n=6, bound=3), st.data())
    def test_positivity(self, rows, data):
        B = new_exchange_matrix(rows)
        k = data.draw(st.integers(1, B.n))
        u = data.draw(st.lists(st.floats(0.05, 20.0), min_size=B.n, max_size=B.n))
        _, out = mutate_point(B, k, u)
        assert np.all(out > 0) and np.all(np.isfinite(out))


class TestPeriod:
    def test_two_periodic(self):
        res = detect_period(fomin6(2, 13, 5, 7))
        assert res.period == 2
        assert res.mutated == res.conjugated

    def test_one_periodic_when_r_equals_t(self):
        res = detect_period(fomin6(2, 6, 2, 4))
        assert res.period == 1
        assert res.mutated.tolist() == naive_conjugate(fomin6(2, 6, 2, 4).tolist(), 1)

    def test_random_non_periodic(self):
        B = new_exchange_matrix([
            [0, 3, -1, 2, 0],
            [-3, 0, 4, -2, 1],
            [1, -4, 0, 5, -3],
            [-2, 2, -5, 0, 2],
            [0, -1, 3, -2, 0],
        ])
        res = detect_period(B)
        assert not res.found
        assert str(res) == "none up to 12"
        assert not any(naive_is_period(B.tolist(), m) for m in range(1, 13))

    def test_zero_matrix_has_period_one(self):
        assert detect_period(new_exchange_matrix([[0] * 3] * 3)).period == 1

    def test_conjugation_matches_permutation_products(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 8))
            rows = random_skew(rng, n)
            B = new_exchange_matrix(rows)
            for m in range(0, 2 * n + 1):
                assert sigma_conjugate(B, m).tolist() == naive_conjugate(rows, m)

    @settings(max_examples=80, deadline=None)
    @given(skew_matrices(max_n=5, bound=3), st.integers(1, 8))
    def test_period_certificate_against_oracle(self, rows, m):
        assert is_period(new_exchange_matrix(rows), m) == naive_is_period(rows, m)

    def test_sequence_wraps_past_n(self):
        B = fomin6(1, 1, 2, 3)
        seq = mutation_sequence(B, 8)
        assert len(seq) == 9
        assert seq[7] == mutate_matrix(seq[6], 1)

    def test_detected_period_is_minimal(self, rng):
        hits = 0
        for _ in range(200):
            r, s, t = (int(x) for x in rng.integers(1, 8, size=3))
            p = int(rng.integers(1, 8))
            B = fomin6(r, s, t, p)
            res = detect_period(B)
            if res.found:
                hits += 1
                assert all(not naive_is_period(B.tolist(), j) for j in range(1, res.period))
                assert naive_is_period(B.tolist(), res.period)
        assert hits == 200


class TestIterationMap:
    def test_matches_linear_domain_oracle(self, rng):
        B = fomin6(2, 13, 5, 7)
        u = np.exp(rng.uniform(-1, 1, 6))
        expected = np.array([float(x) for x in naive_phi(B.tolist(), 2, u)])
        np.testing.assert_allclose(iteration_map(B, 2, u), expected, rtol=1e-13)

    def test_refuses_wrong_period(self):
        with pytest.raises(NotPeriodic):
            IterationMap(fomin6(2, 13, 5, 7), 1)

    def test_ones_start(self):
        out = iteration_map(fomin6(2, 6, 2, 4), 1, np.ones(6))
        np.testing.assert_allclose(out, [1, 1, 1, 1, 1, 2])

    def test_mutation_map_callable(self):
        f = MutationMap(fomin6(2, 6, 2, 4), 2)
        out = f(np.ones(6))
        assert out[1] == pytest.approx(2.0)


class TestRecurrence:
    def test_one_periodic_family(self):
        assert render_recurrence(fomin6(2, 6, 2, 4), 1) == (
            "u[n+6]·u[n] = u[n+1]^2·u[n+3]^4·u[n+5]^2 + u[n+2]^6·u[n+4]^6"
        )

    def test_two_periodic_family(self):
        assert render_recurrence(fomin6(2, 13, 5, 7), 2).splitlines() == [
            "x[n+3]·x[n] = y[n]^2·y[n+1]^7·y[n+2]^5 + x[n+1]^13·x[n+2]^13",
            "y[n+3]·y[n] = x[n+1]^5·x[n+2]^7·x[n+3]^2 + y[n+1]^13·y[n+2]^13",
        ]

    def test_mutation_examples(self):
        B = new_exchange_matrix([[0, 2, -1], [-2, 0, 3], [1, -3, 0]])
        assert mutate_matrix(B, 2).tolist() == [[0, -2, 5], [2, 0, -3], [-5, 3, 0]]
        assert mutate_matrix(new_exchange_matrix([[0, 1], [-1, 0]]), 1).tolist() == [[0, -1], [1, 0]]

    def test_conjugation_examples(self):
        B = fomin6(2, 13, 5, 7)
        assert sigma_conjugate(B, 0) == B
        assert sigma_conjugate(B, 6) == B
        assert sigma_conjugate(B, 2) == mutate_matrix(mutate_matrix(B, 1), 2)
        C = fomin6(3, 4, 3, 5)
        assert mutate_matrix(C, 1) == sigma_conjugate(C, 1)

    def test_empty_products(self):
        assert render_recurrence(new_exchange_matrix([[0] * 3] * 3), 1) == "u[n+3]·u[n] = 2"

    def test_not_periodic(self):
        with pytest.raises(NotPeriodic):
            render_recurrence(fomin6(2, 13, 5, 7), 1)
