from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from trisparse import (
    CapExceededError,
    DomainError,
    Graph,
    complete_graph,
    cycle_graph,
    exact_marginals,
    independence_polynomial,
    occupancy_fraction,
    partition_function,
    star_graph,
    uncovered_expectation,
    verify_genhcm,
    verify_hcmbound_local,
)

import oracles

HALF = Fraction(1, 2)


# -- partition function --------------------------------------------------------

def test_partition_k1():
    assert partition_function(Graph(1), 2) == 3


def test_partition_k3():
    assert partition_function(complete_graph(3), 1) == 4


def test_partition_c5(c5):
    # 1 empty + 5 singletons + 5 non-adjacent pairs
    assert partition_function(c5, 1) == 11


def test_partition_matches_oracle_on_random_graphs():
    rng = random.Random(11)
    for _ in range(25):
        g = oracles.random_graph(rng, rng.randint(1, 8), rng.random())
        lam = Fraction(rng.randint(1, 5), rng.randint(1, 5))
        assert partition_function(g, lam) == oracles.partition_function(g, lam)


def test_deletion_contraction_identity():
    rng = random.Random(5)
    for _ in range(40):
        g = oracles.random_graph(rng, rng.randint(1, 9), rng.random())
        lam = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        z = partition_function(g, lam)
        for v in range(g.n):
            minus_v, _ = _delete(g, {v})
            minus_nv, _ = _delete(g, {v} | set(g.neighbors(v)))
            assert z == partition_function(minus_v, lam) + lam * partition_function(minus_nv, lam)


def _delete(g: Graph, drop: set[int]):
    from trisparse import induced_subgraph

    return induced_subgraph(g, set(range(g.n)) - drop)


def test_enumeration_cap():
    with pytest.raises(CapExceededError, match="sampler"):
        partition_function(Graph(31), 1)


def test_fugacity_validation(c5):
    for bad in (0, -1, Fraction(-1, 2), float("inf"), float("nan")):
        with pytest.raises(DomainError):
            partition_function(c5, bad)


def test_independence_polynomial_c5(c5):
    assert independence_polynomial(c5) == (1, 5, 5)


# -- marginals -----------------------------------------------------------------

def test_marginals_k2(k2):
    hx = exact_marginals(k2, Fraction(1))
    assert hx.z == 3
    assert hx.marginals == (Fraction(1, 3), Fraction(1, 3))
    assert hx.occupancy == Fraction(2, 3)
    assert hx.nbr_occ == (Fraction(1, 3), Fraction(1, 3))


def test_marginals_c5(c5):
    hx = exact_marginals(c5, Fraction(1))
    assert set(hx.marginals) == {Fraction(3, 11)}
    assert hx.occupancy == Fraction(15, 11)
    assert hx.occupancy_fraction == Fraction(3, 11)


def test_marginals_edgeless():
    hx = exact_marginals(Graph(3), Fraction(1))
    assert set(hx.marginals) == {HALF}
    assert hx.occupancy == Fraction(3, 2)


def test_marginal_identity_against_oracle():
    rng = random.Random(23)
    for _ in range(15):
        g = oracles.random_graph(rng, rng.randint(1, 7), rng.random())
        lam = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        hx = exact_marginals(g, lam)
        for v in range(g.n):
            assert hx.marginals[v] == oracles.marginal(g, lam, v)
            assert hx.nbr_occ[v] == oracles.nbr_occupancy(g, lam, v)


def test_occupancy_fraction_via_derivative(c5):
    assert occupancy_fraction(c5, Fraction(1)) == Fraction(3, 11)
    hx = exact_marginals(c5, Fraction(2, 3))
    assert occupancy_fraction(c5, Fraction(2, 3)) == hx.occupancy_fraction


def test_float_mode_close_to_exact(c5):
    z = partition_function(c5, 0.5)
    assert isinstance(z, float)
    assert math.isclose(z, float(partition_function(c5, HALF)), rel_tol=1e-12)


def test_occupancy_monotone_in_lambda(c5, petersen):
    for g in (c5, petersen, star_graph(3)):
        grid = [Fraction(k, 8) for k in range(1, 17)]
        values = [exact_marginals(g, lam).occupancy for lam in grid]
        assert all(a < b for a, b in zip(values, values[1:]))


def test_uniform_at_lambda_one_matches_average_set_size(c5, petersen):
    for g in (c5, petersen):
        assert exact_marginals(g, Fraction(1)).occupancy == oracles.mean_independent_set_size(g)


def test_spatial_markov_identity():
    # Pr(v in I) = (lam/(1+lam)) * Pr(I & N(v) = empty), exactly.
    rng = random.Random(31)
    for _ in range(10):
        g = oracles.random_graph(rng, rng.randint(1, 7), rng.random())
        lam = Fraction(rng.randint(1, 5), rng.randint(1, 4))
        hx = exact_marginals(g, lam)
        for v in range(g.n):
            sets = oracles.independent_sets(g)
            z = sum((lam ** len(i) for i in sets), start=Fraction(0))
            avoid = sum(
                (lam ** len(i) for i in sets if not (i & g.neighbors(v))),
                start=Fraction(0),
            )
            assert hx.marginals[v] == lam / (1 + lam) * avoid / z


# -- uncovered neighbours --------------------------------------------------------

def test_uncovered_isolated_vertex():
    g = Graph(2)  # two isolated vertices
    assert uncovered_expectation(g, Fraction(3), 1) == 0


def test_uncovered_k2(k2):
    assert uncovered_expectation(k2, Fraction(1), 0) == Fraction(2, 3)


def test_uncovered_star_centre():
    # Both leaves are uncovered unless the centre itself is occupied:
    # I = {centre} covers them via N(I \ N(centre)) = N({centre}).
    g = star_graph(2)
    assert uncovered_expectation(g, Fraction(1), 0) == Fraction(8, 5)
    assert oracles.uncovered_expectation(g, Fraction(1), 0) == Fraction(8, 5)


def test_uncovered_matches_oracle():
    rng = random.Random(47)
    for _ in range(15):
        g = oracles.random_graph(rng, rng.randint(1, 7), rng.random())
        lam = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        hx = exact_marginals(g, lam)
        for v in range(g.n):
            expected = oracles.uncovered_expectation(g, lam, v)
            assert hx.uncovered[v] == expected
            assert uncovered_expectation(g, lam, v) == expected


def test_uncovered_invalid_vertex(c5):
    with pytest.raises(DomainError):
        uncovered_expectation(c5, 1, 9)


# -- occupancy inequalities -------------------------------------------------------

def test_genhcm_k2(k2):
    rep = verify_genhcm(k2, Fraction(1))
    assert rep.ok
    # LHS 1/3 against 0.5 * 2**(-2/3)
    expected_rhs = 0.5 * 2 ** (-2 / 3)
    assert math.isclose(rep.vertex_margins[0], 1 / 3 - expected_rhs, rel_tol=1e-12)


def test_genhcm_single_vertex_equality():
    for lam in (HALF, Fraction(1), Fraction(3)):
        rep = verify_genhcm(Graph(1), lam)
        assert abs(rep.vertex_margins[0]) < 1e-15
        assert abs(rep.occupancy_margin) < 1e-15


def test_genhcm_vertex_transitive_triangle_free(c5, petersen):
    for g in (c5, petersen):
        for lam in (Fraction(1, 4), Fraction(1), Fraction(2)):
            rep = verify_genhcm(g, lam)
            assert rep.ok
            assert rep.occupancy_margin >= 0


def test_genhcm_random_graphs():
    rng = random.Random(3)
    for _ in range(20):
        g = oracles.random_graph(rng, rng.randint(1, 8), rng.random())
        rep = verify_genhcm(g, Fraction(rng.randint(1, 4), rng.randint(1, 4)))
        assert rep.ok, (g.edges, rep.vertex_margins, rep.witness)


def test_hcmbound_local_c5(c5):
    rep = verify_hcmbound_local(c5, Fraction(1), 2, 1)
    # exact LHS: 2 * 3/11 + 6/11 = 12/11 at every vertex
    lhs = 2 * Fraction(3, 11) + Fraction(6, 11)
    assert all(math.isclose(m + rep.rhs, float(lhs), rel_tol=1e-12) for m in rep.vertex_margins)
    assert rep.ok


def test_hcmbound_local_clique_identity():
    # alpha = (1+lam)/lam, beta = 1 gives LHS exactly 1 on complete graphs.
    for nn, lam in ((3, HALF), (4, Fraction(1)), (5, Fraction(2))):
        g = complete_graph(nn)
        alpha = (1 + lam) / lam
        rep = verify_hcmbound_local(g, lam, alpha, 1)
        for margin in rep.vertex_margins:
            assert math.isclose(margin + rep.rhs, 1.0, rel_tol=1e-12)
        assert rep.ok


def test_hcmbound_local_rejects_bad_weights(c5):
    with pytest.raises(DomainError):
        verify_hcmbound_local(c5, 1, 0, 1)
    with pytest.raises(DomainError):
        verify_hcmbound_local(Graph(1), 1, 2, 1)  # max degree 0


# -- serialization ----------------------------------------------------------------

def test_json_dict_rational_strings(k2):
    payload = exact_marginals(k2, Fraction(1)).to_json_dict()
    assert payload["Z"] == "3"
    assert payload["marginals"] == ["1/3", "1/3"]
    assert payload["occupancy"] == "2/3"
    assert payload["lambda"] == "1"
    assert set(payload) == {"lambda", "Z", "occupancy", "marginals", "nbr_occ", "uncovered"}
