from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from trisparse import (
    CapExceededError,
    CertificateError,
    Graph,
    alpha_beta,
    audit,
    certified_upper_bound,
    chif_exact,
    complete_graph,
    cycle_graph,
    maximal_independent_sets,
    petersen_graph,
    star_graph,
    triangle_free_regular,
    verify_certificate,
)

import oracles


# -- maximal independent sets --------------------------------------------------

def test_mis_k3():
    sets = maximal_independent_sets(complete_graph(3))
    assert sorted(sets, key=sorted) == [frozenset({0}), frozenset({1}), frozenset({2})]


def test_mis_c5(c5):
    sets = maximal_independent_sets(c5)
    assert len(sets) == 5
    assert all(len(s) == 2 for s in sets)


def test_mis_edgeless():
    assert maximal_independent_sets(Graph(4)) == [frozenset({0, 1, 2, 3})]


def test_mis_matches_oracle():
    rng = random.Random(13)
    for _ in range(25):
        g = oracles.random_graph(rng, rng.randint(1, 8), rng.random())
        assert set(maximal_independent_sets(g)) == oracles.maximal_independent_sets(g)


def test_mis_cap():
    with pytest.raises(CapExceededError):
        maximal_independent_sets(Graph(25))


# -- exact fractional chromatic number -------------------------------------------

def test_chif_cliques():
    for n in range(1, 9):
        assert chif_exact(complete_graph(n)).value == n


def test_chif_odd_cycles():
    for k in range(1, 6):
        res = chif_exact(cycle_graph(2 * k + 1))
        assert res.value == 2 + Fraction(1, k)


def test_chif_petersen(petersen):
    assert chif_exact(petersen).value == Fraction(5, 2)


def test_chif_duality_and_coloring_invariants(c5, petersen):
    for g in (c5, petersen, complete_graph(5), star_graph(4)):
        res = chif_exact(g)
        total = sum((w for _, w in res.coloring.atoms), start=Fraction(0))
        assert total == res.value == res.coloring.objective
        assert sum(res.vertex_duals, start=Fraction(0)) == res.value
        for s, w in res.coloring.atoms:
            assert w > 0
            assert all(not g.has_edge(u, v) for u in s for v in s if u < v)
        for v in range(g.n):
            cover = sum((w for s, w in res.coloring.atoms if v in s), start=Fraction(0))
            assert cover >= 1


def test_chif_lower_bound_n_over_independence():
    rng = random.Random(71)
    for _ in range(15):
        g = oracles.random_graph(rng, rng.randint(1, 8), rng.random())
        value = chif_exact(g).value
        assert value >= Fraction(g.n, oracles.independence_number(g))


def test_chif_disjoint_union_is_max():
    rng = random.Random(29)
    for _ in range(8):
        a = oracles.random_graph(rng, rng.randint(1, 5), rng.random())
        b = oracles.random_graph(rng, rng.randint(1, 5), rng.random())
        union = Graph(
            a.n + b.n,
            list(a.edges) + [(u + a.n, v + a.n) for u, v in b.edges],
        )
        assert chif_exact(union).value == max(chif_exact(a).value, chif_exact(b).value)


def test_chif_empty_graph():
    assert chif_exact(Graph(0)).value == 0


# -- certificates -----------------------------------------------------------------

def test_identity_certificate_always_verifies():
    # alpha = (1+lam)/lam, beta = 1: alpha*Pr(v in I) = Pr(I & N(v) = empty)
    # and E|N(v) & I| >= Pr(I & N(v) != empty), so the sum is >= 1 on every
    # induced subgraph.
    rng = random.Random(101)
    for _ in range(10):
        g = oracles.random_graph(rng, rng.randint(1, 7), rng.random())
        lam = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        cert = verify_certificate(g, (1 + lam) / lam, Fraction(1), lam)
        assert cert.verified
        assert cert.exhaustive
        assert cert.worst_margin >= 0
        assert cert.checked_subgraphs == 2 ** g.n - 1


def test_identity_certificate_margin_exactly_zero_on_k2(k2):
    lam = Fraction(1)
    cert = verify_certificate(k2, (1 + lam) / lam, Fraction(1), lam)
    assert cert.worst_margin == 0
    assert cert.verified


def test_zero_weights_fail_with_margin_minus_one(c5):
    cert = verify_certificate(c5, 0, 0, Fraction(1))
    assert not cert.verified
    assert cert.worst_margin == -1
    assert cert.witness is not None
    subset, v = cert.witness
    assert v in subset


def test_alpha_beta_certificate_on_c5(c5):
    aud = audit(c5)
    for lam in (0.25, 0.5, 1.0):
        ab = alpha_beta(aud.max_degree, float(aud.implied_f), lam)
        cert = verify_certificate(c5, ab.alpha, ab.beta, lam)
        assert cert.verified
        bound = certified_upper_bound(c5, cert)
        assert bound >= chif_exact(c5).value


def test_alpha_beta_certificate_on_triangle_free_corpus(petersen):
    graphs = [cycle_graph(6), cycle_graph(9), petersen, star_graph(5),
              triangle_free_regular(12, 3, seed=4)]
    for g in graphs:
        aud = audit(g)
        chif = chif_exact(g).value
        for lam in (0.25, 1.0):
            ab = alpha_beta(aud.max_degree, float(aud.implied_f), lam)
            cert = verify_certificate(g, ab.alpha, ab.beta, lam)
            assert cert.verified, (g, lam, cert.worst_margin, cert.witness)
            assert certified_upper_bound(g, cert) >= chif


def test_certified_upper_bound_examples(c5):
    lam = Fraction(1)
    for n in (3, 4, 5):
        g = complete_graph(n)
        cert = verify_certificate(g, (1 + lam) / lam, Fraction(1), lam)
        ub = certified_upper_bound(g, cert)
        assert ub == (1 + lam) / lam + (n - 1)
        assert ub >= chif_exact(g).value == n
    cert = verify_certificate(c5, Fraction(2), Fraction(1), lam)
    assert certified_upper_bound(c5, cert) == 4 >= Fraction(5, 2)


def test_certified_upper_bound_single_vertex_limit():
    g = Graph(1)
    for lam in (Fraction(10), Fraction(100), Fraction(1000)):
        cert = verify_certificate(g, (1 + lam) / lam, Fraction(1), lam)
        ub = certified_upper_bound(g, cert)
        assert 1 < ub <= 1 + Fraction(1, 10)
        assert ub >= chif_exact(g).value == 1


def test_unverified_certificate_rejected(c5):
    cert = verify_certificate(c5, 0, 0, Fraction(1))
    with pytest.raises(CertificateError):
        certified_upper_bound(c5, cert)


def test_sampled_certificate_never_claims_exhaustive(petersen):
    lam = Fraction(1)
    cert = verify_certificate(petersen, (1 + lam) / lam, Fraction(1), lam,
                              exhaustive=False, samples=20, seed=7)
    assert not cert.exhaustive
    assert cert.verified
    # full graph + 10 deletions + sampled extras
    assert cert.checked_subgraphs >= 11
    with pytest.raises(CertificateError):
        certified_upper_bound(petersen, cert)


def test_exhaustive_cap():
    with pytest.raises(CapExceededError):
        verify_certificate(Graph(16), 2, 1, Fraction(1), exhaustive=True)


def test_sampled_mode_determinism(petersen):
    a = verify_certificate(petersen, 2.0, 1.0, 1.0, exhaustive=False, samples=12, seed=3)
    b = verify_certificate(petersen, 2.0, 1.0, 1.0, exhaustive=False, samples=12, seed=3)
    assert a == b
