import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import local
from drgalg.linalg import ExactMatrix
from drgalg.terwilliger import (DimensionCapError, check_all_symmetric, check_commutative, commutativity_residual,
                                corner, generate_algebra, terwilliger_algebra, verify_corner_generation,
                                verify_identities, verify_local_symmetry)

CORNERS = ["E1*", "E1", "ED*", "ED"]


def projector(loc, label):
    d = loc.bm.D
    return {"E1*": loc.dual.Estar[1], "E1": loc.bm.E[1], "ED*": loc.dual.Estar[d], "ED": loc.bm.E[d]}[label]


def fraction_rank(vectors):
    m = [[Fraction(v) for v in vec] for vec in vectors]
    rank = 0
    for col in range(len(m[0]) if m else 0):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def test_adjacency_generates_bose_mesner():
    loc = local("hamming:3,3")
    alg = generate_algebra([loc.bm.A[1]])
    assert alg.dim == loc.bm.D + 1 == 4
    assert alg.certificate.ok


def test_dual_idempotents_generate_commutative_algebra(spec):
    loc = local(spec)
    alg = generate_algebra(loc.dual.Estar)
    assert alg.dim == loc.bm.D + 1
    assert check_commutative(alg)


def test_two_seed_agreement_on_cycle():
    loc = local("cycle:8")
    alg = generate_algebra([loc.bm.A[1], loc.dual.A_star])
    assert alg.dim == loc.t.dim
    assert all(loc.t.contains(b) for b in alg.basis)


def test_t_certificate_and_generators(spec):
    loc = local(spec)
    assert loc.t.certificate.ok
    assert all(loc.t.contains(g) for g in loc.t.generators)
    assert loc.t.contains(loc.dual.A_star)
    assert all(loc.t.contains(e) for e in loc.bm.E)


def test_block_closure_matches_generic_closure(small_spec):
    loc = local(small_spec)
    generic = generate_algebra(loc.t.generators, certify=False)
    assert generic.dim == loc.t.dim


def test_dimension_cap():
    loc = local("hamming:3,3")
    with pytest.raises(DimensionCapError):
        terwilliger_algebra(loc.g, loc.bm, loc.dual, cap=10)


def test_e0_star_corner_dimension_matches_rank_oracle():
    loc = local("hamming:3,3")
    c = corner(loc.t, loc.dual.Estar[0], "E0*")
    e0 = loc.dual.Estar[0]
    oracle = fraction_rank([(e0 @ b @ e0).int_array().reshape(-1) for b in loc.t.basis])
    assert c.dim == oracle


def test_first_corner_dimension_hamming():
    loc = local("hamming:3,3")
    assert corner(loc.t, loc.dual.Estar[1]).dim == 3


def test_first_corner_dimension_johnson():
    loc = local("johnson:6,3")
    dim = corner(loc.t, loc.dual.Estar[1]).dim
    assert dim == 4


def test_first_corner_dimension_johnson_large():
    loc = local("johnson:7,3")
    assert corner(loc.t, loc.dual.Estar[1]).dim == 4


@pytest.mark.parametrize("label", CORNERS)
def test_corners_commutative_and_symmetric(spec, label):
    loc = local(spec)
    c = corner(loc.t, projector(loc, label), label)
    assert commutativity_residual(c.algebra) == 0.0
    assert check_commutative(c) and check_all_symmetric(c)


def test_bose_mesner_commutative_and_t_not(spec):
    loc = local(spec)
    m = generate_algebra([loc.bm.A[1]])
    assert check_commutative(m)
    a, ast = loc.bm.A[1], loc.dual.A_star
    assert not (a @ ast - ast @ a).is_zero()
    assert not check_commutative(loc.t)


def test_corner_requires_idempotent_member():
    loc = local("hamming:3,3")
    with pytest.raises(ValueError):
        corner(loc.t, loc.bm.A[1])


def test_corner_generation(spec):
    loc = local(spec)
    results = verify_corner_generation(loc.t, loc.bm, loc.dual)
    assert [r.name for r in results][:4] == [f"corner-generation-{c}" for c in CORNERS]
    for r in results:
        assert r.passed, (r.name, r.detail)


def test_identities(spec):
    loc = local(spec)
    for r in verify_identities(loc.t, loc.bm, loc.dual, loc.data):
        assert r.passed and r.residual == 0.0, r.name
    assert verify_local_symmetry(loc.bm, loc.dual).passed


def test_hamming_ideal_constants():
    loc = local("hamming:3,3")
    g = loc.g
    nbr = lambda v: set(np.flatnonzero(g.distances[v] == 1))
    y = next(iter(nbr(0)))
    a1 = len(nbr(0) & nbr(y))
    k = len(nbr(0))
    assert (k, a1) == (6, 1)
    es, a = loc.dual.Estar[1], loc.bm.A[1]
    ej = es @ loc.bm.ones() @ es
    assert ej @ ej == ej * k
    assert ej @ (es @ a @ es) == ej * a1


def test_cycle_reduction_rule():
    loc = local("cycle:8")
    e0, e1s = loc.bm.E[0], loc.dual.Estar[1]
    assert e0 @ e1s @ e0 == e0 * Fraction(2, 8)


def test_hamming_block_dims_sum_to_dim():
    loc = local("hamming:3,3")
    assert sum(loc.t.block_dims().values()) == loc.t.dim
    for (i, j), v in loc.t.block_dims().items():
        assert loc.t.block_dims().get((j, i)) == v
