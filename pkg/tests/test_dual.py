import itertools
from math import comb

import numpy as np
import pytest

from conftest import algebra, local
from drgalg.bose_mesner import IdentityViolation, reorder
from drgalg.dual import build_dual, verify_triple_products


def test_e0_star_is_base_indicator(spec):
    loc = local(spec)
    e0 = loc.dual.Estar[0].to_float()
    expected = np.zeros((loc.g.n, loc.g.n))
    expected[loc.x, loc.x] = 1
    assert np.array_equal(e0, expected)


@pytest.mark.parametrize("x", [0, 13, 26])
def test_hamming_subconstituent_sizes(x):
    base = algebra("hamming:3,3")
    dual = build_dual(base.g, base.bm, x)
    assert dual.sizes == [comb(3, i) * 2**i for i in range(4)] == [1, 6, 12, 8]


def test_dual_eigenvalues_distinct(spec):
    ts = [float(t) for t in local(spec).dual.theta_star]
    assert len(set(np.round(ts, 9))) == len(ts)


def test_dual_eigenvalues_are_scaled_eigenmatrix_column(spec):
    # theta*_i = |X| (E_1)_{xy} for y at distance i; oracle from a float eigenvector basis
    loc = local(spec)
    e1 = loc.bm.E[1].to_float()
    oracle = [loc.g.n * e1[loc.x, cell[0]] for cell in loc.dual.cells]
    assert np.allclose([float(t) for t in loc.dual.theta_star], oracle)


def test_astar_products_expand(spec):
    loc = local(spec)
    ast = [a.to_float() for a in loc.dual.Astar]
    q = np.array(loc.bm.q, dtype=float)
    d = loc.bm.D
    for i, j in itertools.product(range(d + 1), repeat=2):
        assert np.allclose(ast[i] @ ast[j], sum(q[h, i, j] * ast[h] for h in range(d + 1)), atol=1e-8)


def test_triple_products(spec):
    rep = verify_triple_products(local(spec).g, local(spec).bm, local(spec).dual)
    assert rep.ok, rep.violations
    assert rep.checked > 2 * (local(spec).bm.D + 1) ** 3


def test_named_vanishing_blocks():
    h = local("hamming:3,3")
    es, a = h.dual.Estar, h.bm.A
    assert (es[0] @ a[2] @ es[1]).is_zero()
    assert (es[1] @ a[1] @ es[3]).is_zero()
    c = local("cycle:8")
    assert (c.bm.E[1] @ c.dual.Astar[1] @ c.bm.E[3]).is_zero()


def test_bad_vertex_and_non_q_polynomial_ordering():
    base = algebra("johnson:6,3")
    with pytest.raises(IndexError):
        build_dual(base.g, base.bm, 99)
    with pytest.raises(IdentityViolation):
        build_dual(base.g, reorder(base.bm, (0, 2, 1, 3)), 0)
