from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drgalg.fields import QQ, NumberField
from drgalg.graphs import build_graph
from drgalg.linalg import (BLOCK_PRIME, DomainMismatchError, ExactMatrix, FloatMatrix, NotAllInteger,
                           ShapeError, SubspaceBasis, ToleranceContext, exact_spectrum, gram_trace_basis,
                           integer_spectrum, intersect, minimal_polynomial, orthogonal_complement_within, project,
                           rank_mod_p, symmetric_eigendecomposition)


def cycle_adjacency(n):
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        a[i, (i + 1) % n] = a[(i + 1) % n, i] = 1
    return a


def fraction_rank(rows):
    """Independent oracle: Gaussian elimination over Fraction."""
    m = [[Fraction(v) for v in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


small_ints = st.integers(min_value=-5, max_value=5)


def int_matrix(r, c):
    return st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r).map(
        lambda rows: np.array(rows, dtype=np.int64))


# ---------------------------------------------------------------- exact arithmetic

@given(int_matrix(3, 4), int_matrix(4, 2), int_matrix(2, 3))
def test_exact_product_is_associative(a, b, c):
    ea, eb, ec = (ExactMatrix.from_ints(m) for m in (a, b, c))
    assert (ea @ eb) @ ec == ea @ (eb @ ec)


@given(int_matrix(3, 3), st.integers(1, 9))
def test_exact_scalar_division_round_trips(a, k):
    m = ExactMatrix.from_ints(a)
    assert (m / k) * k == m
    assert np.allclose((m / k).to_float(), a / k)


def test_overflow_promotes_to_object_arrays():
    big = np.full((2, 2), 2**40, dtype=np.int64)
    m = ExactMatrix.from_ints(big)
    prod = m @ m @ m
    assert prod.entry(0, 0).to_fraction() == 4 * 2**120


def test_mixed_domains_raise():
    with pytest.raises(DomainMismatchError):
        ExactMatrix.identity(2) @ FloatMatrix.identity(2)


def test_shape_mismatch_raises():
    with pytest.raises(ShapeError):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)


def test_tolerance_context_validates():
    with pytest.raises(ValueError):
        ToleranceContext(rank_rtol=0.0)
    with pytest.raises(ValueError):
        ToleranceContext(rank_rtol=1e-6, cluster_rtol=1e-9)


# ---------------------------------------------------------------- gram_trace_basis

def test_scalar_multiples_collapse():
    i3 = ExactMatrix.identity(3)
    basis = gram_trace_basis([i3, i3 * 2])
    assert len(basis) == 1 and basis[0] == i3
    fb = gram_trace_basis([FloatMatrix.identity(3), FloatMatrix.identity(3) * 2])
    assert len(fb) == 1


def test_cycle6_identity_ones_adjacency():
    a = cycle_adjacency(6)
    mats = [np.eye(6, dtype=np.int64), np.ones((6, 6), dtype=np.int64), a]
    assert len(gram_trace_basis([ExactMatrix.from_ints(m) for m in mats])) == 3
    assert fraction_rank([m.reshape(-1) for m in mats]) == 3


def test_hamming_products_rank_matches_row_reduction():
    g = build_graph("hamming:3,3")
    a = (g.distances == 1).astype(np.int64)
    stars = [np.diag((g.distances[0] == i).astype(np.int64)) for i in range(4)]
    gens = [a] + stars
    prods = gens + [x @ y for x in gens for y in gens]
    basis = gram_trace_basis([ExactMatrix.from_ints(p) for p in prods])
    assert len(basis) == fraction_rank([p.reshape(-1) for p in prods])


@settings(max_examples=30, deadline=None)
@given(st.lists(int_matrix(3, 3), min_size=1, max_size=6))
def test_exact_and_float_bases_agree_in_size(mats):
    exact = gram_trace_basis([ExactMatrix.from_ints(m) for m in mats])
    assert len(exact) == fraction_rank([m.reshape(-1) for m in mats])
    assert len(gram_trace_basis([FloatMatrix(m) for m in mats])) == len(exact)


# ---------------------------------------------------------------- eigen

def test_identity_has_one_eigenspace():
    parts = symmetric_eigendecomposition(FloatMatrix.identity(4))
    assert len(parts) == 1
    assert parts[0][0] == pytest.approx(1.0) and parts[0][1].dim == 4


def test_cycle6_spectrum():
    parts = symmetric_eigendecomposition(FloatMatrix(cycle_adjacency(6)))
    oracle = sorted({round(2 * np.cos(2 * np.pi * j / 6), 9) for j in range(6)}, reverse=True)
    assert [round(t, 9) for t, _ in parts] == oracle == [2, 1, -1, -2]
    assert [b.dim for _, b in parts] == [1, 2, 2, 1]


def test_hamming_spectrum_multiplicities():
    a = (build_graph("hamming:3,3").distances == 1).astype(np.int64)
    parts = symmetric_eigendecomposition(FloatMatrix(a))
    assert len(parts) == 4 and sum(b.dim for _, b in parts) == 27
    oracle = np.linalg.eigvalsh(a)
    for t, b in parts:
        assert b.dim == int(np.sum(np.abs(oracle - t) < 1e-8))


@settings(max_examples=25, deadline=None)
@given(int_matrix(5, 5))
def test_eigendecomposition_reconstructs(m):
    s = m + m.T
    parts = symmetric_eigendecomposition(FloatMatrix(s))
    recon = sum(t * b.projector() for t, b in parts)
    assert np.allclose(recon, s, atol=1e-8)
    assert sum(b.dim for _, b in parts) == 5


def test_cycle5_is_not_integral():
    assert integer_spectrum(ExactMatrix.from_ints(cycle_adjacency(5))) is NotAllInteger
    poly = minimal_polynomial(ExactMatrix.from_ints(cycle_adjacency(5)))
    # (x - 2)(x^2 + x - 1)
    assert poly == [Fraction(2), Fraction(-3), Fraction(-1), Fraction(1)]


def test_integer_spectra():
    h = (build_graph("hamming:3,3").distances == 1).astype(np.int64)
    assert integer_spectrum(ExactMatrix.from_ints(h)) == [6, 3, 0, -3]
    j = (build_graph("johnson:6,3").distances == 1).astype(np.int64)
    spec = integer_spectrum(ExactMatrix.from_ints(j))
    assert len(spec) == 4 and spec[0] == 9 == int(j.sum(axis=1)[0])
    assert set(spec) == {round(v) for v in np.linalg.eigvalsh(j)}


def test_exact_spectrum_of_cycle8_lives_in_sqrt2():
    fld, theta = exact_spectrum(ExactMatrix.from_ints(cycle_adjacency(8)))
    assert fld.degree == 2
    assert [float(t) for t in theta] == pytest.approx([2, np.sqrt(2), 0, -np.sqrt(2), -2])


@settings(max_examples=30, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 20))
def test_number_field_arithmetic(a, b, c):
    k = NumberField((Fraction(-2), Fraction(0), Fraction(1)), root=2 ** 0.5)
    x = k.from_coeffs((a, b))
    y = k.from_coeffs((c, 1))
    assert (x * y) / y == x
    assert float(x * y) == pytest.approx(float(x) * float(y), rel=1e-9, abs=1e-9)
    assert QQ(c).to_fraction() == c


# ---------------------------------------------------------------- subspaces

def test_intersect_is_idempotent():
    u = SubspaceBasis.from_columns(np.random.default_rng(0).normal(size=(6, 3)))
    assert intersect(u, u).same_span(u)


def test_projecting_e0_gives_ones():
    n = 8
    e0 = FloatMatrix(np.full((n, n), 1.0 / n))
    img = project(e0, SubspaceBasis.whole(n))
    assert img.dim == 1 and img.contains(np.ones(n))


def test_complement_of_ones_in_cycle6():
    ones = SubspaceBasis.from_columns(np.ones((6, 1)))
    assert orthogonal_complement_within(ones, SubspaceBasis.whole(6)).dim == 5


# ---------------------------------------------------------------- modular rank

@settings(max_examples=30, deadline=None)
@given(int_matrix(6, 5))
def test_rank_mod_p_matches_rational_rank(m):
    # every nonzero minor is smaller than p in absolute value, so the ranks agree
    assert rank_mod_p(m.astype(np.float64), BLOCK_PRIME) == fraction_rank(m.tolist())
