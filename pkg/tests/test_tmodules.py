import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import local, modules
from drgalg.linalg import ExactMatrix, SubspaceBasis
from drgalg.terwilliger import MatrixAlgebra, generate_algebra
from drgalg.tmodules import (ProfileError, TModule, _end_space, _float_gens, commutant, decompose_standard_module,
                             is_irreducible, local_criterion, module_profile, modules_isomorphic, rationalize,
                             wedderburn_report)


def unit_matrix(n, i, j):
    m = np.zeros((n, n), dtype=np.int64)
    m[i, j] = 1
    return ExactMatrix.from_ints(m)


def test_commutant_of_full_matrix_algebra():
    n = 4
    full = MatrixAlgebra([unit_matrix(n, i, j) for i in range(n) for j in range(n)], None,
                         ExactMatrix.identity(n), "Mat_4")
    assert commutant(full).dim == 1


def test_commutant_of_diagonal_algebra():
    n = 5
    diag = generate_algebra([unit_matrix(n, i, i) for i in range(n)])
    comm = commutant(diag)
    assert comm.dim == n
    assert comm.info.exact_basis


def test_commutant_dimension_matches_multiplicities(spec):
    run = modules(spec)
    assert run.comm.dim == sum(m * m for m in run.dec.multiplicities)
    assert run.comm.info.exact_basis and run.comm.info.rank_certified


def test_commutant_elements_commute_exactly(small_spec):
    run = modules(small_spec)
    for c in run.comm.basis[:10]:
        for g in run.t.generators:
            assert c @ g == g @ c


def test_modules_fill_the_standard_module(spec):
    run = modules(spec)
    assert sum(m.dim for m in run.dec.modules) == run.g.n
    q = np.hstack([m.basis.vectors for m in run.dec.modules])
    assert np.allclose(q.T @ q, np.eye(run.g.n), atol=1e-8)


def test_hamming_primary_module():
    run = modules("hamming:3,3")
    prim = [m for m in run.dec.modules if m.r == 0]
    assert len(prim) == 1
    assert prim[0].dim == 4 and prim[0].shape == (1, 1, 1, 1)


def test_johnson_primary_profile():
    run = modules("johnson:6,3")
    prim = next(m for m in run.dec.modules if m.primary)
    assert (prim.r, prim.s, prim.d) == (0, 0, 3) and prim.shape == (1, 1, 1, 1)


def test_profiles(spec):
    run = modules(spec)
    for m in run.dec.modules:
        assert m.shape[0] == 1
        if not m.primary:
            assert 1 <= m.r <= run.bm.D and 1 <= m.s <= run.bm.D


def test_seed_independence_on_cycle():
    a = modules("cycle:8", seed=0).dec
    b = modules("cycle:8", seed=5).dec
    assert a.multiplicities == b.multiplicities and a.summands == b.summands
    assert sorted(m.dim for m in a.modules) == sorted(m.dim for m in b.modules)


def test_primary_is_irreducible_and_whole_space_is_not():
    run = modules("hamming:3,3")
    prim = next(m for m in run.dec.modules if m.primary)
    assert is_irreducible(prim.basis, run.t)
    assert not is_irreducible(SubspaceBasis.whole(run.g.n), run.t)


def test_doubled_module_has_four_endomorphisms():
    run = modules("hamming:3,3")
    cid = next(c for c, m in enumerate(run.dec.multiplicities) if m >= 2)
    w1, w2 = [m for m, c in zip(run.dec.modules, run.dec.classes) if c == cid][:2]
    both = SubspaceBasis(run.g.n, np.hstack([w1.basis.vectors, w2.basis.vectors]))
    assert not is_irreducible(both, run.t)
    assert _end_space(both.vectors, _float_gens(run.t)).shape[1] == 4


def test_unstable_subspace_rejected():
    run = modules("hamming:3,3")
    e = np.zeros((run.g.n, 1))
    e[1] = 1.0
    with pytest.raises(ValueError):
        is_irreducible(SubspaceBasis(run.g.n, e), run.t)


def test_isomorphism_basics():
    run = modules("hamming:3,3")
    mods = run.dec.modules
    prim = next(m for m in mods if m.primary)
    other = next(m for m in mods if not m.primary)
    assert modules_isomorphic(other, other, run.t)
    assert not modules_isomorphic(prim, other, run.t)


def test_mu_criterion_agrees_with_intertwiners_on_hamming():
    run = modules("hamming:3,3")
    ends = [m for m in run.dec.modules if m.r == 1]
    same_mu = [(a, b) for a, b in itertools.combinations(ends, 2) if local_criterion(a, b)]
    assert same_mu
    for a, b in itertools.combinations(ends, 2):
        assert modules_isomorphic(a, b, run.t) == local_criterion(a, b)


def test_end_dim_is_one(spec):
    assert all(m.end_dim == 1 for m in modules(spec).dec.modules)


def test_profile_rejects_non_interval_support():
    loc = local("hamming:3,3")
    v = np.zeros((loc.g.n, 2))
    v[loc.dual.cells[0][0], 0] = 1.0
    v[loc.dual.cells[2][0], 1] = 1.0
    with pytest.raises(ProfileError):
        module_profile(TModule(SubspaceBasis(loc.g.n, v)), loc.dual, loc.bm)


def test_wedderburn_counts(spec):
    run = modules(spec)
    rep = wedderburn_report(run.dec, run.t)
    assert rep.dimension_ok and rep.commutant_ok and rep.primary_ok


def test_hamming_primary_summand():
    run = modules("hamming:3,3")
    prim_class = next(c for m, c in zip(run.dec.modules, run.dec.classes) if m.primary)
    assert run.dec.summands[prim_class] ** 2 == 16


def test_exact_cross_check(spec):
    checks = modules(spec).dec.exact_checks
    assert "failed" not in checks.values()
    assert "verified" in checks.values()


@settings(max_examples=40)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=12), min_size=1, max_size=12))
def test_rationalize_recovers_small_fractions(values):
    arr = np.array([float(v) for v in values])
    num, den = rationalize(arr)
    assert [Fraction(int(a), den) for a in num] == values


def test_rationalize_rejects_irrational():
    assert rationalize(np.array([np.sqrt(2), np.pi])) is None


def test_decomposition_is_seed_deterministic():
    loc = local("johnson:6,3")
    a = decompose_standard_module(loc.t, loc.dual, loc.bm, seed=7)
    b = decompose_standard_module(loc.t, loc.dual, loc.bm, seed=7)
    assert a.coefficients == b.coefficients and a.classes == b.classes
