import itertools

import numpy as np
import pytest

from conftest import local
from drgalg.linalg import FloatMatrix
from drgalg.schemes import (CellMismatchError, RestrictedAlgebra, SchemeVerdict, detect_scheme, distance_scheme,
                            match_named_scheme, restrict_algebra, restrict_corner, same_parameters)
from drgalg.terwilliger import MatrixAlgebra, corner


def restricted(spec, i):
    loc = local(spec)
    return restrict_corner(corner(loc.t, loc.dual.Estar[i], f"E{i}*"), loc.dual.cells[i])


def verdict(spec, i):
    return detect_scheme(restricted(spec, i))


def test_restrict_hamming_first():
    ra = restricted("hamming:3,3", 1)
    assert ra.size == 6 and ra.dim == 3
    assert all(b.shape == (6, 6) for b in ra.basis)
    assert np.array_equal(ra.unit.to_float(), np.eye(6))


def test_restrict_hamming_last():
    ra = restricted("hamming:3,3", 3)
    assert ra.size == (3 - 1) ** 3 == 8


def test_cell_mismatch():
    loc = local("hamming:3,3")
    c = corner(loc.t, loc.dual.Estar[1])
    with pytest.raises(CellMismatchError):
        restrict_corner(c, loc.dual.cells[2])
    with pytest.raises(CellMismatchError):
        restrict_corner(corner(loc.t, loc.bm.E[1]), loc.dual.cells[1])


def test_hamming_first_subconstituent_is_union_of_cliques():
    v = verdict("hamming:3,3", 1)
    assert v.is_scheme and v.class_count == 3
    # identity, same clique (N - 2 = 1 other point), different clique
    assert v.valencies == [1, 1, 4]
    same = v.relations[1] + v.relations[0]
    assert np.array_equal(same @ same, 2 * same)


def test_johnson_first_subconstituent_class_count():
    assert verdict("johnson:6,3", 1).class_count == 4


def test_grassmann_first_subconstituent_class_count():
    assert verdict("grassmann:2,4,2", 1).class_count == 5


def test_first_subconstituent_counts_away_from_the_middle():
    # N > 2D: the relations on G(x) separate as expected
    assert verdict("johnson:7,3", 1).class_count == 4


def test_last_subconstituent_matches_hamming():
    v = verdict("hamming:3,3", 3)
    assert match_named_scheme(v, "hamming:3,2")
    assert not match_named_scheme(v, "johnson:6,3")


def test_last_subconstituent_matches_johnson():
    v = verdict("johnson:7,3", 3)
    assert v.class_count == 1 + min(3, 7 - 2 * 3)
    assert match_named_scheme(v, "johnson:4,3")


def test_cycle_first_subconstituent_two_points():
    v = verdict("cycle:8", 1)
    assert v.is_scheme and v.size == 2
    assert v.class_count == 2
    assert np.array_equal(v.relations[1], np.array([[0, 1], [1, 0]]))


def test_full_bose_mesner_recovers_distance_relations(spec):
    loc = local(spec)
    m = MatrixAlgebra(loc.bm.A, None, loc.bm.identity(), "M")
    v = detect_scheme(restrict_algebra(m, range(loc.g.n)))
    assert v.is_scheme and v.class_count == loc.bm.D + 1
    expected = {(loc.g.distances == h).astype(np.int64).tobytes() for h in range(loc.bm.D + 1)}
    assert {r.tobytes() for r in v.relations} == expected
    assert same_parameters(v, distance_scheme(spec))


def test_p_numbers_nonnegative_integers(spec):
    loc = local(spec)
    for i in (1, loc.bm.D):
        v = verdict(spec, i)
        assert v.is_scheme
        assert v.p.dtype.kind == "i" and np.all(v.p >= 0)
        for a, b in itertools.product(range(v.class_count), repeat=2):
            lhs = v.relations[a] @ v.relations[b]
            assert np.array_equal(lhs, sum(v.p[h, a, b] * v.relations[h] for h in range(v.class_count)))


def test_corners_symmetric_before_detection(spec):
    loc = local(spec)
    for i in (1, loc.bm.D):
        ra = restricted(spec, i)
        assert all(b.is_symmetric() for b in ra.basis)
        assert all((a @ b) == (b @ a) for a, b in itertools.combinations(ra.basis, 2))


def test_float_fingerprints():
    ra = restricted("hamming:3,3", 1)
    fl = RestrictedAlgebra(ra.cell, [FloatMatrix(b.to_float() / 3.0) for b in ra.basis],
                           FloatMatrix.identity(ra.size))
    v = detect_scheme(fl)
    assert v.is_scheme and v.class_count == 3


def test_non_scheme_reports_failing_condition():
    # span{I, P} for a non-symmetric permutation P: relations are not symmetric
    p = np.roll(np.eye(3), 1, axis=0)
    ra = RestrictedAlgebra([0, 1, 2], [FloatMatrix(np.eye(3)), FloatMatrix(p)], FloatMatrix.identity(3))
    v = detect_scheme(ra)
    assert not v.is_scheme and v.failing
    ra = RestrictedAlgebra([0, 1, 2], [FloatMatrix(np.ones((3, 3)))], FloatMatrix.identity(3))
    v = detect_scheme(ra)
    assert not v.is_scheme and "identity" in v.failing


def test_unmatched_parameters():
    a = distance_scheme("hamming:3,2")
    b = distance_scheme("johnson:6,3")
    assert not same_parameters(a, b)
    assert not match_named_scheme(SchemeVerdict(False), "hamming:3,2")
