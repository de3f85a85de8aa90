"""Bose-Mesner algebra: spectrum, primitive idempotents, Krein parameters, Q-polynomial orderings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .fields import QQ, FieldElement, NumberField
from .graphs import Graph, IntersectionData
from .linalg import (DEFAULT_TOL, ExactMatrix, FloatMatrix, Matrix, ToleranceContext,
                     exact_spectrum, matrices_equal, residual, symmetric_eigendecomposition)


class IdentityViolation(ArithmeticError):
    """A defining identity failed; ``identity`` names it."""

    def __init__(self, identity: str, detail: str = ""):
        super().__init__(f"{identity} fails{': ' + detail if detail else ''}")
        self.identity = identity


@dataclass
class BoseMesnerData:
    graph: Graph
    intersection: IntersectionData
    domain: str
    field: NumberField
    A: list          # distance matrices A_0..A_D
    theta: list      # eigenvalue of A on E_i
    E: list          # primitive idempotents
    m: list          # multiplicities
    q: np.ndarray    # Krein table q[h, i, j]
    orderings: list = field(default_factory=list)
    ordering: tuple = ()   # permutation applied relative to the descending-eigenvalue order
    ctx: ToleranceContext = DEFAULT_TOL

    @property
    def D(self) -> int:
        return len(self.E) - 1

    @property
    def n(self) -> int:
        return self.graph.n

    def krein(self, h: int, i: int, j: int):
        return self.q[h, i, j]

    def identity(self) -> Matrix:
        return ExactMatrix.identity(self.n, self.field) if self.domain == "exact" else FloatMatrix.identity(self.n)

    def ones(self) -> Matrix:
        return sum(self.A[1:], self.A[0])


def lift(mat: Matrix, fld: NumberField) -> Matrix:
    """Re-embed a rational exact matrix into the number field ``fld``."""
    if not isinstance(mat, ExactMatrix) or mat.field == fld:
        return mat
    if not mat.field.is_rational:
        raise ValueError("can only lift rational matrices")
    num = np.zeros((fld.degree,) + mat.shape, dtype=mat.num.dtype)
    num[0] = mat.num[0]
    return ExactMatrix(fld, num, mat.den, _normalized=True)


def is_nonzero(x, scale: float = 1.0) -> bool:
    """Hard nonzero predicate: exact test, or |x| > 1e-8 * scale for floats."""
    if isinstance(x, FieldElement):
        return not x.is_zero()
    return abs(float(x)) > 1e-8 * max(scale, 1e-300)


def _scale(table) -> float:
    vals = [abs(float(v)) for v in np.asarray(table, dtype=object).flat]
    return max(vals) if vals else 1.0


def _verify_algebra(bm: BoseMesnerData):
    ctx = bm.ctx
    eq = lambda a, b: matrices_equal(a, b, ctx)
    n = bm.n
    one = bm.identity()
    jmat = bm.ones()
    if not eq(sum(bm.E[1:], bm.E[0]), one):
        raise IdentityViolation("sum E_i = I")
    for i, j in itertools.product(range(bm.D + 1), repeat=2):
        prod = bm.E[i] @ bm.E[j]
        target = bm.E[i] if i == j else bm.E[i] * 0
        if not eq(prod, target):
            raise IdentityViolation("E_i E_j = delta_ij E_i", f"i={i}, j={j}, residual {residual(prod, target):.3e}")
    recon = sum((bm.E[i] * bm.theta[i] for i in range(1, bm.D + 1)), bm.E[0] * bm.theta[0])
    if not eq(recon, bm.A[1]):
        raise IdentityViolation("A = sum theta_i E_i")
    if not eq(bm.E[0], jmat / n):
        raise IdentityViolation("E_0 = |X|^-1 J")
    if float(bm.theta[0]) != bm.intersection.valency and abs(float(bm.theta[0]) - bm.intersection.valency) > ctx.residual:
        raise IdentityViolation("theta_0 = k")


def _exact_idempotents(a: ExactMatrix, theta: list) -> list[ExactMatrix]:
    n = a.shape[0]
    one = ExactMatrix.identity(n, a.field)
    shifted = [a - one * t for t in theta]
    out = []
    for i, ti in enumerate(theta):
        e = one
        for j, tj in enumerate(theta):
            if j != i:
                e = (e @ shifted[j]) / (ti - tj)
        out.append(e)
    return out


def build_bose_mesner(g: Graph, data: IntersectionData, domain: str = "auto",
                      ctx: ToleranceContext | None = None) -> BoseMesnerData:
    """Distance matrices, spectrum, idempotents and Krein table, all verified.

    ``domain`` is ``"exact"``, ``"float"`` or ``"auto"``; auto prefers exact
    arithmetic and falls back to floats when no exact spectrum is found.
    """
    ctx = ctx or DEFAULT_TOL
    if domain not in ("exact", "float", "auto"):
        raise ValueError(f"unknown domain {domain!r}")
    d = data.diameter
    ints = [(g.distances == i).astype(np.int64) for i in range(d + 1)]
    bm = None
    if domain in ("exact", "auto"):
        a = ExactMatrix.from_ints(ints[1])
        spec = exact_spectrum(a)
        if spec is None:
            if domain == "exact":
                raise IdentityViolation("exact spectrum", "eigenvalues not found in a single number field")
        else:
            fld, theta = spec
            if len(theta) != d + 1:
                raise IdentityViolation("A has D+1 distinct eigenvalues", f"found {len(theta)}")
            A = [lift(ExactMatrix.from_ints(m), fld) for m in ints]
            E = _exact_idempotents(A[1], theta)
            mult = []
            for e in E:
                tr = e.trace()
                if not tr.is_rational() or tr.to_fraction().denominator != 1:
                    raise IdentityViolation("rank E_i = trace E_i", f"trace {tr}")
                mult.append(int(tr.to_fraction()))
            bm = BoseMesnerData(g, data, "exact", fld, A, theta, E, mult, None, ctx=ctx)
    if bm is None:
        A = [FloatMatrix(m) for m in ints]
        parts = symmetric_eigendecomposition(A[1], ctx)
        if len(parts) != d + 1:
            raise IdentityViolation("A has D+1 distinct eigenvalues", f"found {len(parts)}")
        theta = [t for t, _ in parts]
        E = [FloatMatrix(b.projector()) for _, b in parts]
        mult = [b.dim for _, b in parts]
        bm = BoseMesnerData(g, data, "float", QQ, A, theta, E, mult, None, ctx=ctx)
    bm.ordering = tuple(range(d + 1))
    _verify_algebra(bm)
    bm.q = krein_parameters(bm)
    bm.orderings = find_q_polynomial_orderings(bm)
    return bm


def krein_parameters(bm: BoseMesnerData) -> np.ndarray:
    """q[h, i, j] from the expansion |X| (E_i o E_j) = sum_h q^h_ij E_h, residual-checked."""
    n = bm.n
    size = bm.D + 1
    exact = bm.domain == "exact"
    q = np.empty((size, size, size), dtype=object if exact else np.float64)
    for i in range(size):
        for j in range(i, size):
            had = bm.E[i].hadamard(bm.E[j]) * n
            coeffs = []
            for h in range(size):
                c = had.hadamard(bm.E[h]).sum() / bm.m[h]
                coeffs.append(c)
                q[h, i, j] = q[h, j, i] = c
            recon = sum((bm.E[h] * coeffs[h] for h in range(1, size)), bm.E[0] * coeffs[0])
            if not matrices_equal(recon, had, bm.ctx):
                raise IdentityViolation("E_i o E_j = |X|^-1 sum q^h_ij E_h",
                                        f"i={i}, j={j}, residual {residual(recon, had):.3e}")
    if not exact:
        bound = bm.ctx.residual * max(1.0, float(np.max(np.abs(q))))
        if np.any(q < -bound):
            raise IdentityViolation("Krein parameters nonnegative", f"min {q.min():.3e}")
    else:
        for v in q.flat:
            if v.sign() < 0:
                raise IdentityViolation("Krein parameters nonnegative", str(v))
    return q


def check_q_polynomial(q: np.ndarray, ordering: Sequence[int]) -> bool:
    """Both support conditions on the Krein table reindexed by ``ordering``, over all triples."""
    size = q.shape[0]
    s = list(ordering)
    if sorted(s) != list(range(size)) or s[0] != 0:
        return False
    scale = _scale(q)
    for h, i, j in itertools.product(range(size), repeat=3):
        nz = is_nonzero(q[s[h], s[i], s[j]], scale)
        trio = (h, i, j)
        big = max(trio)
        rest = sum(trio) - big
        if big > rest and nz:
            return False
        if big == rest and not nz:
            return False
    return True


def _greedy(q: np.ndarray, e: int, scale: float) -> list[int] | None:
    size = q.shape[0]
    seq = [0, e]
    while len(seq) < size:
        prev = set(seq[-2:])
        cands = [h for h in range(size) if h not in seq and h not in prev
                 and is_nonzero(q[h, e, seq[-1]], scale)]
        if len(cands) != 1:
            return None
        seq.append(cands[0])
    return seq


def find_q_polynomial_orderings(bm_or_table) -> list[tuple]:
    """All Q-polynomial orderings (index 0 fixed), sorted lexicographically."""
    q = bm_or_table.q if isinstance(bm_or_table, BoseMesnerData) else np.asarray(bm_or_table, dtype=object)
    size = q.shape[0]
    if size == 1:
        return [(0,)]
    scale = _scale(q)
    found = set()
    for e in range(1, size):
        seq = _greedy(q, e, scale)
        if seq is not None and check_q_polynomial(q, seq):
            found.add(tuple(seq))
    return sorted(found)


def reorder(bm: BoseMesnerData, ordering: Sequence[int]) -> BoseMesnerData:
    """Relabel the idempotents so that new E_i is old E_{ordering[i]}."""
    s = list(ordering)
    if sorted(s) != list(range(bm.D + 1)) or s[0] != 0:
        raise ValueError(f"{tuple(s)} is not a permutation of 0..{bm.D} fixing 0")
    q = bm.q[np.ix_(s, s, s)]
    return replace(bm, theta=[bm.theta[i] for i in s], E=[bm.E[i] for i in s], m=[bm.m[i] for i in s],
                   q=q, orderings=find_q_polynomial_orderings(q),
                   ordering=tuple(bm.ordering[i] for i in s))


def canonical(bm: BoseMesnerData, ordering: Sequence[int] | None = None) -> BoseMesnerData:
    """Apply ``ordering`` or the lexicographically smallest Q-polynomial ordering."""
    if ordering is None:
        if not bm.orderings:
            raise IdentityViolation("Q-polynomial ordering exists")
        ordering = bm.orderings[0]
    elif not check_q_polynomial(bm.q, ordering):
        raise IdentityViolation("Q-polynomial ordering", f"{tuple(ordering)} fails the support conditions")
    return reorder(bm, ordering)
