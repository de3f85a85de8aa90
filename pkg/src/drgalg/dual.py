"""Dual Bose-Mesner algebra at a base vertex and the triple-product vanishing checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .bose_mesner import BoseMesnerData, IdentityViolation, check_q_polynomial, is_nonzero, _scale
from .graphs import Graph
from .linalg import ExactMatrix, FloatMatrix, Matrix, matrices_equal


@dataclass
class DualData:
    x: int
    Estar: list
    Astar: list
    theta_star: list
    sizes: list          # |G_i(x)|
    cells: list          # vertex lists G_i(x)

    @property
    def D(self) -> int:
        return len(self.Estar) - 1

    @property
    def A_star(self) -> Matrix:
        return self.Astar[1]


def _diag_from_row(e: Matrix, x: int, scale: int) -> Matrix:
    if isinstance(e, ExactMatrix):
        m, n = e.field.degree, e.shape[0]
        num = np.zeros((m, n, n), dtype=e.num.dtype)
        idx = np.arange(n)
        num[:, idx, idx] = e.num[:, x, :]
        return ExactMatrix(e.field, num, e.den) * scale
    return FloatMatrix(np.diag(e.data[x] * scale))


def _indicator(cells: list, n: int, like: Matrix) -> Matrix:
    d = np.zeros((n, n), dtype=np.int64)
    d[cells, cells] = 1
    if isinstance(like, ExactMatrix):
        from .bose_mesner import lift
        return lift(ExactMatrix.from_ints(d), like.field)
    return FloatMatrix(d)


def build_dual(g: Graph, bm: BoseMesnerData, x: int = 0) -> DualData:
    """E_i*, A_i* and theta_i* at base vertex ``x``; ``bm`` must carry a Q-polynomial ordering."""
    if not 0 <= x < g.n:
        raise IndexError(f"vertex {x} out of range for {g.n} vertices")
    if not check_q_polynomial(bm.q, range(bm.D + 1)):
        raise IdentityViolation("Q-polynomial ordering", "reorder the Bose-Mesner data first")
    n, d = g.n, bm.D
    ctx = bm.ctx
    eq = lambda a, b: matrices_equal(a, b, ctx)
    cells = [g.sphere(x, i) for i in range(d + 1)]
    estar = [_indicator(c, n, bm.A[0]) for c in cells]
    astar = [_diag_from_row(e, x, n) for e in bm.E]
    one = bm.identity()

    if not eq(sum(estar[1:], estar[0]), one):
        raise IdentityViolation("sum E_i* = I")
    for i, j in itertools.product(range(d + 1), repeat=2):
        target = estar[i] if i == j else estar[i] * 0
        if not eq(estar[i] @ estar[j], target):
            raise IdentityViolation("E_i* E_j* = delta_ij E_i*", f"i={i}, j={j}")
    if not eq(astar[0], one):
        raise IdentityViolation("A_0* = I")
    if not eq(sum(astar[1:], astar[0]), estar[0] * n):
        raise IdentityViolation("sum A_i* = |X| E_0*")
    for i, j in itertools.product(range(d + 1), repeat=2):
        rhs = sum((astar[h] * bm.q[h, i, j] for h in range(1, d + 1)), astar[0] * bm.q[0, i, j])
        if not eq(astar[i] @ astar[j], rhs):
            raise IdentityViolation("A_i* A_j* = sum q^h_ij A_h*", f"i={i}, j={j}")

    diag = astar[1].diagonal()
    theta_star = []
    for i, c in enumerate(cells):
        vals = {diag[y] for y in c} if isinstance(astar[1], ExactMatrix) else None
        if vals is not None:
            if len(vals) != 1:
                raise IdentityViolation("A* constant on each subconstituent", f"i={i}")
            theta_star.append(next(iter(vals)))
        else:
            arr = np.array([diag[y] for y in c])
            if np.ptp(arr) > ctx.residual * max(1.0, float(np.max(np.abs(arr)))):
                raise IdentityViolation("A* constant on each subconstituent", f"i={i}")
            theta_star.append(float(arr.mean()))
    scale = max(abs(float(t)) for t in theta_star)
    for a, b in itertools.combinations(range(d + 1), 2):
        if not is_nonzero(theta_star[a] - theta_star[b], scale):
            raise IdentityViolation("dual eigenvalues mutually distinct", f"theta*_{a} = theta*_{b}")
    recon = sum((estar[i] * theta_star[i] for i in range(1, d + 1)), estar[0] * theta_star[0])
    if not eq(recon, astar[1]):
        raise IdentityViolation("A* = sum theta_i* E_i*")
    sizes = [len(c) for c in cells]
    if sizes != bm.intersection.k:
        raise IdentityViolation("dim E_i*V = k_i", f"{sizes} vs {bm.intersection.k}")
    return DualData(x, estar, astar, theta_star, sizes, cells)


@dataclass
class TripleProductReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, name: str, idx: tuple, passed: bool):
        self.checked += 1
        if not passed:
            self.violations.append(f"{name} at (h,i,j)={idx}")


def verify_triple_products(g: Graph, bm: BoseMesnerData, dual: DualData) -> TripleProductReport:
    """E_i* A_h E_j* = 0 iff p^h_ij = 0, E_i A_h* E_j = 0 iff q^h_ij = 0, plus the banded specializations."""
    rep = TripleProductReport()
    d = bm.D
    p = bm.intersection.p
    qscale = _scale(bm.q)
    cells = dual.cells
    for h, i, j in itertools.product(range(d + 1), repeat=3):
        block_zero = not np.any(g.distances[np.ix_(cells[i], cells[j])] == h)
        rep.record("E_i* A_h E_j* = 0 iff p^h_ij = 0", (h, i, j), block_zero == (p[h, i, j] == 0))
        prod = bm.E[i] @ dual.Astar[h] @ bm.E[j]
        rep.record("E_i A_h* E_j = 0 iff q^h_ij = 0", (h, i, j),
                   prod.is_zero(bm.ctx) == (not is_nonzero(bm.q[h, i, j], qscale)))
        if h == 1 and abs(i - j) > 1:
            rep.record("E_i* A E_j* = 0 for |i-j| > 1", (1, i, j), block_zero)
            rep.record("E_i A* E_j = 0 for |i-j| > 1", (1, i, j), prod.is_zero(bm.ctx))
        if i == j and h > 2 * i:
            rep.record("E_i* A_h E_i* = 0 for h > 2i", (h, i, i), block_zero)
    return rep
