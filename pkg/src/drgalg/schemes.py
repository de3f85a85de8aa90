"""Association schemes carried by corner algebras restricted to a subconstituent."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graphs import GraphSpec, build_graph, certify_distance_regular
from .linalg import DEFAULT_TOL, ExactMatrix, FloatMatrix, Matrix, ToleranceContext, make_span
from .terwilliger import CornerAlgebra, MatrixAlgebra

FINGERPRINT_DECIMALS = 9


class CellMismatchError(ValueError):
    pass


@dataclass
class RestrictedAlgebra:
    cell: list
    basis: list
    unit: Matrix
    label: str = ""
    ctx: ToleranceContext = DEFAULT_TOL

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return len(self.cell)


@dataclass
class SchemeVerdict:
    is_scheme: bool
    relations: list = field(default_factory=list)   # 0/1 integer arrays, R_0 = identity first
    p: np.ndarray | None = None                      # p[h, i, j]: R_i R_j = sum_h p[h, i, j] R_h
    failing: str = ""
    size: int = 0

    @property
    def class_count(self) -> int:
        """Number of relations, the identity relation included."""
        return len(self.relations)

    @property
    def valencies(self) -> list[int]:
        return [int(r[0].sum()) for r in self.relations]


def _projector_support(p: Matrix) -> list[int] | None:
    arr = p.to_float()
    diag = np.diagonal(arr)
    if np.any(arr - np.diag(diag) != 0) or np.any((diag != 0) & (diag != 1)):
        return None
    return [int(v) for v in np.flatnonzero(diag)]


def restrict_algebra(alg: MatrixAlgebra, cell: Sequence[int], label: str = "") -> RestrictedAlgebra:
    """Compress every basis matrix of ``alg`` to the rows and columns in ``cell``."""
    cell = [int(v) for v in cell]
    basis = [b.submatrix(cell, cell) for b in alg.basis]
    sample = basis[0] if basis else alg.unit.submatrix(cell, cell)
    unit = ExactMatrix.identity(len(cell), sample.field) if isinstance(sample, ExactMatrix) \
        else FloatMatrix.identity(len(cell))
    return RestrictedAlgebra(cell, basis, unit, label or alg.provenance, alg.ctx)


def restrict_corner(c: CornerAlgebra, cell: Sequence[int]) -> RestrictedAlgebra:
    """Restrict E_i* T E_i* to the cell G_i(x); the projector must be the indicator of ``cell``."""
    support = _projector_support(c.projector)
    if support is None or support != sorted(int(v) for v in cell):
        raise CellMismatchError(f"projector {c.label} is not the diagonal indicator of the given cell")
    return restrict_algebra(c.algebra, sorted(int(v) for v in cell), c.label)


def _fingerprints(ra: RestrictedAlgebra) -> np.ndarray:
    """One row per (y, z) pair, one column per basis coordinate."""
    n = ra.size
    cols = []
    for b in ra.basis:
        if isinstance(b, ExactMatrix):
            cols.extend(b.num.reshape(b.num.shape[0], n * n).astype(object))
        else:
            cols.append(np.round(b.data.reshape(n * n), FINGERPRINT_DECIMALS) + 0.0)
    if not cols:
        return np.zeros((n * n, 0))
    return np.stack(cols, axis=1)


def _partition(ra: RestrictedAlgebra) -> list[np.ndarray]:
    n = ra.size
    fp = _fingerprints(ra)
    groups: dict = {}
    for idx, row in enumerate(fp):
        groups.setdefault(tuple(row.tolist()), []).append(idx)
    rels = []
    for members in groups.values():
        r = np.zeros(n * n, dtype=np.int64)
        r[members] = 1
        rels.append(r.reshape(n, n))
    ident = np.eye(n, dtype=np.int64)
    # identity first, then by valency, then by first pair in row-major order
    rels.sort(key=lambda r: (not np.array_equal(r, ident), int(r[0].sum()), int(np.flatnonzero(r)[0])))
    return rels


def _as_domain(arr: np.ndarray, like: Matrix) -> Matrix:
    if isinstance(like, ExactMatrix):
        m = ExactMatrix.from_ints(arr)
        if like.field != m.field:
            from .bose_mesner import lift
            m = lift(m, like.field)
        return m
    return FloatMatrix(arr)


def _p_numbers(rels: list[np.ndarray]) -> tuple[np.ndarray | None, str]:
    m = len(rels)
    p = np.zeros((m, m, m), dtype=np.int64)
    for i, j in itertools.product(range(m), repeat=2):
        prod = rels[i] @ rels[j]
        recon = np.zeros_like(prod)
        for h, r in enumerate(rels):
            vals = np.unique(prod[r == 1])
            if len(vals) != 1:
                return None, f"R_{i} R_{j} not constant on R_{h}"
            p[h, i, j] = vals[0]
            recon += vals[0] * r
        if not np.array_equal(recon, prod):
            return None, f"R_{i} R_{j} not in span of relations"
    if np.any(p < 0):
        return None, "negative p-number"
    return p, ""


def detect_scheme(ra: RestrictedAlgebra) -> SchemeVerdict:
    """Decide whether span(ra.basis) is the Bose-Mesner algebra of a symmetric association scheme."""
    n = ra.size
    if ra.dim == 0:
        return SchemeVerdict(False, failing="empty algebra", size=n)
    rels = _partition(ra)
    if not np.array_equal(rels[0], np.eye(n, dtype=np.int64)):
        return SchemeVerdict(False, rels, failing="no identity relation", size=n)
    if len(rels) != ra.dim:
        return SchemeVerdict(False, rels, failing=f"{len(rels)} relations for an algebra of dimension {ra.dim}",
                             size=n)
    span = make_span(ra.basis[0], ra.ctx)
    for b in ra.basis:
        span.add(b)
    for h, r in enumerate(rels):
        if not span.contains(_as_domain(r, ra.basis[0])):
            return SchemeVerdict(False, rels, failing=f"R_{h} outside the algebra", size=n)
        if not np.array_equal(r, r.T):
            return SchemeVerdict(False, rels, failing=f"R_{h} not symmetric", size=n)
    p, why = _p_numbers(rels)
    if p is None:
        return SchemeVerdict(False, rels, failing=why, size=n)
    return SchemeVerdict(True, rels, p, size=n)


def _normalize(spec: GraphSpec | str) -> GraphSpec:
    """Parse ``spec``, mapping J(N, D) with N < 2D to the isomorphic J(N, N - D)."""
    if isinstance(spec, GraphSpec):
        return spec
    fam, _, rest = spec.partition(":")
    if fam.strip() == "johnson":
        n, d = (int(v) for v in rest.split(","))
        if n < 2 * d:
            return GraphSpec("johnson", (n, n - d))
    return GraphSpec.parse(spec)


def distance_scheme(spec: GraphSpec | str) -> SchemeVerdict:
    """The distance scheme of a named distance-regular graph."""
    g = build_graph(_normalize(spec))
    data = certify_distance_regular(g)
    if not data:
        return SchemeVerdict(False, failing=str(data), size=g.n)
    rels = [(g.distances == i).astype(np.int64) for i in range(data.diameter + 1)]
    return SchemeVerdict(True, rels, np.asarray(data.p, dtype=np.int64), size=g.n)


def same_parameters(a: SchemeVerdict, b: SchemeVerdict) -> bool:
    """Equal p-number tables up to a permutation of the non-identity relations."""
    if not (a.is_scheme and b.is_scheme) or a.size != b.size or a.class_count != b.class_count:
        return False
    m = a.class_count
    va, vb = a.valencies, b.valencies
    if sorted(va) != sorted(vb):
        return False
    for perm in itertools.permutations(range(1, m)):
        s = (0,) + perm
        if any(va[s[i]] != vb[i] for i in range(m)):
            continue
        if np.array_equal(a.p[np.ix_(s, s, s)], b.p):
            return True
    return False


def match_named_scheme(verdict: SchemeVerdict, expected: GraphSpec | str) -> bool:
    """Parameter-level match of a detected scheme against the distance scheme of ``expected``."""
    if not verdict.is_scheme:
        return False
    return same_parameters(verdict, distance_scheme(expected))
