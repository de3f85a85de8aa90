"""Matrix algebras by closure, the Terwilliger algebra T(x), and its corner algebras."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bose_mesner import BoseMesnerData, lift
from .fields import QQ
from .dual import DualData
from .graphs import Graph, IntersectionData
from .linalg import (DEFAULT_TOL, DomainMismatchError, ExactMatrix, FieldSpan, FloatMatrix, FloatSpan,
                     Matrix, ShapeError, ToleranceContext, make_span, matrices_equal, primitive,
                     rational_components, residual)

DEFAULT_CAP = 5000
PAIRWISE_LIMIT = 40


class DimensionCapError(RuntimeError):
    pass


@dataclass
class Certificate:
    kind: str           # "pairwise" or "generator-stable"
    closed: bool
    transpose_closed: bool
    has_unit: bool
    max_residual: float = 0.0

    @property
    def ok(self) -> bool:
        return self.closed and self.transpose_closed and self.has_unit


class MatrixAlgebra:
    """A matrix algebra given by a basis, with a span for membership tests."""

    def __init__(self, basis: list, span, unit: Matrix, provenance: str, ctx: ToleranceContext = DEFAULT_TOL):
        self.basis = basis
        self.span = span
        self.unit = unit
        self.provenance = provenance
        self.ctx = ctx
        self.certificate: Certificate | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.unit.shape[0]

    @property
    def domain(self) -> str:
        return self.unit.domain

    def contains(self, mat: Matrix) -> bool:
        if isinstance(self.span, FloatSpan):
            return self.span.distance(mat) <= self.ctx.residual
        return self.span.contains(_match_field(mat, self.span.field))

    def certify(self, generators: Sequence[Matrix] = (), pairwise: bool | None = None) -> Certificate:
        if pairwise is None:
            pairwise = self.dim <= PAIRWISE_LIMIT or not generators
        worst = 0.0
        closed = True
        if pairwise:
            pairs = itertools.product(self.basis, repeat=2)
            kind = "pairwise"
        else:
            pairs = itertools.product(generators, self.basis)
            kind = "generator-stable"
        for a, b in pairs:
            closed &= self._member(a @ b)
            worst = max(worst, self._dist(a @ b))
        transposed = all(self._member(b.T) for b in self.basis)
        self.certificate = Certificate(kind, closed, transposed, self._member(self.unit), worst)
        return self.certificate

    def _member(self, mat) -> bool:
        return self.contains(mat)

    def _dist(self, mat) -> float:
        return self.span.distance(mat) if isinstance(self.span, FloatSpan) else 0.0

    def __repr__(self):
        return f"MatrixAlgebra(dim={self.dim}, n={self.n}, {self.provenance})"


def _match_field(mat: Matrix, fld):
    if isinstance(mat, ExactMatrix) and mat.field != fld:
        if mat.field.is_rational:
            return lift(mat, fld)
        raise DomainMismatchError("matrix lies in a larger number field than the algebra")
    return mat


def generate_algebra(generators: Sequence[Matrix], unit: Matrix | None = None, cap: int = DEFAULT_CAP,
                     ctx: ToleranceContext | None = None, provenance: str = "generated",
                     certify: bool = True) -> MatrixAlgebra:
    """Closure of span{unit, generators} under left multiplication by the generators.

    A subspace that contains the unit and is stable under left multiplication
    by every generator is exactly the generated algebra, so the result is
    closed; ``certify`` additionally checks products (pairwise when small).
    """
    ctx = ctx or DEFAULT_TOL
    gens = list(generators)
    if not gens and unit is None:
        raise ValueError("need generators or a unit")
    sample = unit if unit is not None else gens[0]
    n = sample.shape[0]
    for g in gens:
        sample._check(g)
        if g.shape != (n, n):
            raise ShapeError("generators must be square of equal size")
    fld = None
    if isinstance(sample, ExactMatrix):
        fields = {g.field for g in gens + ([unit] if unit is not None else [])}
        fld = max(fields, key=lambda f: f.degree)
        gens = [_match_field(g, fld) for g in gens]
    if unit is None:
        unit = ExactMatrix.identity(n, fld) if fld is not None else FloatMatrix.identity(n)
    else:
        unit = _match_field(unit, fld) if fld is not None else unit
    span = FieldSpan(fld, (n, n)) if fld is not None else FloatSpan((n, n), ctx)
    basis: list = []
    queue: deque = deque()

    def push(m):
        m = primitive(m)
        if span.add(m):
            if len(basis) >= cap:
                raise DimensionCapError(f"algebra dimension exceeds cap {cap}; try a smaller graph")
            basis.append(m)
            queue.append(m)

    push(unit)
    for g in gens:
        push(g)
    while queue:
        b = queue.popleft()
        for g in gens:
            push(g @ b)
    alg = MatrixAlgebra(basis, span, unit, provenance, ctx)
    if certify:
        alg.certify(gens)
    return alg


# ---------------------------------------------------------------- T(x)

class TerwilligerAlgebra(MatrixAlgebra):
    """T(x) stored block-wise: T is the direct sum of its blocks E_i* T E_j*."""

    def __init__(self, cells, blocks, spans, generators, n, unit, ctx, provenance):
        self.cells = cells
        self.blocks = blocks
        self.spans = spans
        self.generators = generators
        self._n = n
        basis = []
        for (i, j) in sorted(blocks):
            for b in blocks[i, j]:
                basis.append(b.embed(n, cells[i], cells[j]))
        super().__init__(basis, None, unit, provenance, ctx)

    @property
    def D(self) -> int:
        return len(self.cells) - 1

    def block_dims(self) -> dict:
        return {k: len(v) for k, v in sorted(self.blocks.items()) if v}

    def _block_member(self, i, j, blk) -> bool:
        span = self.spans[i, j]
        if isinstance(span, FloatSpan):
            return span.distance(blk) <= self.ctx.residual
        return span.contains(blk)

    def contains(self, mat: Matrix) -> bool:
        parts = rational_components(mat) if isinstance(mat, ExactMatrix) and not mat.field.is_rational else [mat]
        for part in parts:
            for i, j in itertools.product(range(self.D + 1), repeat=2):
                blk = part.submatrix(self.cells[i], self.cells[j])
                if not self._block_member(i, j, blk):
                    return False
        return True

    def certify(self, generators=(), pairwise=None) -> Certificate:
        d = self.D
        closed = True
        worst = 0.0
        for i, j, l in itertools.product(range(d + 1), repeat=3):
            for a in self.blocks[i, j]:
                for b in self.blocks[j, l]:
                    p = a @ b
                    closed &= self._block_member(i, l, p)
                    if isinstance(self.spans[i, l], FloatSpan):
                        worst = max(worst, self.spans[i, l].distance(p))
        transposed = all(self._block_member(j, i, b.T) for (i, j), bl in self.blocks.items() for b in bl)
        has_unit = all(len(self.blocks[i, i]) > 0 and self._block_member(
            i, i, _identity_like(self.blocks[i, i][0], len(self.cells[i]))) for i in range(d + 1))
        self.certificate = Certificate("pairwise", closed, transposed, has_unit, worst)
        return self.certificate


def _identity_like(sample: Matrix, n: int) -> Matrix:
    if isinstance(sample, ExactMatrix):
        return ExactMatrix.identity(n, sample.field)
    return FloatMatrix.identity(n)


def terwilliger_algebra(g: Graph, bm: BoseMesnerData, dual: DualData, cap: int = DEFAULT_CAP,
                        ctx: ToleranceContext | None = None, certify: bool = True) -> TerwilligerAlgebra:
    """T(x) seeded with {A_h} and {E_i*}, closed block by block.

    Block (a, j) of T is spanned by products G_1 G_2 ... G_k E_j* where each
    G is a block A_h[G_a(x), G_b(x)]; the closure runs one column j at a time.
    """
    ctx = ctx or bm.ctx
    exact = bm.domain == "exact"
    cells = dual.cells
    d = len(cells) - 1
    n = g.n
    mk = (lambda arr: ExactMatrix.from_ints(arr)) if exact else (lambda arr: FloatMatrix(arr))
    gen_blocks: dict = {}
    for a, b in itertools.product(range(d + 1), repeat=2):
        sub = g.distances[np.ix_(cells[a], cells[b])]
        for h in range(1, d + 1):
            mask = (sub == h).astype(np.int64)
            if mask.any():
                gen_blocks.setdefault(b, []).append((a, mk(mask)))
    spans, blocks = {}, {}
    for a, b in itertools.product(range(d + 1), repeat=2):
        shape = (len(cells[a]), len(cells[b]))
        spans[a, b] = FieldSpan(QQ, shape) if exact else FloatSpan(shape, ctx)
        blocks[a, b] = []
    total = 0
    queue: deque = deque()
    for j in range(d + 1):
        unit = _identity_like(mk(np.zeros((1, 1), dtype=np.int64)), len(cells[j]))
        spans[j, j].add(unit)
        blocks[j, j].append(unit)
        queue.append((j, j, unit))
        total += 1
    while queue:
        b, j, mat = queue.popleft()
        for a, gblk in gen_blocks.get(b, []):
            prod = primitive(gblk @ mat)
            if spans[a, j].add(prod):
                blocks[a, j].append(prod)
                queue.append((a, j, prod))
                total += 1
                if total > cap:
                    raise DimensionCapError(f"dim T exceeds cap {cap}; try a smaller graph")
    dist_ind = [(g.distances == h).astype(np.int64) for h in range(1, d + 1)]
    star_ind = [np.diag((g.distances[dual.x] == i).astype(np.int64)) for i in range(d + 1)]
    generators = [mk(m) for m in dist_ind + star_ind]
    unit = ExactMatrix.identity(n) if exact else FloatMatrix.identity(n)
    t = TerwilligerAlgebra(cells, blocks, spans, generators, n, unit, ctx, "T(x) from {A_h} and {E_i*}")
    if certify:
        t.certify()
    return t


# ---------------------------------------------------------------- corners

@dataclass
class CornerAlgebra:
    projector: Matrix
    algebra: MatrixAlgebra
    label: str = "P"

    @property
    def basis(self) -> list:
        return self.algebra.basis

    @property
    def dim(self) -> int:
        return self.algebra.dim


def _is_idempotent(p: Matrix, ctx) -> bool:
    return p.shape[0] == p.shape[1] and matrices_equal(p @ p, p, ctx)


def corner(t: MatrixAlgebra, p: Matrix, label: str = "P") -> CornerAlgebra:
    """The corner algebra P t P with unit P."""
    ctx = t.ctx
    if not _is_idempotent(p, ctx):
        raise ValueError(f"{label} is not idempotent")
    if not t.contains(p):
        raise ValueError(f"{label} does not lie in the algebra")
    span = make_span(p, ctx)
    if isinstance(span, FieldSpan):
        fld = span.field
    basis = []
    cell = _cell_of(t, p)
    if cell is not None:
        i = cell
        for blk in t.blocks[i, i]:
            m = blk.embed(t.n, t.cells[i], t.cells[i])
            if isinstance(span, FieldSpan):
                m = _match_field(m, fld)
            if span.add(m):
                basis.append(m)
    else:
        for b in t.basis:
            if isinstance(span, FieldSpan):
                b = _match_field(b, fld)
            m = primitive(p @ b @ p)
            if span.add(m):
                basis.append(m)
    alg = MatrixAlgebra(basis, span, p, f"corner {label}", ctx)
    return CornerAlgebra(p, alg, label)


def _cell_of(t: MatrixAlgebra, p: Matrix):
    """Index i when ``p`` is E_i* of a block-stored T, else None."""
    if not isinstance(t, TerwilligerAlgebra):
        return None
    diag = np.diagonal(p.to_float())
    off = p.to_float() - np.diag(diag)
    if np.any(off != 0):
        return None
    support = sorted(int(v) for v in np.flatnonzero(diag))
    for i, c in enumerate(t.cells):
        if support == sorted(c) and np.all(diag[c] == 1):
            return i
    return None


def commutativity_residual(alg) -> float:
    basis = alg.basis
    worst = 0.0
    for a, b in itertools.combinations(basis, 2):
        c = a @ b - b @ a
        worst = max(worst, 0.0 if (isinstance(c, ExactMatrix) and c.is_zero()) else c.max_abs())
    return worst


def check_commutative(alg) -> bool:
    algebra = alg.algebra if isinstance(alg, CornerAlgebra) else alg
    return commutativity_residual(algebra) <= (0.0 if algebra.domain == "exact" else algebra.ctx.residual)


def check_all_symmetric(alg) -> bool:
    algebra = alg.algebra if isinstance(alg, CornerAlgebra) else alg
    return all(b.is_symmetric(algebra.ctx) for b in algebra.basis)


# ---------------------------------------------------------------- checks

@dataclass
class CheckResult:
    name: str
    statement: str
    passed: bool
    residual: float = 0.0
    detail: dict = field(default_factory=dict)


def _eq_check(name, statement, lhs, rhs, ctx) -> CheckResult:
    res = residual(lhs, rhs) if lhs.domain == rhs.domain else float("inf")
    ok = matrices_equal(lhs, rhs, ctx)
    return CheckResult(name, statement, ok, 0.0 if ok and lhs.domain == "exact" else res)


def _corner_pieces(g: Graph, bm: BoseMesnerData, dual: DualData):
    return bm.D, dual.Estar, bm.E, bm.A


def verify_corner_generation(t: MatrixAlgebra, bm: BoseMesnerData, dual: DualData) -> list[CheckResult]:
    """dim P T P against the algebra generated by the named elements, for P in {E_1*, E_1, E_D*, E_D}."""
    g = bm.graph
    d, es, e, a = _corner_pieces(g, bm, dual)
    ctx = t.ctx
    jmat = bm.ones()
    cases = [
        ("E1*", es[1], [es[1] @ jmat @ es[1], es[1] @ a[1] @ es[1]], "E1* T E1* = <E1* J E1*, E1* A E1*>"),
        ("E1", e[1], [e[1] @ es[0] @ e[1], e[1] @ dual.Astar[1] @ e[1]], "E1 T E1 = <E1 E0* E1, E1 A* E1>"),
        ("ED*", es[d], [es[d] @ a[h] @ es[d] for h in range(1, d + 1)], "ED* T ED* = <ED* A_h ED* : h >= 1>"),
        ("ED", e[d], [e[d] @ dual.Astar[h] @ e[d] for h in range(1, d + 1)], "ED T ED = <ED A_h* ED : h >= 1>"),
    ]
    out = []
    for label, p, gens, statement in cases:
        c = corner(t, p, label)
        gen = generate_algebra(gens, unit=p, ctx=ctx, provenance=f"generated in {label}")
        inside = all(c.algebra.contains(b) for b in gen.basis)
        out.append(CheckResult(f"corner-generation-{label}", statement, inside and gen.dim == c.dim,
                               detail={"corner_dim": c.dim, "generated_dim": gen.dim}))
    # spanning statements for E1* M E1* and E1 M* E1
    for label, p, pieces, statement in [
        ("E1*", es[1], [es[1], es[1] @ jmat @ es[1], es[1] @ a[1] @ es[1]],
         "E1* M E1* = span{E1*, E1* J E1*, E1* A E1*}"),
        ("E1", e[1], [e[1], e[1] @ es[0] @ e[1], e[1] @ dual.Astar[1] @ e[1]],
         "E1 M* E1 = span{E1, E1 E0* E1, E1 A* E1}"),
    ]:
        span = make_span(p, ctx)
        for m in pieces:
            span.add(m)
        full = [p @ m @ p for m in (a if label == "E1*" else dual.Astar)]
        ok = all(span.contains(m) if not isinstance(span, FloatSpan) else span.distance(m) <= ctx.residual
                 for m in full)
        out.append(CheckResult(f"corner-span-{label}", statement, ok, detail={"span_dim": span.rank}))
    return out


def verify_identities(t: MatrixAlgebra, bm: BoseMesnerData, dual: DualData,
                      data: IntersectionData) -> list[CheckResult]:
    """Reduction rules, ideal identities and the subconstituent vanishing relations, as matrix equations."""
    g = bm.graph
    ctx = t.ctx
    n, k = g.n, data.valency
    d, es, e, a = _corner_pieces(g, bm, dual)
    p11 = [int(data.p[h, 1, 1]) for h in range(d + 1)]
    q11 = [bm.q[h, 1, 1] for h in range(d + 1)]
    a1, a1s, m1 = p11[1], q11[1], bm.m[1]
    jmat = bm.ones()
    ast = dual.Astar
    zero = e[0] * 0

    def lin(coeffs, mats):
        return sum((m * c for c, m in zip(coeffs[1:], mats[1:])), mats[0] * coeffs[0])

    checks = []
    add = lambda name, st, lhs, rhs: checks.append(_eq_check(name, st, lhs, rhs, ctx))
    add("reduction-i", "E0 E1* E0 = |X|^-1 k E0", e[0] @ es[1] @ e[0], e[0] * Fraction(k, n))
    add("reduction-ii", "E0 E1* A = sum_h p^h_11 E0 E_h*", e[0] @ es[1] @ a[1], lin(p11, [e[0] @ x for x in es]))
    add("reduction-iii", "A E1* E0 = sum_h p^h_11 E_h* E0", a[1] @ es[1] @ e[0], lin(p11, [x @ e[0] for x in es]))
    add("dual-reduction-i", "E0* E1 E0* = |X|^-1 m1 E0*", es[0] @ e[1] @ es[0], es[0] * Fraction(m1, n))
    add("dual-reduction-ii", "E0* E1 A* = sum_h q^h_11 E0* E_h", es[0] @ e[1] @ ast[1], lin(q11, [es[0] @ x for x in e]))
    add("dual-reduction-iii", "A* E1 E0* = sum_h q^h_11 E_h E0*", ast[1] @ e[1] @ es[0], lin(q11, [x @ es[0] for x in e]))

    ej = es[1] @ jmat @ es[1]
    ea = es[1] @ a[1] @ es[1]
    add("ideal-square", "(E1* J E1*)^2 = k E1* J E1*", ej @ ej, ej * k)
    add("ideal-left", "(E1* J E1*)(E1* A E1*) = a1 E1* J E1*", ej @ ea, ej * a1)
    add("ideal-right", "(E1* A E1*)(E1* J E1*) = a1 E1* J E1*", ea @ ej, ej * a1)
    fe = e[1] @ es[0] @ e[1]
    fa = e[1] @ ast[1] @ e[1]
    add("dual-ideal-square", "(E1 E0* E1)^2 = m1 |X|^-1 E1 E0* E1", fe @ fe, fe * Fraction(m1, n))
    add("dual-ideal-left", "(E1 E0* E1)(E1 A* E1) = a1* E1 E0* E1", fe @ fa, fe * a1s)
    add("dual-ideal-right", "(E1 A* E1)(E1 E0* E1) = a1* E1 E0* E1", fa @ fe, fe * a1s)

    for h in range(3, d + 1):
        add(f"vanishing-{h}", f"E1* A_{h} E1* = 0", es[1] @ a[h] @ es[1], zero)
        add(f"dual-vanishing-{h}", f"E1 A_{h}* E1 = 0", e[1] @ ast[h] @ e[1], zero)
    a2 = a[2] if d >= 2 else zero
    ast2 = ast[2] if d >= 2 else zero
    add("ones-split", "E1* J E1* = E1* + E1* A E1* + E1* A2 E1*", ej, es[1] + ea + es[1] @ a2 @ es[1])
    add("dual-ones-split", "|X| E1 E0* E1 = E1 + E1 A* E1 + E1 A2* E1", fe * n, e[1] + fa + e[1] @ ast2 @ e[1])

    # ideal statements: the span of E1* J E1* (resp. E1 E0* E1) absorbs the corner
    for name, p, gen_el, st in [("ideal-E1*", es[1], ej, "E1* J E1* spans a two-sided ideal of E1* T E1*"),
                                ("ideal-E1", e[1], fe, "E1 E0* E1 spans a two-sided ideal of E1 T E1")]:
        c = corner(t, p, name)
        span = make_span(gen_el, ctx)
        span.add(gen_el)
        member = (lambda m: span.contains(m)) if not isinstance(span, FloatSpan) else (
            lambda m: span.distance(m) <= ctx.residual)
        ok = all(member(b @ gen_el) and member(gen_el @ b) for b in c.basis)
        checks.append(CheckResult(name, st, ok))
    return checks


def verify_local_symmetry(bm: BoseMesnerData, dual: DualData) -> CheckResult:
    """Every E_i* A_h E_i* and every E_i A_h* E_i is symmetric (hence so are their spans)."""
    d, es, e, a = _corner_pieces(bm.graph, bm, dual)
    ok = all((es[i] @ a[h] @ es[i]).is_symmetric(bm.ctx) and (e[i] @ dual.Astar[h] @ e[i]).is_symmetric(bm.ctx)
             for i in range(d + 1) for h in range(d + 1))
    return CheckResult("local-symmetry", "E_i* M E_i* and E_i M* E_i consist of symmetric matrices", ok)
