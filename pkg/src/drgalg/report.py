"""Pipeline orchestration: per-vertex algebraic checks, JSON reports and text scoreboards."""

from __future__ import annotations

import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .bose_mesner import (BoseMesnerData, IdentityViolation, build_bose_mesner, canonical,
                          check_q_polynomial, lift)
from .dual import DualData, build_dual, verify_triple_products
from .fields import FieldElement
from .graphs import Graph, GraphSpec, IntersectionData, build_graph, certify_distance_regular
from .linalg import DEFAULT_TOL, ExactMatrix, FloatMatrix, ToleranceContext, matrices_equal, residual
from .schemes import detect_scheme, match_named_scheme, restrict_algebra, restrict_corner
from .terwilliger import (CheckResult, MatrixAlgebra, check_all_symmetric, commutativity_residual, corner,
                          terwilliger_algebra, verify_corner_generation, verify_identities,
                          verify_local_symmetry)
from .tmodules import (ProfileError, commutant, corner_spectrum_bridge, decompose_standard_module,
                       local_criterion, modules_isomorphic, wedderburn_report)

SCHEMA_VERSION = "1"
STAGES = ("bm", "dual", "talg", "tmod", "scheme")
OUTPUT_ENV = "DRGALG_OUTPUT_DIR"
TIMING_KEYS = ("timings",)


@dataclass
class RunConfig:
    spec: str
    vertex: int | str = 0            # vertex index or "all"
    ordering: tuple | None = None
    domain: str = "auto"
    tol: ToleranceContext = DEFAULT_TOL
    seed: int = 0
    output: str | None = None
    checks: tuple = STAGES
    cells: tuple = ("first", "last")
    workers: int = 1

    def __post_init__(self):
        GraphSpec.parse(self.spec)
        if self.domain not in ("auto", "exact", "float"):
            raise ValueError(f"unknown domain {self.domain!r}")
        bad = set(self.checks) - set(STAGES)
        if bad:
            raise ValueError(f"unknown check stage(s) {sorted(bad)}; expected a subset of {STAGES}")
        if not (self.vertex == "all" or (isinstance(self.vertex, int) and self.vertex >= 0)):
            raise ValueError(f"vertex must be a nonnegative index or 'all', got {self.vertex!r}")

    def describe(self) -> dict:
        return {"spec": self.spec, "vertex": self.vertex, "ordering": list(self.ordering) if self.ordering else None,
                "domain": self.domain, "tol": asdict(self.tol), "seed": self.seed,
                "checks": [s for s in STAGES if s in self.checks], "cells": list(self.cells)}


@dataclass
class Report:
    config: dict
    graph: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)        # graph-level checks
    vertices: list = field(default_factory=list)      # per-vertex {"vertex", "checks", "metrics"}
    timings: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def scoreboard(self) -> dict:
        """Each check key once; passes iff it passes everywhere it was evaluated."""
        board: dict = {}
        for key, chk in self.checks.items():
            board[key] = {"passed": chk["passed"], "statement": chk["statement"], "failed_at": []}
        for vrep in self.vertices:
            for key, chk in vrep["checks"].items():
                entry = board.setdefault(key, {"passed": True, "statement": chk["statement"], "failed_at": []})
                if not chk["passed"]:
                    entry["passed"] = False
                    entry["failed_at"].append(vrep["vertex"])
        return board

    @property
    def passed(self) -> bool:
        return all(v["passed"] for v in self.scoreboard().values())

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "config": self.config, "graph": self.graph,
                "checks": self.checks, "vertices": self.vertices, "status": "pass" if self.passed else "fail",
                "timings": self.timings}


# ---------------------------------------------------------------- serialization

def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, FieldElement):
        return str(x.to_fraction()) if x.is_rational() else str(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if not np.isfinite(v):
            return str(v)
        return float(f"{v:.12g}")
    return x


def dumps(report: Report) -> str:
    return json.dumps(_plain(report.to_dict()), indent=2, sort_keys=True)


def emit_json(report: Report, path: str | os.PathLike) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(report) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
    return path


def load_golden(path: str | os.PathLike) -> Report:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise OSError(f"cannot read report from {path}: {exc}") from exc
    return Report(config=raw["config"], graph=raw["graph"], checks=raw["checks"], vertices=raw["vertices"],
                  timings=raw.get("timings", {}), schema_version=raw["schema_version"])


def comparable(report: Report | dict) -> dict:
    """Plain JSON view with timing fields removed."""
    d = report.to_dict() if isinstance(report, Report) else dict(report)
    d = json.loads(json.dumps(_plain(d), sort_keys=True))
    for key in TIMING_KEYS:
        d.pop(key, None)
    return d


def default_output(spec: str) -> Path | None:
    base = os.environ.get(OUTPUT_ENV)
    if not base:
        return None
    return Path(base) / (spec.replace(":", "_").replace(",", "-") + ".json")


# ---------------------------------------------------------------- checks

def _chk(stage: str, name: str, statement: str, passed: bool, residual_: float = 0.0, detail=None) -> tuple:
    return name, {"stage": stage, "statement": statement, "passed": bool(passed),
                  "residual": float(residual_), "detail": detail or {}}


def _from_result(stage: str, res: CheckResult) -> tuple:
    return _chk(stage, res.name, res.statement, res.passed, res.residual, res.detail)


def _eq(stage, name, statement, lhs, rhs, ctx) -> tuple:
    ok = matrices_equal(lhs, rhs, ctx)
    return _chk(stage, name, statement, ok, 0.0 if ok and lhs.domain == "exact" else residual(lhs, rhs))


def _lin(coeffs, mats):
    return sum((m * c for c, m in zip(coeffs[1:], mats[1:])), mats[0] * coeffs[0])


def bose_mesner_checks(bm: BoseMesnerData) -> dict:
    ctx = bm.ctx
    d = bm.D
    p = bm.intersection.p
    out = []
    one = bm.identity()
    jmat = _all_ones(bm)
    out.append(_eq("bm", "bm-sum-A", "sum_i A_i = J", bm.ones(), jmat, ctx))
    worst, ok = 0.0, True
    for i, j in itertools.product(range(d + 1), repeat=2):
        lhs, rhs = bm.A[i] @ bm.A[j], _lin([int(p[h, i, j]) for h in range(d + 1)], bm.A)
        ok &= matrices_equal(lhs, rhs, ctx)
        worst = max(worst, residual(lhs, rhs))
    out.append(_chk("bm", "bm-A-products", "A_i A_j = sum_h p^h_ij A_h", ok, worst))
    out.append(_eq("bm", "bm-sum-E", "sum_i E_i = I", sum(bm.E[1:], bm.E[0]), one, ctx))
    worst, ok = 0.0, True
    for i, j in itertools.product(range(d + 1), repeat=2):
        lhs, rhs = bm.E[i] @ bm.E[j], (bm.E[i] if i == j else bm.E[i] * 0)
        ok &= matrices_equal(lhs, rhs, ctx)
        worst = max(worst, residual(lhs, rhs))
    out.append(_chk("bm", "bm-E-idempotents", "E_i E_j = delta_ij E_i", ok, worst))
    out.append(_eq("bm", "bm-E0", "E_0 = |X|^-1 J", bm.E[0], jmat / bm.n, ctx))
    out.append(_eq("bm", "bm-A-spectral", "A = sum_i theta_i E_i", _lin(bm.theta, bm.E), bm.A[1], ctx))
    worst, ok = 0.0, True
    for i, j in itertools.product(range(d + 1), repeat=2):
        lhs = bm.E[i].hadamard(bm.E[j]) * bm.n
        rhs = _lin([bm.q[h, i, j] for h in range(d + 1)], bm.E)
        ok &= matrices_equal(lhs, rhs, ctx)
        worst = max(worst, residual(lhs, rhs))
    out.append(_chk("bm", "bm-krein-expansion", "|X| E_i o E_j = sum_h q^h_ij E_h", ok, worst))
    nonneg = all(float(v) >= -ctx.residual for v in np.asarray(bm.q, dtype=object).flat)
    out.append(_chk("bm", "bm-krein-nonnegative", "q^h_ij >= 0", nonneg))
    out.append(_chk("bm", "q-polynomial", "the ordering E_0..E_D satisfies both Krein support conditions",
                    check_q_polynomial(bm.q, range(d + 1)),
                    detail={"orderings_found": [list(o) for o in bm.orderings]}))
    return dict(out)


def _all_ones(bm: BoseMesnerData):
    ones = np.ones((bm.n, bm.n), dtype=np.int64)
    if bm.domain == "exact":
        return lift(ExactMatrix.from_ints(ones), bm.field)
    return FloatMatrix(ones)


def dual_checks(g: Graph, bm: BoseMesnerData, dual: DualData) -> dict:
    ctx = bm.ctx
    d = bm.D
    es, ast = dual.Estar, dual.Astar
    out = [
        _eq("dual", "dual-sum-Estar", "sum_i E_i* = I", sum(es[1:], es[0]), bm.identity(), ctx),
        _eq("dual", "dual-sum-Astar", "sum_i A_i* = |X| E_0*", sum(ast[1:], ast[0]), es[0] * bm.n, ctx),
    ]
    ok = all(matrices_equal(es[i] @ es[j], es[i] if i == j else es[i] * 0, ctx)
             for i, j in itertools.product(range(d + 1), repeat=2))
    out.append(_chk("dual", "dual-Estar-idempotents", "E_i* E_j* = delta_ij E_i*", ok))
    worst, ok = 0.0, True
    for i, j in itertools.product(range(d + 1), repeat=2):
        lhs, rhs = ast[i] @ ast[j], _lin([bm.q[h, i, j] for h in range(d + 1)], ast)
        ok &= matrices_equal(lhs, rhs, ctx)
        worst = max(worst, residual(lhs, rhs))
    out.append(_chk("dual", "dual-Astar-products", "A_i* A_j* = sum_h q^h_ij A_h*", ok, worst))
    trip = verify_triple_products(g, bm, dual)
    out.append(_chk("dual", "triple-products",
                    "E_i* A_h E_j* = 0 iff p^h_ij = 0 and E_i A_h* E_j = 0 iff q^h_ij = 0",
                    trip.ok, detail={"checked": trip.checked, "violations": trip.violations[:10]}))
    out.append(_from_result("dual", verify_local_symmetry(bm, dual)))
    return dict(out)


CORNERS = ("E1*", "E1", "ED*", "ED")


def _corner_projectors(bm: BoseMesnerData, dual: DualData) -> dict:
    d = bm.D
    return {"E1*": dual.Estar[1], "E1": bm.E[1], "ED*": dual.Estar[d], "ED": bm.E[d]}


def talg_checks(t: MatrixAlgebra, bm: BoseMesnerData, dual: DualData) -> tuple[dict, dict]:
    cert = t.certificate or t.certify()
    out = [_chk("talg", "T-closure", "span of the computed basis is closed under products and transposes "
                "and contains I", cert.ok, cert.max_residual, detail={"kind": cert.kind})]
    metrics = {"dim_T": t.dim, "block_dims": {f"{i},{j}": v for (i, j), v in t.block_dims().items()}}
    corner_dims = {}
    tol = 0.0 if bm.domain == "exact" else bm.ctx.residual
    for label, p in _corner_projectors(bm, dual).items():
        c = corner(t, p, label)
        corner_dims[label] = c.dim
        res = commutativity_residual(c.algebra)
        out.append(_chk("talg", f"corner-commutative-{label}", f"{label} T {label} is commutative", res <= tol, res))
        out.append(_chk("talg", f"corner-symmetric-{label}", f"every element of {label} T {label} is symmetric",
                        check_all_symmetric(c)))
    metrics["corner_dims"] = corner_dims
    for res in verify_corner_generation(t, bm, dual):
        out.append(_from_result("talg", res))
    for res in verify_identities(t, bm, dual, bm.intersection):
        out.append(_from_result("talg", res))
    return dict(out), metrics


def _shape_law_failures(m) -> list[str]:
    bad = []
    sh, d = m.shape, m.d
    if sh != sh[::-1]:
        bad.append("rho_i = rho_(d-i)")
    if any(sh[i - 1] > sh[i] for i in range(1, d // 2 + 1)):
        bad.append("rho unimodal")
    if tuple(m.dims[m.s:m.s + d + 1]) != tuple(m.star_dims[m.r:m.r + d + 1]):
        bad.append("dim E_(r+i)* W = dim E_(s+i) W")
    if m.d != m.dual_d:
        bad.append("diameter = dual diameter")
    return bad


def _iso_agreement(dec, t) -> dict:
    agree = total = 0
    mismatches = []
    for (a, ma), (b, mb) in itertools.combinations(enumerate(dec.modules), 2):
        pred = local_criterion(ma, mb)
        if pred is None:
            continue
        total += 1
        iso = dec.classes[a] == dec.classes[b]
        if iso == pred and (not iso or modules_isomorphic(ma, mb, t)):
            agree += 1
        else:
            mismatches.append([a, b])
    return {"compared": total, "agree": agree, "mismatches": mismatches[:10]}


def _snap(v: float | None) -> float | None:
    """Local eigenvalues rounded to 10 decimals so float noise does not depend on the seed."""
    return None if v is None else round(float(v), 10) + 0.0


def tmod_checks(t: MatrixAlgebra, bm: BoseMesnerData, dual: DualData, seed: int) -> tuple[dict, dict]:
    ctx = bm.ctx
    comm = commutant(t, ctx, seed)
    try:
        dec = decompose_standard_module(t, dual, bm, comm, ctx, seed)
    except ProfileError as exc:
        return dict([_chk("tmod", "module-profiles", "every irreducible module satisfies the shape laws",
                          False, detail={"error": str(exc)})]), {"dim_commutant": comm.dim}
    mods = dec.modules
    out = []
    sharp = [i for i, m in enumerate(mods) if m.shape[0] != 1]
    out.append(_chk("tmod", "sharpness", "rho_0 = dim E_r* W = 1 for every irreducible W", not sharp,
                    detail={"failing_modules": sharp}))
    laws = {i: f for i, m in enumerate(mods) if (f := _shape_law_failures(m))}
    out.append(_chk("tmod", "shape-laws", "rho_i = rho_(d-i), rho unimodal, dim E_(r+i)* W = dim E_(s+i) W, "
                    "d = d*", not laws, detail={"failing_modules": {str(k): v for k, v in laws.items()}}))
    ends = [i for i, m in enumerate(mods) if m.end_dim != 1]
    out.append(_chk("tmod", "end-scalar", "End_T(W) is one-dimensional for every irreducible W", not ends,
                    detail={"failing_modules": ends}))
    iso = _iso_agreement(dec, t)
    out.append(_chk("tmod", "isomorphism-criteria",
                    "intertwiner isomorphism agrees with the mu (r = 1) and phi (r + d = D) criteria",
                    iso["agree"] == iso["compared"], detail=iso))
    w = wedderburn_report(dec, t)
    out.append(_chk("tmod", "wedderburn-dimension", "sum n_i^2 = dim T", w.dimension_ok,
                    detail={"sum_squares": w.sum_squares, "dim_T": w.dim_T}))
    out.append(_chk("tmod", "wedderburn-commutant", "sum mult_i^2 = dim of the commutant", w.commutant_ok,
                    detail={"sum_mult_squares": w.sum_mult_squares, "dim_commutant": w.dim_commutant}))
    out.append(_chk("tmod", "primary-module", "the primary module occurs once and has dimension D + 1",
                    w.primary_ok, detail={"multiplicity": w.primary_multiplicity, "dim": w.primary_dim}))
    failed = sorted(k for k, v in dec.exact_checks.items() if v == "failed")
    out.append(_chk("tmod", "exact-cross-check", "rationalized isotypic projectors reproduce the float ranks",
                    not failed, detail={"classes": {str(k): v for k, v in sorted(dec.exact_checks.items())}}))
    nclass, neig = corner_spectrum_bridge(dec, dual, bm)
    out.append(_chk("tmod", "corner-spectrum-bridge",
                    "classes with endpoint 1 = distinct eigenvalues of E1* A E1* off the primary vector",
                    nclass == neig, detail={"classes": nclass, "eigenvalues": neig}))
    reps = dec.representatives()
    table = [{"class": c, "r": m.r, "s": m.s, "d": m.d, "shape": list(m.shape), "dim": m.dim,
              "mult": dec.multiplicities[c], "mu": _snap(m.mu), "phi": [_snap(v) for v in m.phi] if m.phi is not None else None}
             for c, m in enumerate(reps)]
    metrics = {"dim_commutant": comm.dim, "commutant_exact": comm.info.exact_basis,
               "modules": len(mods), "classes": dec.class_count, "multiplicities": dec.multiplicities,
               "summands": dec.summands, "draws": dec.draws, "module_table": table,
               "profiles": sorted([[m.r, m.s, m.d, list(m.shape)] for m in mods])}
    return dict(out), metrics


def named_last_scheme(spec: GraphSpec) -> str | None:
    """Graph whose distance scheme the last subconstituent carries, when it is a named family here."""
    if spec.family == "hamming":
        d, n = spec.params
        return f"hamming:{d},{n - 1}" if n - 1 >= 2 else None
    if spec.family == "johnson":
        n, d = spec.params
        return f"johnson:{n - d},{d}" if min(d, n - 2 * d) >= 1 else None
    return None


def _scheme_summary(v) -> dict:
    return {"is_scheme": v.is_scheme, "class_count": v.class_count, "size": v.size,
            "valencies": v.valencies, "failing": v.failing,
            "p": v.p.tolist() if v.p is not None else None}


def scheme_checks(g: Graph, t: MatrixAlgebra, bm: BoseMesnerData, dual: DualData, cells: tuple) -> tuple[dict, dict]:
    out, metrics = [], {}
    d = bm.D
    which = {"first": 1, "last": d}
    for name in cells:
        i = which[name]
        ra = restrict_corner(corner(t, dual.Estar[i], f"E{i}*"), dual.cells[i])
        v = detect_scheme(ra)
        metrics[name] = _scheme_summary(v)
        out.append(_chk("scheme", f"scheme-{name}", f"E{i}* T E{i}* restricted to G_{i}(x) is the Bose-Mesner "
                        "algebra of a symmetric association scheme", v.is_scheme, detail={"failing": v.failing}))
        if name == "last" and g.spec is not None:
            target = named_last_scheme(g.spec)
            if target is not None:
                ok = match_named_scheme(v, target)
                metrics[name]["named_match"] = {"expected": target, "matched": ok}
                out.append(_chk("scheme", "scheme-last-named", f"last subconstituent carries the scheme of {target}",
                                ok))
    full = detect_scheme(restrict_algebra(MatrixAlgebra(bm.A, None, bm.identity(), "M"), range(g.n)))
    recovered = full.is_scheme and sorted(r.tobytes() for r in full.relations) == sorted(
        (g.distances == h).astype(np.int64).tobytes() for h in range(d + 1))
    out.append(_chk("scheme", "scheme-self-test", "detection on M over X recovers the distance relations", recovered))
    return dict(out), metrics


# ---------------------------------------------------------------- pipeline

@dataclass
class GraphContext:
    graph: Graph
    data: IntersectionData
    bm: BoseMesnerData


def prepare(config: RunConfig) -> GraphContext:
    g = build_graph(config.spec)
    data = certify_distance_regular(g)
    if not data:
        raise IdentityViolation("distance-regularity", str(data))
    bm = build_bose_mesner(g, data, config.domain, config.tol)
    bm = canonical(bm, config.ordering)
    return GraphContext(g, data, bm)


def vertex_report(gc: GraphContext, x: int, config: RunConfig) -> dict:
    g, bm = gc.graph, gc.bm
    checks: dict = {}
    metrics: dict = {}
    timings: dict = {}
    stages = set(config.checks)
    stage = "dual"
    try:
        t0 = time.perf_counter()
        dual = build_dual(g, bm, x)
        if "dual" in stages:
            checks.update(dual_checks(g, bm, dual))
        metrics["subconstituent_sizes"] = dual.sizes
        metrics["theta_star"] = dual.theta_star
        timings["dual"] = time.perf_counter() - t0
        if stages & {"talg", "tmod", "scheme"}:
            stage = "talg"
            t0 = time.perf_counter()
            t = terwilliger_algebra(g, bm, dual, ctx=config.tol)
            metrics["dim_T"] = t.dim
            if "talg" in stages:
                c, m = talg_checks(t, bm, dual)
                checks.update(c)
                metrics.update(m)
            timings["talg"] = time.perf_counter() - t0
            if "tmod" in stages:
                stage = "tmod"
                t0 = time.perf_counter()
                c, m = tmod_checks(t, bm, dual, config.seed)
                checks.update(c)
                metrics["tmod"] = m
                timings["tmod"] = time.perf_counter() - t0
            if "scheme" in stages:
                stage = "scheme"
                t0 = time.perf_counter()
                c, m = scheme_checks(g, t, bm, dual, config.cells)
                checks.update(c)
                metrics["scheme"] = m
                timings["scheme"] = time.perf_counter() - t0
    except IdentityViolation as exc:
        checks.update([_chk(stage, f"{stage}-stage", exc.identity, False, detail={"error": str(exc)})])
    return {"vertex": x, "checks": checks, "metrics": metrics, "timings": timings}


def _worker(args) -> dict:
    config, x = args
    return vertex_report(prepare(config), x, config)


def run(config: RunConfig) -> Report:
    """Run the enabled stages for every selected base vertex."""
    report = Report(config=config.describe())
    t0 = time.perf_counter()
    try:
        gc = prepare(config)
    except IdentityViolation as exc:
        report.checks.update([_chk("bm", "bm-stage", exc.identity, False, detail={"error": str(exc)})])
        return report
    g, bm = gc.graph, gc.bm
    report.timings["prepare"] = time.perf_counter() - t0
    b, c = gc.data.intersection_array()
    report.graph = {"name": g.name, "n": g.n, "diameter": bm.D, "intersection_array": [b, c],
                    "domain": bm.domain, "field": bm.field.describe(), "eigenvalues": bm.theta,
                    "multiplicities": bm.m, "ordering": list(bm.ordering),
                    "q_orderings": [list(o) for o in bm.orderings]}
    if "bm" in config.checks:
        report.checks.update(bose_mesner_checks(bm))
    if config.vertex == "all":
        xs = list(range(g.n))
    else:
        if config.vertex >= g.n:
            raise ValueError(f"vertex {config.vertex} out of range for {g.n} vertices")
        xs = [config.vertex]
    if stages_need_vertex(config):
        if config.workers > 1 and len(xs) > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                results = list(pool.map(_worker, [(config, x) for x in xs]))
        else:
            results = [vertex_report(gc, x, config) for x in xs]
        for r in results:
            report.timings[f"vertex-{r['vertex']}"] = r.pop("timings")
            report.vertices.append(r)
    report.timings["total"] = time.perf_counter() - t0
    return report


def stages_need_vertex(config: RunConfig) -> bool:
    return bool(set(config.checks) & {"dual", "talg", "tmod", "scheme"})


# ---------------------------------------------------------------- text output

def module_table(report: Report) -> str:
    lines = []
    for vrep in report.vertices:
        tm = vrep["metrics"].get("tmod")
        if not tm or "module_table" not in tm:
            continue
        lines.append(f"vertex {vrep['vertex']}: dim T = {vrep['metrics'].get('dim_T')}, "
                     f"{tm['modules']} modules in {tm['classes']} classes")
        lines.append(f"  {'r':>2} {'s':>2} {'d':>2}  {'shape':<20} {'mult':>4}")
        for row in tm["module_table"]:
            shape = ",".join(map(str, row["shape"]))
            lines.append(f"  {row['r']:>2} {row['s']:>2} {row['d']:>2}  {shape:<20} {row['mult']:>4}")
    return "\n".join(lines)


def scoreboard_text(report: Report) -> str:
    board = report.scoreboard()
    width = max((len(k) for k in board), default=10)
    lines = []
    for key, entry in board.items():
        mark = "PASS" if entry["passed"] else "FAIL"
        where = f"  (failed at vertices {entry['failed_at']})" if entry["failed_at"] else ""
        lines.append(f"{mark}  {key:<{width}}  {entry['statement']}{where}")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)
