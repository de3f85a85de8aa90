"""Graph families, the path-length metric, and a brute-force DRG certifier."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .linalg import ExactMatrix, FloatMatrix, Matrix

FAMILIES = ("hamming", "johnson", "grassmann", "cycle")
_ARITY = {"hamming": 2, "johnson": 2, "grassmann": 3, "cycle": 1}
_SUPPORTED_Q = (2, 3)


class GraphSpecError(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class GraphSpec:
    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GraphSpecError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if len(self.params) != _ARITY[self.family]:
            raise GraphSpecError(f"{self.family} takes {_ARITY[self.family]} integer parameter(s), got {len(self.params)}")
        p = self.params
        if self.family == "hamming":
            d, n = p
            if d < 1 or n < 2:
                raise GraphSpecError("hamming:D,N needs D >= 1 and N >= 2")
        elif self.family == "johnson":
            n, d = p
            if d < 1 or n < 2 * d:
                raise GraphSpecError("johnson:N,D needs N >= 2D >= 2")
        elif self.family == "grassmann":
            q, n, d = p
            if q not in _SUPPORTED_Q:
                raise GraphSpecError(f"grassmann:q,N,D supports q in {_SUPPORTED_Q}, got {q}")
            if d < 1 or n < 2 * d:
                raise GraphSpecError("grassmann:q,N,D needs N >= 2D >= 2")
        else:
            (n,) = p
            if n < 3:
                raise GraphSpecError("cycle:n needs n >= 3")

    @classmethod
    def parse(cls, text: str) -> "GraphSpec":
        m = re.fullmatch(r"\s*([a-z]+)\s*:\s*([0-9 ,]+)\s*", text or "")
        if not m:
            raise GraphSpecError(f"cannot parse graph spec {text!r}; expected e.g. hamming:3,3")
        fam = m.group(1)
        try:
            params = tuple(int(x) for x in m.group(2).split(","))
        except ValueError:
            raise GraphSpecError(f"non-integer parameter in {text!r}") from None
        return cls(fam, params)

    def __str__(self):
        return f"{self.family}:{','.join(map(str, self.params))}"


@dataclass
class Graph:
    labels: list
    adjacency: np.ndarray  # int64 0/1
    distances: np.ndarray  # int64, BFS metric
    name: str = "graph"
    spec: GraphSpec | None = None

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def diameter(self) -> int:
        return int(self.distances.max()) if self.n else 0

    @property
    def valency(self) -> int:
        return int(self.adjacency[0].sum())

    def index(self, label) -> int:
        return self.labels.index(label)

    def sphere(self, x: int, i: int) -> list[int]:
        return [int(y) for y in np.flatnonzero(self.distances[x] == i)]

    @classmethod
    def from_adjacency(cls, adj, labels: Sequence | None = None, name: str = "graph", spec=None) -> "Graph":
        adj = np.asarray(adj, dtype=np.int64)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if np.any(adj != adj.T) or np.any(np.diagonal(adj)) or np.any((adj != 0) & (adj != 1)):
            raise ValueError("adjacency must be symmetric 0/1 with zero diagonal")
        dist = shortest_path(csr_matrix(adj), method="D", unweighted=True, directed=False)
        if np.isinf(dist).any():
            raise DisconnectedGraphError(f"{name} is disconnected")
        labels = list(labels) if labels is not None else list(range(adj.shape[0]))
        return cls(labels, adj, dist.astype(np.int64), name, spec)


# ---------------------------------------------------------------- families

def _rref_subspaces(q: int, n: int, d: int) -> list[tuple]:
    """All d-dimensional subspaces of F_q^n as reduced row-echelon d x n matrices."""
    out = []
    for pivots in itertools.combinations(range(n), d):
        free = [(r, c) for r in range(d) for c in range(pivots[r] + 1, n) if c not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            m = [[0] * n for _ in range(d)]
            for r, c in enumerate(pivots):
                m[r][c] = 1
            for (r, c), v in zip(free, values):
                m[r][c] = v
            out.append(tuple(tuple(row) for row in m))
    return sorted(out)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _family(spec: GraphSpec):
    f, p = spec.family, spec.params
    if f == "hamming":
        d, n = p
        labels = list(itertools.product(range(n), repeat=d))
        arr = np.array(labels)
        diff = (arr[:, None, :] != arr[None, :, :]).sum(axis=2)
        return labels, (diff == 1)
    if f == "johnson":
        n, d = p
        labels = list(itertools.combinations(range(n), d))
        ind = np.zeros((len(labels), n), dtype=np.int64)
        for i, s in enumerate(labels):
            ind[i, list(s)] = 1
        return labels, (ind @ ind.T) == d - 1
    if f == "grassmann":
        q, n, d = p
        labels = _rref_subspaces(q, n, d)
        size = len(labels)
        adj = np.zeros((size, size), dtype=bool)
        for i in range(size):
            for j in range(i + 1, size):
                meet = 2 * d - rank_mod_p(labels[i] + labels[j], q)
                if meet == d - 1:
                    adj[i, j] = adj[j, i] = True
        return labels, adj
    (n,) = p
    labels = list(range(n))
    idx = np.arange(n)
    adj = np.zeros((n, n), dtype=bool)
    adj[idx, (idx + 1) % n] = True
    adj[(idx + 1) % n, idx] = True
    return labels, adj


def build_graph(spec: GraphSpec | str) -> Graph:
    if isinstance(spec, str):
        spec = GraphSpec.parse(spec)
    labels, adj = _family(spec)
    return Graph.from_adjacency(adj.astype(np.int64), labels, name=str(spec), spec=spec)


# ---------------------------------------------------------------- DRG certificate

@dataclass
class IntersectionData:
    p: np.ndarray  # p[h, i, j]
    diameter: int

    @property
    def k(self) -> list[int]:
        return [int(self.p[0, i, i]) for i in range(self.diameter + 1)]

    @property
    def valency(self) -> int:
        return int(self.p[0, 1, 1]) if self.diameter >= 1 else 0

    @property
    def c(self) -> list[int]:
        return [0] + [int(self.p[i, 1, i - 1]) for i in range(1, self.diameter + 1)]

    @property
    def a(self) -> list[int]:
        return [int(self.p[i, 1, i]) for i in range(self.diameter + 1)]

    @property
    def b(self) -> list[int]:
        return [int(self.p[i, 1, i + 1]) for i in range(self.diameter)] + [0]

    def intersection_array(self) -> tuple[list[int], list[int]]:
        return self.b[:-1], self.c[1:]


@dataclass
class NotDRG:
    h: int
    i: int
    j: int
    first: tuple
    first_count: int
    second: tuple
    second_count: int

    def __bool__(self):
        return False

    def __str__(self):
        return (f"|G_{self.i}(y) & G_{self.j}(z)| differs at distance {self.h}: "
                f"{self.first} gives {self.first_count}, {self.second} gives {self.second_count}")


def certify_distance_regular(g: Graph) -> IntersectionData | NotDRG:
    """Count |G_i(y) & G_j(z)| for every ordered pair and demand constancy per distance."""
    d = g.diameter
    ind = [(g.distances == i).astype(np.int64) for i in range(d + 1)]
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for i in range(d + 1):
        for j in range(d + 1):
            counts = ind[i] @ ind[j]
            for h in range(d + 1):
                vals = counts[ind[h] == 1]
                lo, hi = int(vals.min()), int(vals.max())
                if lo != hi:
                    pairs = np.argwhere(ind[h] == 1)
                    a = next(tuple(map(int, pr)) for pr in pairs if counts[tuple(pr)] == lo)
                    b = next(tuple(map(int, pr)) for pr in pairs if counts[tuple(pr)] == hi)
                    return NotDRG(h, i, j, a, lo, b, hi)
                p[h, i, j] = lo
    return IntersectionData(p, d)


def distance_matrices(g: Graph, domain: str = "exact") -> list[Matrix]:
    mats = [(g.distances == i).astype(np.int64) for i in range(g.diameter + 1)]
    if domain == "exact":
        return [ExactMatrix.from_ints(m) for m in mats]
    return [FloatMatrix(m) for m in mats]
