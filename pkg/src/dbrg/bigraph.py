"""Bipartite graph engine: distance partitions and biregularity checks.

Verification is definition-first: a BFS from every vertex, with the
per-cell neighbour counts (c_i, b_i) tested for constancy cell by cell.
Theorem shortcuts are available as cross-checks but never replace the
definition.  The per-source loops are vectorized with numpy; every count
is exact integer work.

Vertices are addressed by a single index: the B class occupies
``0..nB-1`` and the C class ``nB..nB+nC-1``.

Graph text format: header ``B=<nB> C=<nC>``, then one edge ``<b> <c>``
per line with 0-based class-local indices, sorted.  Intersection arrays
print as ``{k;c1,...,cdB | l;c1,...,cdC}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BipartiteGraph",
    "Graph",
    "IntersectionArray",
    "DistancePartition",
    "LocalCheck",
    "DbrgResult",
    "SemiregularResult",
    "SrgResult",
    "ShortcutResult",
    "distance_partition",
    "local_dr_check",
    "dbrg_check",
    "girth",
    "semiregular_check",
    "halved_graphs",
    "srg_check",
    "subdivision",
    "flip",
    "induced_subgraph",
    "c3_shortcut_check",
    "parse_graph",
    "serialize_graph",
    "arrays_equal_up_to_swap",
]


class BipartiteGraph:
    """Immutable bipartite graph on two indexed vertex classes."""

    def __init__(
        self,
        nB: int,
        nC: int,
        edges: Iterable[tuple[int, int]],
        labels_b: Sequence | None = None,
        labels_c: Sequence | None = None,
    ):
        edges = sorted(set((int(b), int(c)) for b, c in edges))
        for b, c in edges:
            if not (0 <= b < nB and 0 <= c < nC):
                raise ValueError(f"edge ({b},{c}) out of range for B={nB} C={nC}")
        self.nB = nB
        self.nC = nC
        self.edges = tuple(edges)
        self.labels_b = tuple(labels_b) if labels_b is not None else None
        self.labels_c = tuple(labels_c) if labels_c is not None else None
        self.V = nB + nC
        if edges:
            eb = np.fromiter((e[0] for e in edges), dtype=np.int64, count=len(edges))
            ec = np.fromiter((e[1] for e in edges), dtype=np.int64, count=len(edges)) + nB
        else:
            eb = np.zeros(0, dtype=np.int64)
            ec = np.zeros(0, dtype=np.int64)
        # directed edge arrays, both orientations
        self._src = np.concatenate([eb, ec])
        self._dst = np.concatenate([ec, eb])
        self.degrees = np.bincount(self._src, minlength=self.V)

    def vertex(self, side: str, idx: int) -> int:
        if side == "B":
            if not 0 <= idx < self.nB:
                raise ValueError(f"B index {idx} out of range")
            return idx
        if side == "C":
            if not 0 <= idx < self.nC:
                raise ValueError(f"C index {idx} out of range")
            return self.nB + idx
        raise ValueError(f"side must be 'B' or 'C', got {side!r}")

    def side_of(self, v: int) -> str:
        return "B" if v < self.nB else "C"

    def neighbors(self, v: int) -> np.ndarray:
        return np.sort(self._dst[self._src == v])

    def biadjacency(self) -> np.ndarray:
        n = np.zeros((self.nB, self.nC), dtype=np.int64)
        if self.edges:
            rows = [e[0] for e in self.edges]
            cols = [e[1] for e in self.edges]
            n[rows, cols] = 1
        return n

    def __repr__(self) -> str:
        return f"BipartiteGraph(B={self.nB}, C={self.nC}, edges={len(self.edges)})"


class Graph:
    """Immutable simple graph (used for halved graphs and subdivision input)."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError("loops are not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            norm.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = tuple(sorted(norm))

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={len(self.edges)})"


# ---------------------------------------------------------------------------
# Intersection arrays
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionArray:
    """The two c-lines of a distance-biregular graph.

    ``k`` and ``cB`` describe vertices in B (valency k, c_1..c_dB), and
    ``l``, ``cC`` the C side.  The b-numbers are derived: at even
    distance from a base vertex the counts sum to the base side's
    valency, at odd distance to the other valency.
    """

    k: int
    l: int
    cB: tuple[int, ...]
    cC: tuple[int, ...]

    @property
    def dB(self) -> int:
        return len(self.cB)

    @property
    def dC(self) -> int:
        return len(self.cC)

    def bB(self, i: int) -> int:
        if i == 0:
            return self.k
        own, other = (self.k, self.l) if i % 2 == 0 else (self.l, self.k)
        return own - self.cB[i - 1]

    def bC(self, i: int) -> int:
        if i == 0:
            return self.l
        own, other = (self.l, self.k) if i % 2 == 0 else (self.k, self.l)
        return own - self.cC[i - 1]

    def validate(self) -> None:
        for name, k, cs in (("B", self.k, self.cB), ("C", self.l, self.cC)):
            other = self.l if name == "B" else self.k
            if not cs or cs[0] != 1:
                raise ValueError(f"{name}-line must start with c_1 = 1")
            for i, c in enumerate(cs, start=1):
                cap = k if i % 2 == 0 else other
                if not 1 <= c <= cap:
                    raise ValueError(f"c_{i}^{name} = {c} exceeds valency bound {cap}")
            d = len(cs)
            final_cap = k if d % 2 == 0 else other
            if cs[-1] != final_cap:
                raise ValueError(f"final c of {name}-line must equal {final_cap}")

    @property
    def regular(self) -> bool:
        return self.k == self.l

    def swapped(self) -> "IntersectionArray":
        return IntersectionArray(self.l, self.k, self.cC, self.cB)

    def __str__(self) -> str:
        top = ",".join(map(str, self.cB))
        bot = ",".join(map(str, self.cC))
        return f"{{{self.k};{top} | {self.l};{bot}}}"

    @classmethod
    def parse(cls, text: str) -> "IntersectionArray":
        body = text.strip().strip("{}")
        sep = "|" if "|" in body else "/"
        parts = body.split(sep)
        if len(parts) != 2:
            raise ValueError(f"cannot parse intersection array {text!r}")

        def line(s: str) -> tuple[int, tuple[int, ...]]:
            head, _, rest = s.partition(";")
            return int(head.strip()), tuple(int(x) for x in rest.split(","))

        k, cb = line(parts[0])
        l, cc = line(parts[1])
        return cls(k, l, cb, cc)


def arrays_equal_up_to_swap(a: IntersectionArray, b: IntersectionArray) -> bool:
    return a == b or a.swapped() == b


# ---------------------------------------------------------------------------
# BFS core
# ---------------------------------------------------------------------------

def _bfs(g: BipartiteGraph, source: int) -> np.ndarray:
    dist = np.full(g.V, -1, dtype=np.int16)
    dist[source] = 0
    frontier = np.zeros(g.V, dtype=bool)
    frontier[source] = True
    level = 0
    src, dst = g._src, g._dst
    while True:
        hits = dst[frontier[src]]
        hits = hits[dist[hits] == -1]
        if hits.size == 0:
            return dist
        level += 1
        dist[hits] = level
        frontier[:] = False
        frontier[hits] = True


def _profile_counts(g: BipartiteGraph, dist: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-vertex counts of neighbours one level closer / farther."""
    sd = dist[g._src]
    dd = dist[g._dst]
    c = np.bincount(g._src[dd == sd - 1], minlength=g.V)
    b = np.bincount(g._src[dd == sd + 1], minlength=g.V)
    return c, b


@dataclass(frozen=True)
class DistancePartition:
    source: int
    cells: tuple[tuple[int, ...], ...]

    @property
    def eccentricity(self) -> int:
        return len(self.cells) - 1

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)


def distance_partition(g: BipartiteGraph, v: int) -> DistancePartition:
    """BFS-exact distance partition from v; raises if g is disconnected."""
    dist = _bfs(g, v)
    if (dist < 0).any():
        raise ValueError("graph is disconnected")
    ecc = int(dist.max())
    cells = tuple(tuple(np.flatnonzero(dist == i)) for i in range(ecc + 1))
    return DistancePartition(v, cells)


@dataclass(frozen=True)
class LocalCheck:
    ok: bool
    c: tuple[int, ...] = ()
    b: tuple[int, ...] = ()
    witness: tuple[int, int, int] | None = None  # (level, vertex, vertex)


def _local_profile(g: BipartiteGraph, dist: np.ndarray) -> LocalCheck:
    cpv, bpv = _profile_counts(g, dist)
    ecc = int(dist.max())
    cs, bs = [], []
    for i in range(ecc + 1):
        members = np.flatnonzero(dist == i)
        cv = cpv[members]
        bv = bpv[members]
        if cv.max() != cv.min() or bv.max() != bv.min():
            u = int(members[0])
            mask = (cv != cv[0]) | (bv != bv[0])
            w = int(members[np.flatnonzero(mask)[0]])
            return LocalCheck(False, witness=(i, u, w))
        cs.append(int(cv[0]))
        bs.append(int(bv[0]))
    return LocalCheck(True, c=tuple(cs), b=tuple(bs))


def local_dr_check(g: BipartiteGraph, v: int) -> LocalCheck:
    """Is the distance partition from v equitable?  Witness on failure.

    The returned c/b tuples run over distances 0..ecc (so ``c[0] = 0``
    and ``b[0]`` is the valency of v).
    """
    dist = _bfs(g, v)
    if (dist < 0).any():
        raise ValueError("graph is disconnected")
    return _local_profile(g, dist)


@dataclass(frozen=True)
class DbrgResult:
    ok: bool
    array: IntersectionArray | None = None
    regular: bool = False
    witness: tuple | None = None
    # witness forms: ("local", vertex, level, u, w) for an inequitable
    # partition, ("side", side, u, w) for two same-side vertices with
    # different profiles.


def dbrg_check(g: BipartiteGraph) -> DbrgResult:
    """Definition-exact distance-biregularity check.

    Accepts iff every distance partition is equitable and the (c, b)
    profile is constant on each class.  Regular graphs (k = l) are
    accepted and flagged via ``regular``.
    """
    if g.V == 0:
        raise ValueError("empty graph")
    first = _bfs(g, 0)
    if (first < 0).any():
        raise ValueError("graph is disconnected")
    profiles: dict[str, tuple] = {}
    rep: dict[str, int] = {}
    for v in range(g.V):
        dist = first if v == 0 else _bfs(g, v)
        res = _local_profile(g, dist)
        side = g.side_of(v)
        if not res.ok:
            lvl, u, w = res.witness
            return DbrgResult(False, witness=("local", v, lvl, u, w))
        prof = (res.c, res.b)
        if side not in profiles:
            profiles[side] = prof
            rep[side] = v
        elif profiles[side] != prof:
            return DbrgResult(False, witness=("side", side, rep[side], v))
    cB, bB = profiles["B"]
    cC, bC = profiles["C"]
    array = IntersectionArray(k=bB[0], l=bC[0], cB=cB[1:], cC=cC[1:])
    array.validate()
    d_b, d_c = array.dB, array.dC
    d = max(d_b, d_c)
    assert min(d_b, d_c) >= d - 1, "covering radii differ by more than one"
    if d % 2 == 1:
        assert array.k == array.l, "odd diameter forces a regular graph"
    return DbrgResult(True, array=array, regular=array.regular)


def girth(g: BipartiteGraph) -> int:
    """Exact girth via BFS parent counts; 0 for an acyclic graph."""
    best = 0
    for v in range(g.V):
        dist = _bfs(g, v)
        cpv, _ = _profile_counts(g, dist)
        reach = dist >= 0
        multi = reach & (cpv >= 2)
        if multi.any():
            lvl = int(dist[multi].min())
            cand = 2 * lvl
            if best == 0 or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class SemiregularResult:
    ok: bool
    k: int | None = None
    l: int | None = None
    witness: int | None = None


def semiregular_check(g: BipartiteGraph) -> SemiregularResult:
    """Constant valency on each side; witness is the first offender."""
    degs = g.degrees
    kb = int(degs[0]) if g.nB else 0
    kc = int(degs[g.nB]) if g.nC else 0
    for v in range(g.nB):
        if degs[v] != kb:
            return SemiregularResult(False, witness=v)
    for v in range(g.nB, g.V):
        if degs[v] != kc:
            return SemiregularResult(False, witness=v)
    return SemiregularResult(True, k=kb, l=kc)


def halved_graphs(g: BipartiteGraph) -> tuple[Graph, Graph]:
    """Distance-two graphs on B and on C (for a connected bipartite g)."""
    # float matmul is exact here (counts are far below 2**53) and avoids
    # numpy's slow integer matmul path
    n = g.biadjacency().astype(np.float64)
    bb = (n @ n.T) > 0.5
    cc = (n.T @ n) > 0.5
    hb_edges = [(int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(bb, 1)))]
    hc_edges = [(int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(cc, 1)))]
    return Graph(g.nB, hb_edges), Graph(g.nC, hc_edges)


@dataclass(frozen=True)
class SrgResult:
    ok: bool
    params: tuple[int, int, int, int] | None = None
    witness: tuple | None = None


def srg_check(h: Graph) -> SrgResult:
    """Combinatorial strong-regularity check (no spectra).

    Counts common neighbours for every pair: adjacent pairs must agree on
    lambda, non-adjacent pairs on mu.  Requires a regular, non-complete,
    non-empty graph; the witness names the first violation.
    """
    v = h.n
    a = h.adjacency()
    degs = a.sum(axis=1)
    k = int(degs[0])
    bad = np.flatnonzero(degs != k)
    if bad.size:
        return SrgResult(False, witness=("degree", int(bad[0])))
    common = (a.astype(np.float64) @ a.astype(np.float64)).astype(np.int64)
    off = ~np.eye(v, dtype=bool)
    adj = a.astype(bool)
    non = off & ~adj
    if not adj.any() or not non.any():
        raise ValueError("srg_check requires a non-complete, non-empty graph")
    lam_vals = common[adj]
    lam = int(lam_vals[0])
    if (lam_vals != lam).any():
        i, j = next(zip(*np.nonzero(adj & (common != lam))))
        return SrgResult(False, witness=("lambda", int(i), int(j)))
    mu_vals = common[non]
    mu = int(mu_vals[0])
    if (mu_vals != mu).any():
        i, j = next(zip(*np.nonzero(non & (common != mu))))
        return SrgResult(False, witness=("mu", int(i), int(j)))
    return SrgResult(True, params=(v, k, lam, mu))


def subdivision(h: Graph) -> BipartiteGraph:
    """Vertex-edge incidence graph: B = vertices of h, C = edges of h."""
    edges = []
    for ci, (u, v) in enumerate(h.edges):
        edges.append((u, ci))
        edges.append((v, ci))
    return BipartiteGraph(h.n, len(h.edges), edges,
                          labels_b=range(h.n), labels_c=h.edges)


def flip(g: BipartiteGraph) -> BipartiteGraph:
    """The same graph with the two classes exchanged."""
    return BipartiteGraph(
        g.nC, g.nB, [(c, b) for b, c in g.edges],
        labels_b=g.labels_c, labels_c=g.labels_b,
    )


def induced_subgraph(
    g: BipartiteGraph, b_keep: Sequence[int], c_keep: Sequence[int]
) -> BipartiteGraph:
    """Induced bipartite subgraph; class indices are re-numbered in order."""
    b_map = {v: i for i, v in enumerate(sorted(set(b_keep)))}
    c_map = {v: i for i, v in enumerate(sorted(set(c_keep)))}
    edges = [
        (b_map[b], c_map[c]) for b, c in g.edges if b in b_map and c in c_map
    ]
    lb = [g.labels_b[v] for v in sorted(b_map)] if g.labels_b else sorted(b_map)
    lc = [g.labels_c[v] for v in sorted(c_map)] if g.labels_c else sorted(c_map)
    return BipartiteGraph(len(b_map), len(c_map), edges, labels_b=lb, labels_c=lc)


# ---------------------------------------------------------------------------
# Diameter-4 shortcut check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShortcutResult:
    verdict: str  # "applies" | "inconclusive" | "hypothesis_failed"
    reason: str = ""
    predicted: IntersectionArray | None = None
    agrees: bool | None = None


def c3_shortcut_check(
    g: BipartiteGraph, c2b: int, c3b: int, c2c: int
) -> ShortcutResult:
    """Diameter-4 certification shortcut from one locally regular side.

    Hypotheses verified on the graph: every B vertex locally
    distance-regular with c-line (1, c2b, c3b, k); the count of common
    neighbours of any two C vertices at distance two constant equal to
    c2c; and k strictly greater than c2b*c3b/c2c.  When they hold, the
    full predicted array is emitted and compared with the definition
    check.
    """
    semi = semiregular_check(g)
    if not semi.ok:
        return ShortcutResult("hypothesis_failed", f"not semiregular at {semi.witness}")
    k, l = semi.k, semi.l
    expected = (1, c2b, c3b, k)
    for v in range(g.nB):
        res = local_dr_check(g, v)
        if not res.ok:
            return ShortcutResult("hypothesis_failed", f"B vertex {v} not locally distance-regular")
        if res.c[1:] != expected:
            return ShortcutResult(
                "hypothesis_failed",
                f"B vertex {v} has c-line {res.c[1:]}, wanted {expected}",
            )
    n = g.biadjacency()
    cc = (n.T.astype(np.float64) @ n.astype(np.float64)).astype(np.int64)
    off = cc[~np.eye(g.nC, dtype=bool)]
    vals = set(np.unique(off).tolist()) - {0}
    if vals != {c2c}:
        return ShortcutResult(
            "hypothesis_failed", f"C-side common-neighbour counts {sorted(vals)} != {{{c2c}}}"
        )
    if k * c2c == c2b * c3b:
        return ShortcutResult("inconclusive", "k equals c2B*c3B/c2C; strict inequality required")
    if k * c2c < c2b * c3b:
        return ShortcutResult("hypothesis_failed", "k < c2B*c3B/c2C")
    if (c2b * c3b) % c2c:
        return ShortcutResult("hypothesis_failed", "predicted c3C is not an integer")
    predicted = IntersectionArray(k, l, (1, c2b, c3b, k), (1, c2c, c2b * c3b // c2c, l))
    full = dbrg_check(g)
    agrees = full.ok and full.array == predicted
    return ShortcutResult("applies", predicted=predicted, agrees=agrees)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def serialize_graph(g: BipartiteGraph) -> str:
    lines = [f"B={g.nB} C={g.nC}"]
    lines.extend(f"{b} {c}" for b, c in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> BipartiteGraph:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty graph file")
    header = lines[0].split()
    try:
        nb = int(header[0].removeprefix("B="))
        nc = int(header[1].removeprefix("C="))
    except (IndexError, ValueError) as exc:
        raise ValueError(f"line 1: bad header {lines[0]!r}") from exc
    edges = []
    for no, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {no}: expected '<b> <c>', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ValueError(f"line {no}: non-integer edge {line!r}") from exc
    try:
        return BipartiteGraph(nb, nc, edges)
    except ValueError as exc:
        raise ValueError(f"graph file invalid: {exc}") from exc
