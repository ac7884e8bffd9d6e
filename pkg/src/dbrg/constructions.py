"""Builders for distance-biregular graph families.

Every builder returns a :class:`ConstructionResult` carrying the graph
together with the intersection array the construction predicts for it.
Builders never verify their own output; the verification pass
(:func:`dbrg.bigraph.dbrg_check`) is separate, so each predicted array
doubles as a regression fixture.

Families: complete bipartite graphs; the two unbounded-diameter
subset/subspace inclusion families; vector-coset incidence graphs of
perp systems and of the quadric-cone family; the affine hyperoval
family; and local derived graphs of diameter-4 graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .bigraph import BipartiteGraph, IntersectionArray, dbrg_check, induced_subgraph
from .gfcore import (
    FieldContext,
    Subspace,
    enumerate_cosets,
    enumerate_subspaces,
    qbinom,
    subspace_make,
    vector_index,
    index_vector,
)
from .geometry import cone_spaces, field_for_order, hyperoval
from .perpsys import PerpSystem

__all__ = [
    "ConstructionResult",
    "DerivedGraphError",
    "complete_bipartite",
    "bi_johnson",
    "bi_grassmann",
    "gen_delorme_graph",
    "cone_graph",
    "hyperoval_affine_graph",
    "derived_local_graph",
]


@dataclass(frozen=True)
class ConstructionResult:
    graph: BipartiteGraph
    predicted: IntersectionArray
    provenance: str
    params: dict = dc_field(default_factory=dict)


def complete_bipartite(k: int, l: int) -> ConstructionResult:
    """K_{l,k}: the class of size l has valency k."""
    if k < 1 or l < 1:
        raise ValueError("valencies must be positive")
    g = BipartiteGraph(l, k, [(b, c) for b in range(l) for c in range(k)])
    cb = (1, k) if l > 1 else (1,)
    cc = (1, l) if k > 1 else (1,)
    note = "complete-bipartite"
    if k == l == 1:
        note += " (single edge, diameter 1)"
    return ConstructionResult(g, IntersectionArray(k, l, cb, cc), note, {"k": k, "l": l})


def _stair(count: int) -> tuple[int, ...]:
    # 1, 1, 2, 2, 3, 3, ...
    return tuple((i + 1) // 2 for i in range(1, count + 1))


def bi_johnson(n: int, k: int) -> ConstructionResult:
    """Inclusion graph of k-subsets vs (k+1)-subsets of an n-set."""
    if k < 1 or n < 2 * k + 2:
        raise ValueError(f"need k >= 1 and n >= 2k+2, got n={n}, k={k}")
    small = list(itertools.combinations(range(n), k))
    large = list(itertools.combinations(range(n), k + 1))
    big_index = {s: i for i, s in enumerate(large)}
    edges = []
    for bi, s in enumerate(small):
        rest = set(range(n)) - set(s)
        for extra in rest:
            edges.append((bi, big_index[tuple(sorted(s + (extra,)))]))
    g = BipartiteGraph(len(small), len(large), edges, labels_b=small, labels_c=large)
    arr = IntersectionArray(n - k, k + 1, _stair(2 * k + 1), _stair(2 * k + 2))
    return ConstructionResult(g, arr, "subset-inclusion", {"n": n, "k": k})


def bi_grassmann(n: int, k: int, q: int) -> ConstructionResult:
    """Inclusion graph of k-dim vs (k+1)-dim subspaces of F_q^n."""
    if k < 1 or n < 2 * k + 2:
        raise ValueError(f"need k >= 1 and n >= 2k+2, got n={n}, k={k}")
    ctx = field_for_order(q)
    small = list(enumerate_subspaces(ctx, n, k))
    large = list(enumerate_subspaces(ctx, n, k + 1))
    big_index = {s: i for i, s in enumerate(large)}
    edges = []
    for ci, big in enumerate(large):
        # the k-subspaces of a (k+1)-space, found within the big space
        for bi, sml in enumerate(small):
            if all(big.contains(row) for row in sml.basis):
                edges.append((bi, ci))
    g = BipartiteGraph(len(small), len(large), edges)
    cb = tuple(qbinom(v, 1, q) for v in _stair(2 * k + 1))
    cc = tuple(qbinom(v, 1, q) for v in _stair(2 * k + 2))
    arr = IntersectionArray(qbinom(n - k, 1, q), qbinom(k + 1, 1, q), cb, cc)
    return ConstructionResult(g, arr, "subspace-inclusion", {"n": n, "k": k, "q": q})


def _coset_incidence(ctx: FieldContext, n: int, members: tuple[Subspace, ...]) -> BipartiteGraph:
    """B = all vectors of F_q^n, C = all cosets of all members, by inclusion."""
    q = ctx.q
    coset_count = q ** (n - members[0].dim)
    rep_pos: list[dict] = []
    for m in members:
        rep_pos.append({rep: i for i, rep in enumerate(enumerate_cosets(m))})
    edges = []
    labels_c = []
    for mi, m in enumerate(members):
        for rep, pos in rep_pos[mi].items():
            labels_c.append((mi, rep))
    for vid in range(q**n):
        v = index_vector(ctx, vid, n)
        for mi, m in enumerate(members):
            rep = m.reduce(v)
            edges.append((vid, mi * coset_count + rep_pos[mi][rep]))
    labels_b = [index_vector(ctx, vid, n) for vid in range(q**n)]
    return BipartiteGraph(q**n, len(members) * coset_count, edges,
                          labels_b=labels_b, labels_c=labels_c)


def gen_delorme_graph(system: PerpSystem) -> ConstructionResult:
    """Vector-coset incidence graph of a perp system.

    B is all q^n vectors, C the s*q^k affine cosets of the members; the
    predicted diameter-4 array is determined by (n, k, q, d, s).
    """
    ctx, n, k, d, s = system.ctx, system.n, system.k, system.d, system.s
    q = ctx.q
    g = _coset_incidence(ctx, n, system.members)
    c3b = q ** (n - 2 * k) * (s - 1) // d
    assert c3b * d == q ** (n - 2 * k) * (s - 1)
    arr = IntersectionArray(
        s, q ** (n - k),
        (1, d, c3b, s),
        (1, q ** (n - 2 * k), s - 1, q ** (n - k)),
    )
    return ConstructionResult(
        g, arr, "perp-system cosets", {"n": n, "k": k, "q": q, "d": d, "s": s}
    )


def cone_graph(q: int) -> ConstructionResult:
    """Coset incidence graph of one ruling of the hyperbolic-quadric cone.

    B is the q^6 affine points, C the q^3 cosets of each of the
    (q+1)(q^2+1) totally singular 3-spaces in the chosen ruling.
    """
    if q > 4:
        raise ValueError("cone_graph is desk-scale: q <= 4")
    _, s_star = cone_spaces(q)
    g = _coset_incidence(s_star.ctx, 6, s_star.members)
    n4 = qbinom(4, 1, q)
    arr = IntersectionArray(
        n4, q**3,
        (1, q + 1, q * q, n4),
        (1, q, q * q + q, q**3),
    )
    return ConstructionResult(g, arr, "quadric-cone cosets", {"q": q})


def hyperoval_affine_graph(q: int) -> ConstructionResult:
    """Points with exterior direction vs affine planes of a dual hyperoval.

    Directions of F_q^3 are classified by the dual of a hyperoval (q+2
    lines at infinity, every direction on 0 or 2 of them).  B is the
    q(q-1)^2/2 points whose direction misses all lines; C is the
    (q+2)(q-1) affine planes with a line of the dual at infinity, the
    plane through the origin excluded.
    """
    if q < 4 or q & (q - 1):
        raise ValueError("need q = 2^m with m >= 2")
    ctx = field_for_order(q)
    oval = hyperoval(q)
    # planes of the dual hyperoval: perps of the oval points
    from .gfcore import orthogonal_complement

    planes = [orthogonal_complement(p) for p in oval.sorted_points()]
    exterior = []
    for vid in range(1, q**3):
        v = index_vector(ctx, vid, 3)
        if not any(w.contains(v) for w in planes):
            exterior.append(v)
    b_index = {v: i for i, v in enumerate(exterior)}
    edges = []
    labels_c = []
    ci = 0
    for li, w in enumerate(planes):
        for rep in enumerate_cosets(w):
            if all(x == 0 for x in rep):
                continue  # the plane through the origin
            labels_c.append((li, rep))
            for u in w.vectors():
                y = tuple(ctx.add(a, b) for a, b in zip(rep, u))
                if y in b_index:
                    edges.append((b_index[y], ci))
            ci += 1
    g = BipartiteGraph(len(exterior), ci, edges, labels_b=exterior, labels_c=labels_c)
    arr = IntersectionArray(
        q + 2, q * (q - 1) // 2,
        (1, 2, q * (q + 1) // 4, q + 2),
        (1, q // 2, q + 1, q * (q - 1) // 2),
    )
    return ConstructionResult(g, arr, "affine hyperoval planes", {"q": q})


class DerivedGraphError(ValueError):
    """A hypothesis of the local derivation fails; names the condition."""

    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"{condition}" + (f": {detail}" if detail else ""))
        self.condition = condition


def derived_local_graph(
    parent: BipartiteGraph,
    z_side: str,
    z_index: int,
    array: IntersectionArray | None = None,
) -> ConstructionResult:
    """Induced subgraph on the distance-3 and distance-4 cells from z.

    The class containing z plays the role of the second array line; all
    b-numbers are re-derived from the verified parent array.  Hypotheses
    checked before building: the homogeneity scalar for distance 3
    vanishes, and the two strict inequalities relating its constant to
    c_2 and b_3.  Violations raise :class:`DerivedGraphError` naming the
    condition.
    """
    if array is None:
        res = dbrg_check(parent)
        if not res.ok:
            raise ValueError(f"parent graph is not distance-biregular: {res.witness}")
        array = res.array
    arr = array if z_side == "C" else array.swapped()
    # orient the graph so that z lies in class C
    if z_side == "B":
        from .bigraph import flip

        graph = flip(parent)
    else:
        graph = parent
    z = graph.vertex("C", z_index)
    if arr.dB < 4 or arr.dC < 4:
        raise DerivedGraphError("diameter", "parent must have covering radii at least 4")
    c2b, c3b = arr.cB[1], arr.cB[2]
    c2c, c3c, c4c = arr.cC[1], arr.cC[2], arr.cC[3]
    b2c, b3c = arr.bC(2), arr.bC(3)
    denom = b3c * (c4c - 1) + c3c * (b2c - 1)
    delta3 = Fraction((b2c - 1) * (c4c - 1)) - Fraction(denom * (c2c - 1), c2b)
    if delta3 != 0:
        raise DerivedGraphError("delta3_nonzero", f"distance-3 homogeneity scalar is {delta3}")
    gamma3 = Fraction(c2b * c3c * (b2c - 1), denom)
    if not (c2b > gamma3):
        raise DerivedGraphError("c2_bound", f"need c2 > gamma3 = {gamma3}")
    if not (b3c > c2b - gamma3):
        raise DerivedGraphError("b3_bound", f"need b3 > c2 - gamma3 = {c2b - gamma3}")
    if gamma3.denominator != 1:
        raise DerivedGraphError("gamma3_integrality", f"gamma3 = {gamma3} is not an integer")
    gamma3 = int(gamma3)

    from .bigraph import _bfs

    dist = _bfs(graph, z)
    n3 = [int(v) for v in (dist == 3).nonzero()[0]]
    n4 = [int(v) - graph.nB for v in (dist == 4).nonzero()[0]]
    # distance 3 from a C vertex lands in B, distance 4 back in C
    sub = induced_subgraph(graph, n3, n4)
    c2_new = c2b - gamma3
    if (c2_new * c3b) % c2c:
        raise DerivedGraphError("array_integrality", "derived c3 is not an integer")
    arr_new = IntersectionArray(
        b3c, arr.l,
        (1, c2_new, c3b, b3c),
        (1, c2c, c2_new * c3b // c2c, arr.l),
    )
    return ConstructionResult(
        sub, arr_new, "local derived graph",
        {"z_side": z_side, "z_index": z_index, "gamma3": gamma3},
    )
