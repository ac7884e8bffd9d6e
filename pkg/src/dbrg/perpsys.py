"""Perp systems: constant-covering families of codimension-k subspaces.

A perp system in F_q^n is a family of s >= 2 subspaces of codimension k
(k <= n/2) such that every nonzero vector lies in exactly 0 or d of the
members (d >= 2, both cases occurring) and any two distinct members meet
in dimension exactly n - 2k.  The member count is then forced:

    s = (d - 1) (q^(n-k) - 1) / (q^(n-2k) - 1) + 1,

d must be a power of the characteristic dividing q^(n-2k), and the
points covered d times form a projective two-intersection set whose
associated graph is strongly regular.

``perp_verify`` measures everything exhaustively and returns either a
:class:`PerpSystem` or a :class:`PerpViolation` naming the offending
vector or member pair.  ``perp_search`` is a deterministic lexicographic
backtracking search; ``orbit_search`` restricts to families invariant
under a prescribed cyclic group of linear maps, which cuts the search
space by orders of magnitude when such symmetry exists.

File format (one system per file)::

    q=<p>^<t> modulus=<c0,...,ct> n=<n> k=<k>
    <vector>;<vector>;...       one member per line, coords comma-separated

Members and basis rows are written in canonical echelon order, so
serialization round-trips byte-identically.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .gfcore import (
    FieldContext,
    Subspace,
    dot,
    enumerate_projective_points,
    enumerate_subspaces,
    field,
    format_vector,
    orthogonal_complement,
    parse_vector,
    qbinom,
    subspace_make,
    subspace_meet,
    vector_index,
)
from .geometry import PointSet, field_for_order

__all__ = [
    "PerpSystem",
    "DualPerpSystem",
    "PerpViolation",
    "ParamCheck",
    "ParamReport",
    "HalvedSrgParams",
    "TwoIntersectionSet",
    "SearchOutcome",
    "perp_verify",
    "perp_params",
    "perp_srg_params",
    "two_intersection_set",
    "perp_dualize",
    "perp_search",
    "orbit_search",
    "serialize_perp",
    "parse_perp",
]


@dataclass(frozen=True)
class PerpSystem:
    """A verified perp system (construct through :func:`perp_verify`)."""

    ctx: FieldContext
    n: int
    k: int
    members: tuple[Subspace, ...]
    d: int
    s: int


@dataclass(frozen=True)
class DualPerpSystem:
    """Dual formulation: k-dim members, trivial meets, hyperplanes covered 0/d times."""

    ctx: FieldContext
    n: int
    k: int
    members: tuple[Subspace, ...]
    d: int
    s: int


@dataclass(frozen=True)
class PerpViolation:
    kind: str  # mixed_multiplicity | d_too_small | none_covered | all_covered | pair_meet
    vector: tuple[int, ...] | None = None
    pair: tuple[int, int] | None = None
    detail: str = ""


def _member_vector_ids(ctx: FieldContext, m: Subspace) -> np.ndarray:
    ids = [vector_index(ctx, v) for v in m.vectors()]
    ids = [i for i in ids if i != 0]
    return np.array(sorted(ids), dtype=np.int64)


def _member_mask(ids: np.ndarray) -> int:
    mask = 0
    for i in ids.tolist():
        mask |= 1 << i
    return mask


def perp_verify(
    ctx: FieldContext, n: int, k: int, members: Sequence[Subspace]
) -> PerpSystem | PerpViolation:
    """Exhaustive check of the two covering conditions.

    Preconditions (wrong member dimension, duplicates, empty family,
    k > n/2) raise ValueError; failures of the covering or meet
    conditions come back as :class:`PerpViolation` values.
    """
    members = tuple(members)
    if not members:
        raise ValueError("empty family")
    if 2 * k > n or k < 1:
        raise ValueError(f"need 1 <= k <= n/2, got k={k}, n={n}")
    for m in members:
        if m.n != n or m.ctx != ctx:
            raise ValueError("member in wrong ambient space")
        if m.dim != n - k:
            raise ValueError(f"member of dimension {m.dim}, expected {n - k}")
    if len(set(members)) != len(members):
        raise ValueError("duplicate members")
    if len(members) < 2:
        return PerpViolation("d_too_small", detail="family has a single member (s >= 2 required)")

    q = ctx.q
    counts = np.zeros(q**n, dtype=np.int32)
    id_lists = []
    for m in members:
        ids = _member_vector_ids(ctx, m)
        id_lists.append(ids)
        counts[ids] += 1
    mults = counts[1:]
    covered = mults[mults > 0]
    if covered.size == 0:
        return PerpViolation("none_covered", detail="no nonzero vector lies in any member")
    uniq = np.unique(covered)
    if uniq.size > 1:
        ref = int(uniq[-1])
        bad = int(np.flatnonzero((mults > 0) & (mults != ref))[0]) + 1
        from .gfcore import index_vector

        return PerpViolation(
            "mixed_multiplicity",
            vector=index_vector(ctx, bad, n),
            detail=f"vector covered {int(mults[bad - 1])} times, elsewhere {ref}",
        )
    d = int(uniq[0])
    if d < 2:
        return PerpViolation("d_too_small", detail="covered vectors have multiplicity 1, need d >= 2")
    if (mults == 0).sum() == 0:
        return PerpViolation("all_covered", detail="no vector with multiplicity 0")
    want = q ** (n - 2 * k) - 1
    masks = [_member_mask(ids) for ids in id_lists]
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if (masks[i] & masks[j]).bit_count() != want:
                got = subspace_meet(members[i], members[j]).dim
                return PerpViolation(
                    "pair_meet", pair=(i, j),
                    detail=f"members {i},{j} meet in dimension {got}, expected {n - 2 * k}",
                )
    return PerpSystem(ctx, n, k, members, d, len(members))


# ---------------------------------------------------------------------------
# Parameter admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamCheck:
    rule: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class ParamReport:
    n: int
    k: int
    q: int
    d: int
    s: int | None
    checks: tuple[ParamCheck, ...]

    @property
    def admissible(self) -> bool:
        return all(c.ok for c in self.checks)


def perp_params(n: int, k: int, q: int, d: int) -> ParamReport:
    """Forced member count s plus the admissibility rules for (n,k,q,d)."""
    ctx = field_for_order(q)
    p = ctx.p
    checks: list[ParamCheck] = []
    s: int | None = None

    if k < 1 or 2 * k > n:
        checks.append(ParamCheck("range", False, f"need 1 <= k <= n/2, got k={k}, n={n}"))
    elif d < 2:
        checks.append(ParamCheck("range", False, f"need d >= 2, got d={d}"))
    elif n == 2 * k:
        checks.append(
            ParamCheck(
                "range", False,
                "n = 2k is inadmissible for d >= 2: the member-count formula degenerates "
                "and d would have to be a non-positive power of p",
            )
        )
    else:
        checks.append(ParamCheck("range", True, ""))
        num = (d - 1) * (q ** (n - k) - 1)
        den = q ** (n - 2 * k) - 1
        if num % den:
            checks.append(ParamCheck("count", False, f"member count (d-1)(q^(n-k)-1)/(q^(n-2k)-1)+1 is not an integer"))
        else:
            s = num // den + 1
            checks.append(ParamCheck("count", True, f"s = {s}"))
        # d = q^(n-2k) / p^i for a nonnegative integer i
        dd, is_p_power = d, True
        while dd % p == 0:
            dd //= p
        if dd != 1:
            is_p_power = False
        if not is_p_power or d > q ** (n - 2 * k):
            checks.append(
                ParamCheck(
                    "multiplicity", False,
                    f"d={d} must be a power of {p} dividing q^(n-2k)={q ** (n - 2 * k)}",
                )
            )
        else:
            checks.append(ParamCheck("multiplicity", True, ""))
        if d >= q ** max(n - 3 * k, 0) or n <= 4 * k - 1:
            checks.append(ParamCheck("dimension", True, ""))
        else:
            checks.append(
                ParamCheck(
                    "dimension", False,
                    f"need d >= q^(n-3k) = {q ** (n - 3 * k)} or n <= 4k-1 = {4 * k - 1}",
                )
            )
    return ParamReport(n, k, q, d, s, tuple(checks))


@dataclass(frozen=True)
class HalvedSrgParams:
    v: int
    k: int
    lam: int
    mu: int
    r: int
    s: int
    f1: int
    f2: int

    def tuple4(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)


def perp_srg_params(n: int, k: int, q: int, d: int, s: int) -> HalvedSrgParams:
    """Strongly regular parameters of the distance-two graph on the vectors.

    Everything is exact rational arithmetic; any non-integral parameter or
    multiplicity raises ValueError (the parameter set is inadmissible).
    """
    v = q**n
    mu = Fraction(q ** (n - 2 * k) * s * (s - 1), d * d)
    k_h = Fraction(s, d) * (q ** (n - k) - 1)
    r_e = Fraction(-s, d) + Fraction(q ** (n - k), d)
    s_e = Fraction(-s, d)
    lam = mu - Fraction(2 * s, d) + Fraction(q ** (n - k), d)
    f1 = Fraction(-k_h - (v - 1) * s_e, r_e - s_e)
    f2 = v - 1 - f1
    vals = {"k": k_h, "lambda": lam, "mu": mu, "r": r_e, "s": s_e, "f1": f1, "f2": f2}
    for name, val in vals.items():
        if val.denominator != 1:
            raise ValueError(f"non-integral SRG parameter {name} = {val}")
    out = HalvedSrgParams(
        v, int(k_h), int(lam), int(mu), int(r_e), int(s_e), int(f1), int(f2)
    )
    assert out.mu == out.k + out.r * out.s
    assert out.lam == out.mu + out.r + out.s
    assert out.f1 + out.f2 == out.v - 1
    assert out.k + out.f1 * out.r + out.f2 * out.s == 0
    return out


# ---------------------------------------------------------------------------
# Two-intersection sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoIntersectionSet:
    points: PointSet
    N: int
    K: int
    h1: int
    h2: int
    hyperplanes_h1: int
    hyperplanes_h2: int


def two_intersection_set(system: PerpSystem) -> TwoIntersectionSet:
    """The d-times-covered points, with the hyperplane sizes verified.

    Exhaustively intersects every hyperplane with the point set and
    checks that exactly the two predicted sizes occur.
    """
    ctx, n, k, d, s = system.ctx, system.n, system.k, system.d, system.s
    q = ctx.q
    reps = []
    for w in enumerate_projective_points(ctx, n):
        mult = sum(1 for m in system.members if m.contains(w))
        if mult == d:
            reps.append(w)
    big_n = Fraction(s, d) * qbinom(n - k, 1, q)
    h1 = Fraction(qbinom(n - k, 1, q) + (s - 1) * qbinom(n - k - 1, 1, q), d)
    h2 = Fraction(s * qbinom(n - k - 1, 1, q), d)
    assert big_n.denominator == 1 and h1.denominator == 1 and h2.denominator == 1
    big_n, h1, h2 = int(big_n), int(h1), int(h2)
    if len(reps) != big_n:
        raise AssertionError(f"covered-point count {len(reps)} != predicted {big_n}")
    n1 = n2 = 0
    for w in enumerate_projective_points(ctx, n):
        cnt = sum(1 for y in reps if dot(ctx, w, y) == 0)
        if cnt == h1:
            n1 += 1
        elif cnt == h2:
            n2 += 1
        else:
            raise AssertionError(f"hyperplane {w} meets the point set in {cnt}, expected {h1} or {h2}")
    if h1 != h2 and (n1 == 0 or n2 == 0):
        raise AssertionError("one of the two hyperplane sizes does not occur")
    assert big_n * qbinom(n - 1, 1, q) == n1 * h1 + n2 * h2
    pts = PointSet(ctx, n, frozenset(subspace_make(ctx, n, [w]) for w in reps))
    return TwoIntersectionSet(pts, big_n, n, h1, h2, n1, n2)


# ---------------------------------------------------------------------------
# Dual formulation
# ---------------------------------------------------------------------------

def perp_dualize(system: PerpSystem | DualPerpSystem) -> DualPerpSystem | PerpSystem:
    """Orthogonal-complement dual; applying it twice returns the original.

    Primal -> dual: k-dimensional members, pairwise trivial meets, every
    hyperplane containing 0 or d members (checked exhaustively).
    Dual -> primal: re-verified through :func:`perp_verify`.
    """
    ctx, n, k, d = system.ctx, system.n, system.k, system.d
    duals = tuple(sorted((orthogonal_complement(m) for m in system.members),
                         key=lambda m: m.basis))
    if isinstance(system, DualPerpSystem):
        res = perp_verify(ctx, n, k, duals)
        if isinstance(res, PerpViolation):
            raise AssertionError(f"dual of a dual system failed verification: {res}")
        return res
    for i in range(len(duals)):
        for j in range(i + 1, len(duals)):
            if subspace_meet(duals[i], duals[j]).dim != 0:
                raise AssertionError(f"dual members {i},{j} do not meet trivially")
    seen = set()
    for w in enumerate_projective_points(ctx, n):
        hyp = orthogonal_complement(subspace_make(ctx, n, [w]))
        cnt = sum(1 for m in duals if all(hyp.contains(row) for row in m.basis))
        if cnt not in (0, d):
            raise AssertionError(f"hyperplane {w} contains {cnt} dual members, expected 0 or {d}")
        seen.add(cnt)
    if seen != {0, d}:
        raise AssertionError("hyperplane covering must take both values 0 and d")
    return DualPerpSystem(ctx, n, k, duals, d, system.s)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchOutcome:
    status: str  # found | exhausted | budget
    system: PerpSystem | None
    nodes: int
    elapsed: float
    solutions: int = 0  # populated by count_all runs
    complete: bool = False  # whole space explored (exhausted, or found with count_all)


def perp_search(
    n: int,
    k: int,
    q: int,
    d: int,
    *,
    budget_nodes: int | None = None,
    budget_seconds: float | None = None,
    seed: int = 0,
    count_all: bool = False,
) -> SearchOutcome:
    """Deterministic lexicographic backtracking for a perp system.

    Candidates are the codimension-k subspaces in enumeration order with
    the first member pinned to the least one (the conditions are
    GL-invariant, so this loses no solutions).  Pruning: pairwise meet
    dimension, vector multiplicities capped at d, and completion
    feasibility for partially covered vectors.  ``seed`` is accepted for
    interface stability; the search itself is fully deterministic.

    Returns status ``found`` with a verified system, ``exhausted`` when
    the whole space was explored (with ``solutions`` counted if
    ``count_all``), or ``budget`` when a cap was hit first.
    """
    report = perp_params(n, k, q, d)
    if not report.admissible:
        reasons = "; ".join(c.detail for c in report.checks if not c.ok)
        raise ValueError(f"inadmissible parameters: {reasons}")
    s_target = report.s
    ctx = field_for_order(q)
    cands = list(enumerate_subspaces(ctx, n, n - k))
    ids = [_member_vector_ids(ctx, m) for m in cands]
    masks = [_member_mask(i) for i in ids]
    want = q ** (n - 2 * k) - 1

    counts = np.zeros(q**n, dtype=np.int32)
    chosen: list[int] = []
    best: list[PerpSystem | None] = [None]
    stats = {"nodes": 0, "solutions": 0}
    t0 = time.monotonic()

    def out_of_budget() -> bool:
        if budget_nodes is not None and stats["nodes"] >= budget_nodes:
            return True
        if budget_seconds is not None and stats["nodes"] % 512 == 0:
            return time.monotonic() - t0 > budget_seconds
        return False

    class Budget(Exception):
        pass

    class Found(Exception):
        pass

    def feasible_after_add() -> bool:
        pos = counts[1:]
        part = pos[(pos > 0) & (pos < d)]
        if part.size and d - int(part.min()) > s_target - len(chosen):
            return False
        return True

    def extend(start: int) -> None:
        if len(chosen) == s_target:
            mults = counts[1:]
            uc = np.unique(mults[mults > 0])
            if uc.size == 1 and int(uc[0]) == d and (mults == 0).any():
                stats["solutions"] += 1
                if best[0] is None:
                    res = perp_verify(ctx, n, k, tuple(cands[i] for i in chosen))
                    assert isinstance(res, PerpSystem)
                    best[0] = res
                if not count_all:
                    raise Found
            return
        for idx in range(start, len(cands)):
            stats["nodes"] += 1
            if out_of_budget():
                raise Budget
            mask = masks[idx]
            if any((mask & masks[j]).bit_count() != want for j in chosen):
                continue
            if counts[ids[idx]].max() >= d:
                continue
            counts[ids[idx]] += 1
            chosen.append(idx)
            if feasible_after_add():
                extend(idx + 1)
            chosen.pop()
            counts[ids[idx]] -= 1

    status = "exhausted"
    complete = True
    try:
        counts[ids[0]] += 1
        chosen.append(0)
        extend(1)
    except Found:
        status = "found"
        complete = False
    except Budget:
        status = "budget"
        complete = False
    if best[0] is not None:
        status = "found"
    return SearchOutcome(status, best[0], stats["nodes"], time.monotonic() - t0,
                         stats["solutions"], complete)


def orbit_search(
    n: int,
    k: int,
    q: int,
    d: int,
    *,
    orbit_order: int = 7,
    galois_power: int | None = None,
    budget_seconds: float | None = None,
) -> SearchOutcome:
    """Search for systems invariant under a prescribed cyclic linear group.

    The group generator is multiplication by an element of order
    ``orbit_order`` in the extension field F_{q^n} acting F_q-linearly on
    the vector space; ``orbit_order`` must divide q^n - 1 and have
    multiplicative order n modulo q, so that every subspace orbit is
    free.  All unions of member-orbits satisfying the covering and meet
    conditions are scanned.  With ``galois_power = e`` the group is
    enlarged by x -> a x^(q^e), and single orbits of the larger group are
    tried first -- when the target family is an orbit of such a group
    this finds it in seconds.
    """
    report = perp_params(n, k, q, d)
    if not report.admissible:
        raise ValueError("inadmissible parameters")
    s_target = report.s
    if s_target % orbit_order:
        raise ValueError(f"orbit order {orbit_order} does not divide s = {s_target}")
    if (q**n - 1) % orbit_order:
        raise ValueError(f"orbit order {orbit_order} does not divide q^n - 1")
    ctx = field_for_order(q)
    if ctx.t != 1:
        raise ValueError("orbit_search currently supports prime q only")
    big = field(q, n)  # F_{q^n} with digit vectors as F_q coordinates
    unit_order = q**n - 1
    g = big.generator
    sigma_mult = big.pow(g, unit_order // orbit_order)

    def as_elem(v: tuple[int, ...]) -> int:
        e = 0
        for c in reversed(v):
            e = e * q + c
        return e

    def as_vec(e: int) -> tuple[int, ...]:
        out = []
        for _ in range(n):
            out.append(e % q)
            e //= q
        return tuple(out)

    def apply_mult(m: Subspace, a: int) -> Subspace:
        rows = [as_vec(big.mul(a, as_elem(r))) for r in m.basis]
        return subspace_make(ctx, n, rows)

    t0 = time.monotonic()
    cands = list(enumerate_subspaces(ctx, n, n - k))
    index = {m: i for i, m in enumerate(cands)}
    ids = [_member_vector_ids(ctx, m) for m in cands]
    masks = [_member_mask(i) for i in ids]
    want = q ** (n - 2 * k) - 1

    # group candidates into sigma-orbits
    orbit_of = [-1] * len(cands)
    orbits: list[list[int]] = []
    for i, m in enumerate(cands):
        if orbit_of[i] >= 0:
            continue
        orb = [i]
        orbit_of[i] = len(orbits)
        cur = m
        while True:
            cur = apply_mult(cur, sigma_mult)
            j = index[cur]
            if j == i:
                break
            orbit_of[j] = len(orbits)
            orb.append(j)
        if len(orb) != orbit_order:
            raise AssertionError("subspace orbit is not free; choose another orbit order")
        orbits.append(orb)

    size = q**n

    def orbit_ok(orb: list[int]) -> np.ndarray | None:
        # within-orbit meets and multiplicity cap
        i0 = orb[0]
        for j in orb[1:]:
            if (masks[i0] & masks[j]).bit_count() != want:
                return None
        cnt = np.zeros(size, dtype=np.int16)
        for j in orb:
            cnt[ids[j]] += 1
        if cnt.max() > d:
            return None
        return cnt

    def orbits_compatible(a: list[int], b: list[int]) -> bool:
        i0 = a[0]
        return all((masks[i0] & masks[j]).bit_count() == want for j in b)

    def check_union(group: list[list[int]]) -> PerpSystem | None:
        members = tuple(cands[i] for orb in group for i in orb)
        if len(set(members)) != len(members):
            return None
        res = perp_verify(ctx, n, k, members)
        return res if isinstance(res, PerpSystem) else None

    n_orbits = s_target // orbit_order
    good = [(o, c) for o in orbits if (c := orbit_ok(o)) is not None]

    if galois_power is not None:
        if (3 * galois_power) % n:
            raise ValueError("galois_power e must satisfy n | 3e for an order-3 twist")
        frob_pow = q**galois_power

        def try_twists() -> PerpSystem | None:
            # x -> a x^(q^e) cubes to a scalar map (hence identity on
            # subspaces) iff a^(1 + q^e + q^2e) lies in the prime subfield
            expo = 1 + frob_pow + frob_pow * frob_pow
            twists = [a for a in range(1, q**n) if big.pow(a, expo) < q]

            def apply_twist(m: Subspace, a: int) -> Subspace:
                rows = [as_vec(big.mul(a, big.pow(as_elem(r), frob_pow))) for r in m.basis]
                return subspace_make(ctx, n, rows)

            for a in twists:
                if budget_seconds and time.monotonic() - t0 > budget_seconds:
                    return None
                for orb, _ in good:
                    m0 = cands[orb[0]]
                    group = [orb]
                    cur = m0
                    ok = True
                    for _ in range(n_orbits - 1):
                        cur = apply_twist(cur, a)
                        oid = orbit_of[index[cur]]
                        if any(o is orbits[oid] for o in group):
                            ok = False
                            break
                        group.append(orbits[oid])
                    if not ok or len({id(o) for o in group}) != n_orbits:
                        continue
                    sys_ = check_union(group)
                    if sys_ is not None:
                        return sys_
            return None

        found = try_twists()
        if found is not None:
            return SearchOutcome("found", found, 0, time.monotonic() - t0, 1)

    # general scan over n_orbits-subsets of compatible orbits
    sols = 0
    found_sys: PerpSystem | None = None
    stack: list[tuple[list[int], np.ndarray]] = []

    def rec(start: int, acc: np.ndarray, group: list[list[int]]) -> PerpSystem | None:
        nonlocal sols
        if budget_seconds and time.monotonic() - t0 > budget_seconds:
            raise TimeoutError
        if len(group) == n_orbits:
            total = acc[1:]
            pos = total[total > 0]
            if pos.size and (pos == d).all() and (total == 0).any():
                return check_union(group)
            return None
        for gi in range(start, len(good)):
            orb, cnt = good[gi]
            new = acc + cnt
            if new[1:].max() > d:
                continue
            if any(not orbits_compatible(prev, orb) for prev in group):
                continue
            res = rec(gi + 1, new, group + [orb])
            if res is not None:
                return res
        return None

    try:
        found_sys = rec(0, np.zeros(size, dtype=np.int16), [])
    except TimeoutError:
        return SearchOutcome("budget", None, 0, time.monotonic() - t0, 0)
    if found_sys is not None:
        return SearchOutcome("found", found_sys, 0, time.monotonic() - t0, 1)
    return SearchOutcome("exhausted", None, 0, time.monotonic() - t0, 0)


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

def serialize_perp(system: PerpSystem | DualPerpSystem) -> str:
    ctx = system.ctx
    mod = ",".join(str(c) for c in ctx.modulus)
    lines = [f"q={ctx.p}^{ctx.t} modulus={mod} n={system.n} k={system.k}"]
    for m in sorted(system.members, key=lambda m: m.basis):
        lines.append(";".join(format_vector(ctx, row) for row in m.basis))
    return "\n".join(lines) + "\n"


def parse_perp(text: str) -> tuple[FieldContext, int, int, tuple[Subspace, ...]]:
    """Parse a perp-system file into (ctx, n, k, members), unverified."""
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise ValueError("empty perp file")
    fields = {}
    for tok in lines[0].split():
        key, _, val = tok.partition("=")
        fields[key] = val
    try:
        p_s, _, t_s = fields["q"].partition("^")
        p, t = int(p_s), int(t_s) if t_s else 1
        modulus = tuple(int(c) for c in fields["modulus"].split(","))
        n = int(fields["n"])
        k = int(fields["k"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"line 1: bad header {lines[0]!r}") from exc
    ctx = FieldContext(p, t, modulus)
    members = []
    for no, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        try:
            rows = [parse_vector(ctx, part) for part in line.split(";")]
        except ValueError as exc:
            raise ValueError(f"line {no}: {exc}") from exc
        if any(len(r) != n for r in rows):
            raise ValueError(f"line {no}: vector of wrong length")
        members.append(subspace_make(ctx, n, rows))
    return ctx, n, k, tuple(members)
