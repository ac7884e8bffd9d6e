"""Feasibility engine for diameter-4, girth-4, non-regular intersection arrays.

A candidate array is the data (k, l, c2B, c3B, c2C, c3C) with c4 equal
to the valency on each line and 2 <= c2 on both sides (girth four).
The implemented necessary conditions:

* integral distance-cell sizes on both sides, consistent across sides
  and with the edge count;
* the product relations tying the two lines together
  (c2B*c3B = c2C*c3C and b1B*b2B = b1C*b2C);
* homogeneity: for i in {2, 3} and both line orientations, whenever the
  scalar Delta_i vanishes the associated triple-intersection constant
  gamma_i must be a non-negative integer;
* both halved graphs must carry consistent strongly-regular parameters
  with integral eigenvalues and multiplicities, non-negative lambda,
  mu <= k, the SRG counting identity, and the two Krein inequalities;
* arrays matching the pattern of the degree-2 maximal-arc family force
  a projective plane of the corresponding order (order 6 and 10 are
  impossible, and Bruck-Ryser applies).

Everything is exact integer/Fraction arithmetic.  ``enumerate_feasible``
reproduces the known table of admissible arrays up to 1300 vertices per
side; arrays that only the homogeneity or plane conditions reject stay
listed with status ``infeasible`` (they are part of the table), while
anything failing a structural condition is not listed at all.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from math import gcd, isqrt
from typing import Iterable

from .bigraph import IntersectionArray

__all__ = [
    "CandidateArray",
    "FeasibilityReport",
    "Condition",
    "DeltaGammaEntry",
    "SrgDerivation",
    "HalvedDerivation",
    "vertex_counts",
    "delorme_relations_check",
    "delta_gamma_check",
    "halved_srg_derive",
    "plane_implication_check",
    "evaluate",
    "enumerate_feasible",
    "reference_table",
    "compare_with_reference",
    "catalog_annotate",
    "rows_to_csv",
    "rows_to_json",
]


@dataclass(frozen=True)
class CandidateArray:
    """Diameter-4 array data; the two c4 entries are the valencies."""

    k: int
    l: int
    c2B: int
    c3B: int
    c2C: int
    c3C: int

    def validate(self) -> None:
        if self.k < 3 or self.l < 3:
            raise ValueError("valencies below 3 cannot carry a girth-4 diameter-4 array")
        if not 2 <= self.c2B <= self.k - 1:
            raise ValueError(f"need 2 <= c2B <= k-1, got c2B={self.c2B}, k={self.k}")
        if not 2 <= self.c2C <= self.l - 1:
            raise ValueError(f"need 2 <= c2C <= l-1, got c2C={self.c2C}, l={self.l}")
        if not 1 <= self.c3B <= self.l - 1:
            raise ValueError(f"need 1 <= c3B <= l-1, got c3B={self.c3B}")
        if not 1 <= self.c3C <= self.k - 1:
            raise ValueError(f"need 1 <= c3C <= k-1, got c3C={self.c3C}")

    def swapped(self) -> "CandidateArray":
        return CandidateArray(self.l, self.k, self.c2C, self.c3C, self.c2B, self.c3B)

    def canonical(self) -> "CandidateArray":
        return self if self.k <= self.l else self.swapped()

    def to_intersection_array(self) -> IntersectionArray:
        return IntersectionArray(
            self.k, self.l,
            (1, self.c2B, self.c3B, self.k),
            (1, self.c2C, self.c3C, self.l),
        )

    @classmethod
    def from_intersection_array(cls, arr: IntersectionArray) -> "CandidateArray":
        if arr.dB != 4 or arr.dC != 4:
            raise ValueError("candidate arrays have covering radius 4 on both sides")
        return cls(arr.k, arr.l, arr.cB[1], arr.cB[2], arr.cC[1], arr.cC[2])

    def __str__(self) -> str:
        return str(self.to_intersection_array())


@dataclass(frozen=True)
class Condition:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class Counts:
    ok: bool
    nB: int | None = None
    nC: int | None = None
    cells_B: tuple[int, ...] | None = None
    cells_C: tuple[int, ...] | None = None
    detail: str = ""


def _side_cells(k: int, l: int, c2: int, c3: int) -> tuple[int, ...] | str:
    """Distance-cell sizes 1, k1..k4 from a base vertex of valency k."""
    cells = [1, k]
    bs = [k, l - 1, k - c2, l - c3, 0]
    cs = [1, c2, c3, k]
    for i in (1, 2, 3):
        num = cells[-1] * bs[i]
        den = cs[i]
        if num % den:
            return f"k_{i + 1} = {num}/{den} is not an integer"
        cells.append(num // den)
    return tuple(cells)


def vertex_counts(a: CandidateArray) -> Counts:
    """Exact class sizes from the distance-cell recursion, both sides."""
    cb = _side_cells(a.k, a.l, a.c2B, a.c3B)
    if isinstance(cb, str):
        return Counts(False, detail=f"B side: {cb}")
    cc = _side_cells(a.l, a.k, a.c2C, a.c3C)
    if isinstance(cc, str):
        return Counts(False, detail=f"C side: {cc}")
    nB = 1 + cb[2] + cb[4]
    nC = cb[1] + cb[3]
    nC_check = 1 + cc[2] + cc[4]
    nB_check = cc[1] + cc[3]
    if (nB, nC) != (nB_check, nC_check):
        return Counts(
            False, detail=f"cell counts disagree across sides: ({nB},{nC}) vs ({nB_check},{nC_check})"
        )
    if a.k * nB != a.l * nC:
        return Counts(False, detail="edge count differs between the sides")
    return Counts(True, nB, nC, cb, cc)


def delorme_relations_check(a: CandidateArray) -> Condition:
    """The two product identities linking the array lines."""
    lhs1, rhs1 = a.c2B * a.c3B, a.c2C * a.c3C
    lhs2, rhs2 = (a.l - 1) * (a.k - a.c2B), (a.k - 1) * (a.l - a.c2C)
    if lhs1 != rhs1:
        return Condition("products", False, f"c2*c3 differ: {lhs1} != {rhs1}")
    if lhs2 != rhs2:
        return Condition("products", False, f"b1*b2 differ: {lhs2} != {rhs2}")
    return Condition("products", True)


@dataclass(frozen=True)
class DeltaGammaEntry:
    i: int
    orientation: str  # "as-given" | "swapped"
    delta: Fraction
    gamma: Fraction | None  # set when delta == 0
    ok: bool


def _delta_gamma(a: CandidateArray) -> list[DeltaGammaEntry]:
    out = []
    for orientation in ("as-given", "swapped"):
        arr = a if orientation == "as-given" else a.swapped()
        k, l = arr.k, arr.l
        b1B, b2B = l - 1, k - arr.c2B
        b2C, b3C = l - arr.c2C, k - arr.c3C
        c4C = l
        # distance 2: own-line quantities with the cross factor (c2C - 1)
        den2 = b2B * (arr.c3B - 1) + arr.c2B * (b1B - 1)
        delta2 = Fraction((b1B - 1) * (arr.c3B - 1)) - Fraction(den2 * (arr.c2C - 1), arr.c2B)
        gamma2 = Fraction(arr.c2B * arr.c2B * (b1B - 1), den2) if delta2 == 0 else None
        out.append(
            DeltaGammaEntry(2, orientation, delta2, gamma2,
                            gamma2 is None or (gamma2.denominator == 1 and gamma2 >= 0))
        )
        # distance 3: other-line quantities
        den3 = b3C * (c4C - 1) + arr.c3C * (b2C - 1)
        delta3 = Fraction((b2C - 1) * (c4C - 1)) - Fraction(den3 * (arr.c2C - 1), arr.c2B)
        gamma3 = Fraction(arr.c2B * arr.c3C * (b2C - 1), den3) if delta3 == 0 else None
        out.append(
            DeltaGammaEntry(3, orientation, delta3, gamma3,
                            gamma3 is None or (gamma3.denominator == 1 and gamma3 >= 0))
        )
    return out


def delta_gamma_check(a: CandidateArray) -> tuple[Condition, list[DeltaGammaEntry]]:
    """Homogeneity test at distances 2 and 3, in both line orientations.

    Wherever the scalar Delta vanishes, the triple-intersection constant
    gamma is forced and must be a non-negative integer.
    """
    entries = _delta_gamma(a)
    bad = [e for e in entries if not e.ok]
    if bad:
        e = bad[0]
        return (
            Condition(
                "homogeneity", False,
                f"gamma_{e.i} = {e.gamma} ({e.orientation}) must be a non-negative integer",
            ),
            entries,
        )
    return Condition("homogeneity", True), entries


@dataclass(frozen=True)
class HalvedDerivation:
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


@dataclass(frozen=True)
class SrgDerivation:
    ok: bool
    theta: int | None = None
    B: HalvedDerivation | None = None
    C: HalvedDerivation | None = None
    detail: str = ""


def _krein_ok(p: HalvedDerivation) -> bool:
    k, r, s = p.k, p.r, p.s
    return (r + 1) * (k + r + 2 * r * s) <= (k + r) * (s + 1) ** 2 and (
        (s + 1) * (k + s + 2 * r * s) <= (k + s) * (r + 1) ** 2
    )


def _derive_side(v: int, val: int, c2: int, theta: int, kl: int) -> HalvedDerivation | str:
    # halved valency = number of vertices at distance two
    k_h_f = Fraction(val * (kl // val - 1), c2)
    r_f = Fraction(theta - val, c2)
    s_f = Fraction(-val, c2)
    if k_h_f.denominator != 1 or r_f.denominator != 1 or s_f.denominator != 1:
        return "non-integral halved eigenvalue"
    k_h, r, s = int(k_h_f), int(r_f), int(s_f)
    mu = k_h + r * s
    lam = mu + r + s
    if r < 0 or s >= 0 or r <= s:
        return f"eigenvalues out of order: r={r}, s={s}"
    f1_f = Fraction(-k_h - (v - 1) * s, r - s)
    f2_f = (v - 1) - f1_f
    if f1_f.denominator != 1:
        return f"non-integral multiplicity f1 = {f1_f}"
    f1, f2 = int(f1_f), int(f2_f)
    if f1 < 0 or f2 < 0:
        return f"negative multiplicity (f1={f1}, f2={f2})"
    if lam < 0:
        return f"negative lambda = {lam}"
    if mu < 1 or mu > k_h:
        return f"mu = {mu} outside [1, k]"
    if k_h * (k_h - lam - 1) != (v - k_h - 1) * mu:
        return "SRG counting identity fails"
    p = HalvedDerivation(v, k_h, lam, mu, r, s, f1, f2)
    if not _krein_ok(p):
        return f"Krein condition fails for ({v},{k_h},{lam},{mu})"
    return p


def halved_srg_derive(a: CandidateArray) -> SrgDerivation:
    """Strongly-regular parameters of both halved graphs, or a rejection.

    The middle eigenvalue theta of the walk matrix is forced by the
    array (the trace of the squared side-quotient); each halved graph
    then has eigenvalues k_H, (theta-val)/c2, -val/c2.
    """
    counts = vertex_counts(a)
    if not counts.ok:
        return SrgDerivation(False, detail=f"cell counts: {counts.detail}")
    k, l = a.k, a.l
    kl = k * l
    theta = k + (l - 1) * a.c2B + (k - a.c2B) * a.c3B + (l - a.c3B) * k - kl
    theta_c = l + (k - 1) * a.c2C + (l - a.c2C) * a.c3C + (k - a.c3C) * l - kl
    if theta != theta_c:
        return SrgDerivation(False, detail=f"walk traces disagree: {theta} vs {theta_c}")
    if theta <= 0 or theta >= kl:
        return SrgDerivation(False, detail=f"middle eigenvalue {theta} outside (0, kl)")
    side_b = _derive_side(counts.nB, k, a.c2B, theta, kl)
    if isinstance(side_b, str):
        return SrgDerivation(False, theta=theta, detail=f"B side: {side_b}")
    side_c = _derive_side(counts.nC, l, a.c2C, theta, kl)
    if isinstance(side_c, str):
        return SrgDerivation(False, theta=theta, detail=f"C side: {side_c}")
    return SrgDerivation(True, theta, side_b, side_c)


def _sum_of_two_squares(n: int) -> bool:
    for x in range(isqrt(n) + 1):
        y2 = n - x * x
        r = isqrt(y2)
        if r * r == y2:
            return True
    return False


def plane_implication_check(a: CandidateArray) -> Condition:
    """Arrays of the degree-2 maximal-arc shape force a projective plane.

    Pattern (canonical orientation): {n+2; 1, 2, n(n+1)/2, n+2 | n^2; 1,
    n, n+1, n^2}.  Orders 6 and 10 are impossible; n congruent to 1 or 2
    mod 4 must be a sum of two squares (Bruck-Ryser).
    """
    c = a.canonical()
    n = c.c2C
    if (
        c.c2B == 2
        and c.k == n + 2
        and c.l == n * n
        and c.c3C == n + 1
        and 2 * c.c3B == n * (n + 1)
    ):
        if n in (6, 10):
            return Condition("plane", False, f"requires a projective plane of order {n}")
        if n % 4 in (1, 2) and not _sum_of_two_squares(n):
            return Condition(
                "plane", False,
                f"requires a projective plane of order {n}, excluded by Bruck-Ryser",
            )
        return Condition("plane", True, f"matches the plane pattern with admissible order {n}")
    return Condition("plane", True)


@dataclass(frozen=True)
class FeasibilityReport:
    array: CandidateArray
    counts: Counts
    conditions: tuple[Condition, ...]
    delta_gamma: tuple[DeltaGammaEntry, ...]
    srg: SrgDerivation
    status: str  # feasible | infeasible | flagged
    reasons: tuple[str, ...]

    @property
    def structurally_sound(self) -> bool:
        """Counts, products, and halved-SRG admissibility all hold."""
        return self.counts.ok and self.srg.ok and all(
            c.ok for c in self.conditions if c.name == "products"
        )


def evaluate(a: CandidateArray) -> FeasibilityReport:
    """Run every implemented condition on one candidate array."""
    a.validate()
    counts = vertex_counts(a)
    conditions: list[Condition] = []
    reasons: list[str] = []
    if not counts.ok:
        conditions.append(Condition("counts", False, counts.detail))
        reasons.append(counts.detail)
    else:
        conditions.append(Condition("counts", True))
    prod = delorme_relations_check(a)
    conditions.append(prod)
    if not prod.ok:
        reasons.append(prod.detail)
    hom, entries = delta_gamma_check(a)
    conditions.append(hom)
    if not hom.ok:
        reasons.append(hom.detail)
    srg = halved_srg_derive(a)
    conditions.append(Condition("halved-srg", srg.ok, srg.detail))
    if not srg.ok:
        reasons.append(f"halved graphs: {srg.detail}")
    plane = plane_implication_check(a)
    conditions.append(plane)
    if not plane.ok:
        reasons.append(plane.detail)

    if all(c.ok for c in conditions):
        gamma_notes = [e for e in entries if e.gamma is not None]
        status = "flagged" if (gamma_notes or plane.detail) else "feasible"
        for e in gamma_notes:
            reasons.append(f"gamma_{e.i} = {int(e.gamma)} ({e.orientation})")
        if plane.detail:
            reasons.append(plane.detail)
    else:
        status = "infeasible"
    return FeasibilityReport(a, counts, tuple(conditions), tuple(entries), srg,
                             status, tuple(reasons))


def enumerate_feasible(max_side: int) -> list[FeasibilityReport]:
    """All canonical (k < l) arrays with both classes at most max_side.

    The listing keeps every array whose structural conditions hold;
    homogeneity and plane failures are reported as ``infeasible`` status
    on listed rows.  Output is a pure function of max_side, sorted by
    (nB, nC, k, l, c2B, c3B).
    """
    if max_side < 2:
        raise ValueError("max_side must be at least 2")
    rows: list[FeasibilityReport] = []
    for k in range(3, max_side + 1):
        if k * k // (k - 1) > max_side - 2:
            break
        for c2b in range(2, k):
            g1 = gcd(k - c2b, k - 1)
            m1 = (k - 1) // g1
            m2 = c2b // gcd(k, c2b)
            step = m1 * m2 // gcd(m1, m2)
            lmax_minus1 = (max_side - 2) * c2b // k
            first = ((k - 1) // step + 1) * step  # smallest multiple of step with l > k
            for l_minus1 in range(first, lmax_minus1 + 1, step):
                l = l_minus1 + 1
                c2c = l - (l_minus1 * (k - c2b)) // (k - 1)
                if not 2 <= c2c <= l - 1:
                    continue
                g3 = gcd(c2b, c2c)
                step3 = c2c // g3
                c3b_max = min(l - 1, (k - 1) * c2c // c2b)
                for c3b in range(step3, c3b_max + 1, step3):
                    c3c = c2b * c3b // c2c
                    if not 1 <= c3c <= k - 1:
                        continue
                    cand = CandidateArray(k, l, c2b, c3b, c2c, c3c)
                    counts = vertex_counts(cand)
                    if not counts.ok or counts.nB > max_side or counts.nC > max_side:
                        continue
                    report = evaluate(cand)
                    if report.structurally_sound:
                        rows.append(report)
    rows.sort(key=lambda r: (r.counts.nB, r.counts.nC, r.array.k, r.array.l,
                             r.array.c2B, r.array.c3B))
    return rows


# ---------------------------------------------------------------------------
# Reference catalog
# ---------------------------------------------------------------------------

def reference_table(path: str | None = None) -> list[dict]:
    """Curated catalog of the known feasible-array table with statuses."""
    if path is None:
        text = resources.files("dbrg").joinpath("data/catalog.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    rows = data["rows"]
    for row in rows:
        if row["status"] not in ("exists", "unknown", "nonexistent"):
            raise ValueError(f"catalog status {row['status']!r} invalid")
        IntersectionArray.parse(row["array"])  # syntax check
    return rows


def _canon_key(arr: IntersectionArray) -> str:
    a = CandidateArray.from_intersection_array(arr).canonical()
    return str(a)


def compare_with_reference(
    rows: list[FeasibilityReport], reference: list[dict]
) -> tuple[list[str], list[FeasibilityReport], list[str]]:
    """Split into (matched keys, extra rows, missing keys) vs the catalog."""
    have = {_canon_key(r.array.to_intersection_array()): r for r in rows}
    ref_keys = {_canon_key(IntersectionArray.parse(row["array"])) for row in reference}
    matched = sorted(k for k in have if k in ref_keys)
    extras = [have[k] for k in sorted(have) if k not in ref_keys]
    missing = sorted(k for k in ref_keys if k not in have)
    return matched, extras, missing


def catalog_annotate(rows: list[FeasibilityReport], catalog: list[dict]) -> list[dict]:
    """Join computed verdicts with curated statuses.

    A computed-infeasible row whose catalog status is ``exists`` is a
    hard error: one of the two is wrong.
    """
    by_key = {_canon_key(IntersectionArray.parse(row["array"])): row for row in catalog}
    out = []
    for rep in rows:
        key = _canon_key(rep.array.to_intersection_array())
        cat = by_key.get(key)
        status = cat["status"] if cat else "extra"
        if cat and rep.status == "infeasible" and cat["status"] == "exists":
            raise ValueError(
                f"catalog conflict for {key}: computed infeasible "
                f"({'; '.join(rep.reasons)}) but catalog says it exists"
            )
        out.append(
            {
                "array": key,
                "computed_status": rep.status,
                "reasons": list(rep.reasons),
                "catalog_status": status,
                "note": cat.get("note", "") if cat else "not in reference table",
                "halved_B": list(rep.srg.B.tuple4()),
                "halved_C": list(rep.srg.C.tuple4()),
            }
        )
    return out


# ---------------------------------------------------------------------------
# Output formats
# ---------------------------------------------------------------------------

_CSV_COLUMNS = ["k", "c2B", "c3B", "l", "c2C", "c3C", "nB", "nC",
                "srgB", "srgC", "status", "reasons"]


def rows_to_csv(rows: Iterable[FeasibilityReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for r in rows:
        a = r.array
        writer.writerow(
            [
                a.k, a.c2B, a.c3B, a.l, a.c2C, a.c3C,
                r.counts.nB, r.counts.nC,
                "(%d,%d,%d,%d)" % r.srg.B.tuple4(),
                "(%d,%d,%d,%d)" % r.srg.C.tuple4(),
                r.status,
                "; ".join(r.reasons),
            ]
        )
    return buf.getvalue()


def rows_to_json(rows: Iterable[FeasibilityReport]) -> str:
    payload = []
    for r in rows:
        a = r.array
        payload.append(
            {
                "array": str(a),
                "k": a.k, "l": a.l,
                "c2B": a.c2B, "c3B": a.c3B, "c2C": a.c2C, "c3C": a.c3C,
                "nB": r.counts.nB, "nC": r.counts.nC,
                "cells_B": list(r.counts.cells_B),
                "cells_C": list(r.counts.cells_C),
                "theta": r.srg.theta,
                "srgB": {
                    "params": list(r.srg.B.tuple4()),
                    "eigenvalues": [r.srg.B.r, r.srg.B.s],
                    "multiplicities": [r.srg.B.f1, r.srg.B.f2],
                },
                "srgC": {
                    "params": list(r.srg.C.tuple4()),
                    "eigenvalues": [r.srg.C.r, r.srg.C.s],
                    "multiplicities": [r.srg.C.f1, r.srg.C.f2],
                },
                "delta_gamma": [
                    {
                        "i": e.i,
                        "orientation": e.orientation,
                        "delta": str(e.delta),
                        "gamma": None if e.gamma is None else str(e.gamma),
                        "ok": e.ok,
                    }
                    for e in r.delta_gamma
                ],
                "status": r.status,
                "reasons": list(r.reasons),
            }
        )
    return json.dumps({"rows": payload}, indent=2) + "\n"
