"""Exact arithmetic and linear algebra over small finite fields GF(p^t).

Field elements are represented as plain ints in ``0..q-1``.  The base-p
digits of the integer are the coefficients of the canonical residue
polynomial: digit ``i`` is the coefficient of ``x^i``.  For prime fields
this is the usual residue ``0..p-1``.

A :class:`FieldContext` fixes the modulus (a monic irreducible polynomial
of degree ``t`` over GF(p)) and provides all arithmetic through lookup
tables, so every operation is exact integer work -- no floating point.

The default modulus for ``field(p, t)`` is the irreducible monic
polynomial of degree ``t`` whose integer encoding ``c_0 + c_1 p + ... +
p^t`` is least.  This makes element encodings reproducible across runs
without external polynomial tables.

Subspaces of ``F_q^n`` are kept in reduced row-echelon form, which gives
each subspace a unique, hashable representation: two subspaces are equal
iff their echelon bases are identical tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "FieldContext",
    "Subspace",
    "field",
    "field_arith",
    "qbinom",
    "subspace_make",
    "subspace_meet",
    "subspace_join",
    "orthogonal_complement",
    "enumerate_subspaces",
    "enumerate_cosets",
    "enumerate_hyperplanes",
    "enumerate_projective_points",
    "parse_vector",
    "format_vector",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Polynomials over GF(p), little-endian coefficient tuples.  Only used to
# bootstrap the field tables; everything downstream goes through the tables.
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)

def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        _poly_trim(a)
    return a


def _int_to_poly(v: int, p: int) -> list[int]:
    out = []
    while v:
        out.append(v % p)
        v //= p
    return out


def _poly_to_int(a: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * p + c
    return v


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg(m)/2."""
    t = len(m) - 1
    if t < 1 or m[-1] != 1:
        return False
    if t == 1:
        return True
    for deg in range(1, t // 2 + 1):
        for lower in range(p**deg):
            div = _int_to_poly(lower, p) + [0] * (deg - len(_int_to_poly(lower, p))) + [1]
            if not _poly_mod(m, div, p):
                return False
    return True


class FieldContext:
    """Arithmetic context for GF(p^t) with a fixed irreducible modulus.

    All values are immutable after construction and every operation is
    pure, so a context can be shared freely.
    """

    def __init__(self, p: int, t: int, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if t < 1:
            raise ValueError(f"extension degree t={t} must be >= 1")
        q = p**t
        if q > 2**16:
            raise ValueError(f"field order q={q} exceeds supported bound 2^16")
        self.p = p
        self.t = t
        self.q = q
        if modulus is None:
            modulus = self._least_irreducible(p, t)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != t + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree t")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = modulus
        self._build_tables()

    @staticmethod
    def _least_irreducible(p: int, t: int) -> tuple[int, ...]:
        for lower in range(p**t):
            cand = _int_to_poly(lower, p)
            cand = cand + [0] * (t - len(cand)) + [1]
            if _is_irreducible(cand, p):
                return tuple(cand)
        raise RuntimeError("no irreducible polynomial found")  # unreachable

    def _raw_mul(self, a: int, b: int) -> int:
        pa = _int_to_poly(a, self.p)
        pb = _int_to_poly(b, self.p)
        return _poly_to_int(_poly_mod(_poly_mul(pa, pb, self.p), self.modulus, self.p), self.p)

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        # negation / addition work digitwise mod p
        self._neg = [self._digitwise(a, 0, lambda x, y: (-x) % p) for a in range(q)]
        # discrete-log tables over a multiplicative generator
        exp = [1] * max(q - 1, 1)
        log = [0] * q
        candidates = range(2, q) if q > 2 else range(1, 2)
        for g in candidates:
            val, order = 1, 0
            while True:
                order += 1
                val = self._raw_mul(val, g)
                if val == 1:
                    break
            if order == q - 1:
                val = 1
                for i in range(q - 1):
                    exp[i] = val
                    log[val] = i
                    val = self._raw_mul(val, g)
                self.generator = g
                break
        self._exp = exp
        self._log = log
        if q <= 256:
            self._add_table = [
                [self._digitwise(a, b, lambda x, y: (x + y) % p) for b in range(q)]
                for a in range(q)
            ]
        else:
            self._add_table = None

    def _digitwise(self, a: int, b: int, op) -> int:
        p = self.p
        out, mult = 0, 1
        for _ in range(self.t):
            out += op(a % p, b % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._digitwise(a, b, lambda x, y: (x + y) % self.p)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Base-p digit vector of an element (little-endian)."""
        out = []
        for _ in range(self.t):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    # -- comparison / display ------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldContext)
            and (self.p, self.t, self.modulus) == (other.p, other.t, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.t, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(p: int, t: int = 1) -> FieldContext:
    """Shared context for GF(p^t) with the canonical (least) modulus."""
    return FieldContext(p, t)


def field_arith(ctx: FieldContext, op: str, a: int, b: int | None = None) -> int:
    """Dispatch a single arithmetic operation by name.

    ``op`` is one of ``add``, ``mul``, ``inv``, ``pow``; ``b`` is the second
    operand (or the exponent for ``pow``), omitted for ``inv``.
    """
    if op == "add":
        return ctx.add(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "inv":
        return ctx.inv(a)
    if op == "pow":
        return ctx.pow(a, b)
    raise ValueError(f"unknown field operation {op!r}")


def qbinom(n: int, m: int, q: int) -> int:
    """Number of m-dimensional subspaces of F_q^n (Gaussian binomial)."""
    if not 0 <= m <= n:
        raise ValueError(f"qbinom requires 0 <= m <= n, got ({n}, {m})")
    num, den = 1, 1
    for i in range(m):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------------------
# Vectors: tuples of field elements.
# ---------------------------------------------------------------------------

def vec_add(ctx: FieldContext, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(ctx.add(a, b) for a, b in zip(u, v))


def vec_sub(ctx: FieldContext, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(ctx.sub(a, b) for a, b in zip(u, v))


def vec_scale(ctx: FieldContext, c: int, u: Sequence[int]) -> tuple[int, ...]:
    return tuple(ctx.mul(c, a) for a in u)


def dot(ctx: FieldContext, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def vector_index(ctx: FieldContext, v: Sequence[int]) -> int:
    """Rank of a vector in the lexicographic enumeration of F_q^n."""
    idx = 0
    for c in v:
        idx = idx * ctx.q + c
    return idx


def index_vector(ctx: FieldContext, idx: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = idx % ctx.q
        idx //= ctx.q
    return tuple(out)


def parse_vector(ctx: FieldContext, text: str) -> tuple[int, ...]:
    """Parse a comma-separated vector literal; coordinates are base-p digits."""
    coords = []
    for tok in text.strip().split(","):
        tok = tok.strip()
        if not tok:
            raise ValueError(f"empty coordinate in vector literal {text!r}")
        val = int(tok, ctx.p) if ctx.t > 1 else int(tok)
        if not 0 <= val < ctx.q:
            raise ValueError(f"coordinate {tok!r} out of range for {ctx!r}")
        coords.append(val)
    return tuple(coords)


def _digits(val: int, base: int) -> str:
    if val == 0:
        return "0"
    sym = "0123456789abcdef"
    out = []
    while val:
        out.append(sym[val % base])
        val //= base
    return "".join(reversed(out))


def format_vector(ctx: FieldContext, v: Sequence[int]) -> str:
    if ctx.t == 1:
        return ",".join(str(c) for c in v)
    return ",".join(_digits(c, ctx.p) for c in v)


def rref(ctx: FieldContext, rows: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row-echelon form; returns the nonzero rows."""
    work = [list(r) for r in rows]
    for r in work:
        if len(r) != n:
            raise ValueError(f"vector of length {len(r)} in ambient dimension {n}")
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        sel = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        work[rank], work[sel] = work[sel], work[rank]
        inv = ctx.inv(work[rank][col])
        work[rank] = [ctx.mul(inv, x) for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                c = work[i][col]
                work[i] = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return tuple(tuple(r) for r in work[:rank])


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n in canonical reduced row-echelon form.

    Equality and hashing go through the echelon basis, so subspaces can be
    used as set members and dict keys.
    """

    ctx: FieldContext
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x != 0) for row in self.basis)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical coset representative of v modulo this subspace."""
        w = list(v)
        for row, piv in zip(self.basis, self.pivots):
            c = w[piv]
            if c:
                for j in range(piv, self.n):
                    w[j] = self.ctx.sub(w[j], self.ctx.mul(c, row[j]))
        return tuple(w)

    def contains(self, v: Sequence[int]) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """All q^dim vectors of the subspace, deterministic order."""
        ctx = self.ctx
        for coeffs in itertools.product(ctx.elements(), repeat=self.dim):
            v = (0,) * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = vec_add(ctx, v, vec_scale(ctx, c, row))
            yield v

    def __repr__(self) -> str:
        rows = "; ".join(",".join(map(str, r)) for r in self.basis)
        return f"Subspace(n={self.n}, dim={self.dim}, [{rows}])"


def subspace_make(ctx: FieldContext, n: int, vectors: Sequence[Sequence[int]]) -> Subspace:
    """Canonical subspace spanned by the given vectors (may be empty)."""
    return Subspace(ctx, n, rref(ctx, vectors, n))


def subspace_meet(u: Subspace, w: Subspace) -> Subspace:
    """Exact intersection, via the Zassenhaus block trick."""
    if u.ctx != w.ctx or u.n != w.n:
        raise ValueError("subspaces live in different ambient spaces")
    ctx, n = u.ctx, u.n
    block = [list(r) + list(r) for r in u.basis] + [list(r) + [0] * n for r in w.basis]
    reduced = rref(ctx, block, 2 * n)
    inter = [row[n:] for row in reduced if all(x == 0 for x in row[:n])]
    return Subspace(ctx, n, rref(ctx, inter, n))


def subspace_join(u: Subspace, w: Subspace) -> Subspace:
    if u.ctx != w.ctx or u.n != w.n:
        raise ValueError("subspaces live in different ambient spaces")
    return subspace_make(u.ctx, u.n, list(u.basis) + list(w.basis))


def orthogonal_complement(s: Subspace) -> Subspace:
    """Perp under the standard dot bilinear form."""
    ctx, n = s.ctx, s.n
    if s.dim == 0:
        return subspace_make(ctx, n, [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)])
    # nullspace of the basis matrix from its RREF
    pivots = set(s.pivots)
    free = [j for j in range(n) if j not in pivots]
    out = []
    for j in free:
        v = [0] * n
        v[j] = 1
        for row, piv in zip(s.basis, s.pivots):
            v[piv] = ctx.neg(row[j])
        out.append(v)
    return subspace_make(ctx, n, out)


def enumerate_subspaces(ctx: FieldContext, n: int, m: int) -> Iterator[Subspace]:
    """All m-dimensional subspaces of F_q^n, deterministic order.

    Order: pivot-column sets lexicographically, then free echelon entries
    lexicographically (last free cell varies fastest).  The stream can be
    restarted at will and always yields qbinom(n, m, q) subspaces.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got ({n}, {m})")
    if m == 0:
        yield Subspace(ctx, n, ())
        return
    for pivots in itertools.combinations(range(n), m):
        pivot_set = set(pivots)
        free_cells = [
            (i, j)
            for i in range(m)
            for j in range(pivots[i] + 1, n)
            if j not in pivot_set
        ]
        for values in itertools.product(ctx.elements(), repeat=len(free_cells)):
            rows = [[0] * n for _ in range(m)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), val in zip(free_cells, values):
                rows[i][j] = val
            yield Subspace(ctx, n, tuple(tuple(r) for r in rows))


def enumerate_cosets(m: Subspace) -> Iterator[tuple[int, ...]]:
    """Canonical coset representatives of a subspace, deterministic order.

    Representatives are exactly the vectors vanishing on the pivot columns;
    there are q^(n-dim) of them and ``m.reduce`` maps every vector onto its
    representative.
    """
    ctx, n = m.ctx, m.n
    free = [j for j in range(n) if j not in set(m.pivots)]
    for values in itertools.product(ctx.elements(), repeat=len(free)):
        v = [0] * n
        for j, val in zip(free, values):
            v[j] = val
        yield tuple(v)


def enumerate_projective_points(ctx: FieldContext, n: int) -> Iterator[tuple[int, ...]]:
    """Normalized representatives (first nonzero coordinate 1), lex order."""
    for lead in range(n):
        prefix = (0,) * lead + (1,)
        for rest in itertools.product(ctx.elements(), repeat=n - lead - 1):
            yield prefix + rest


def enumerate_hyperplanes(ctx: FieldContext, n: int) -> Iterator[Subspace]:
    """All hyperplanes of F_q^n as perps of projective points, lex order."""
    for w in enumerate_projective_points(ctx, n):
        yield orthogonal_complement(subspace_make(ctx, n, [w]))
