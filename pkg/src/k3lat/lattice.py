"""Integral lattices given by a symmetric Gram matrix.

Vectors are integer (or rational) coordinate tuples with respect to the
implicit basis of the Gram matrix.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .linalg import Matrix

E8_CARTAN: Matrix = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)

# Cap on the number of box points scanned for a single orthogonal block.
MAX_BLOCK_BOX = 20_000_000
# Default cap on the number of vectors an enumeration may return.
DEFAULT_ENUM_LIMIT = 2_000_000


class LatticeError(ValueError):
    pass


class EnumerationTooLarge(LatticeError):
    """The requested box or result set exceeds the configured resource caps."""

    def __init__(self, message: str, count: int | None = None):
        super().__init__(message)
        self.count = count


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    null: int = 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.null)


@dataclass(frozen=True)
class IntegerLattice:
    gram: Matrix

    def __post_init__(self):
        g = linalg.freeze(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        for i, row in enumerate(g):
            if len(row) != n:
                raise LatticeError(f"Gram row {i} has length {len(row)}, expected {n}")
            for j, x in enumerate(row):
                if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
                    raise LatticeError(f"Gram entry ({i},{j}) is not an integer: {x!r}")
                if x != g[j][i]:
                    raise LatticeError(f"Gram matrix not symmetric at ({i},{j})")
        object.__setattr__(self, "gram", tuple(tuple(int(x) for x in row) for row in g))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_nondegenerate(self) -> bool:
        return determinant(self) != 0

    @property
    def is_unimodular(self) -> bool:
        return abs(determinant(self)) == 1

    def check_vector(self, v: Sequence) -> None:
        if len(v) != self.rank:
            raise LatticeError(f"vector of length {len(v)} used with a rank {self.rank} lattice")

    def __repr__(self):
        return f"IntegerLattice(rank={self.rank}, gram={[list(r) for r in self.gram]})"


def build_named(name: str) -> IntegerLattice:
    """Return one of the building blocks U, E8, E8_MINUS or MINUS_TWO."""
    key = name.strip().upper()
    if key == "U":
        return IntegerLattice(((0, 1), (1, 0)))
    if key == "E8":
        return IntegerLattice(E8_CARTAN)
    if key in ("E8_MINUS", "E8(-1)"):
        return twist(IntegerLattice(E8_CARTAN), -1)
    if key in ("MINUS_TWO", "<-2>"):
        return IntegerLattice(((-2,),))
    raise LatticeError(f"unknown lattice name: {name!r}")


def rank_zero() -> IntegerLattice:
    return IntegerLattice(())


def direct_sum(*parts: IntegerLattice) -> IntegerLattice:
    n = sum(p.rank for p in parts)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for p in parts:
        for i, row in enumerate(p.gram):
            gram[off + i][off:off + p.rank] = row
        off += p.rank
    return IntegerLattice(gram)


def twist(lat: IntegerLattice, n: int) -> IntegerLattice:
    """The lattice with the same basis and form scaled by n."""
    if n == 0:
        raise LatticeError("twist by 0 is not allowed")
    return IntegerLattice(tuple(tuple(n * x for x in row) for row in lat.gram))


def pairing(lat: IntegerLattice, v: Sequence, w: Sequence):
    lat.check_vector(v)
    lat.check_vector(w)
    return linalg.bilinear(lat.gram, v, w)


def norm(lat: IntegerLattice, v: Sequence):
    return pairing(lat, v, v)


def signature(lat: IntegerLattice) -> Signature:
    diag, _ = linalg.congruent_diagonalize(lat.gram)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return Signature(pos, neg, lat.rank - pos - neg)


def determinant(lat: IntegerLattice) -> int:
    return linalg.determinant(lat.gram)


def orthogonal_basis(lat: IntegerLattice) -> list[tuple[tuple[int, ...], int]]:
    """Pairwise orthogonal primitive integer vectors spanning Q^rank, with their norms."""
    _, cols = linalg.congruent_diagonalize(lat.gram)
    out = []
    for c in cols:
        v = linalg.primitive(c)
        out.append((v, norm(lat, v)))
    return out


# --- constructor strings -------------------------------------------------

_ATOM = re.compile(r"\s*(U|E8|<\s*-?\d+\s*>)\s*(?:\(\s*(-?\d+)\s*\))?\s*$", re.IGNORECASE)


def parse_construct(text: str) -> IntegerLattice:
    """Parse strings such as ``"U+U+U+E8(-1)+E8(-1)"`` or ``"<4>+E8(-2)"``.

    Atoms are ``U``, ``E8`` and ``<n>`` (rank one with Gram [[n]]); an
    optional ``(n)`` suffix twists the atom by n.
    """
    if not text.strip():
        raise LatticeError("empty constructor string")
    parts = []
    for token in text.split("+"):
        m = _ATOM.match(token)
        if not m:
            raise LatticeError(f"cannot parse lattice token {token.strip()!r}")
        atom, tw = m.group(1).upper().replace(" ", ""), m.group(2)
        if atom.startswith("<"):
            lat = IntegerLattice(((int(atom[1:-1]),),))
        else:
            lat = build_named(atom)
        if tw is not None:
            lat = twist(lat, int(tw))
        parts.append(lat)
    return direct_sum(*parts)


# --- box enumeration -------------------------------------------------------

def orthogonal_blocks(lat: IntegerLattice) -> list[list[int]]:
    """Index sets of the connected components of the Gram matrix graph."""
    n = lat.rank
    seen = [False] * n
    blocks = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and lat.gram[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        blocks.append(sorted(comp))
    return blocks


class _BlockTable:
    """Norms of every point of the coordinate box of one orthogonal block."""

    def __init__(self, gram: Matrix, bound: int):
        k = len(gram)
        self.k = k
        self.bound = bound
        side = 2 * bound + 1
        total = side ** k
        if total > MAX_BLOCK_BOX:
            raise EnumerationTooLarge(
                f"block of rank {k} has {total} box points at bound {bound} (cap {MAX_BLOCK_BOX})")
        bigness = bound * bound * sum(abs(x) for row in gram for x in row)
        dtype = np.int64 if bigness < 2 ** 62 else object
        g = np.array(gram, dtype=dtype).reshape(k, k)
        self.norms = np.empty(total, dtype=dtype)
        chunk = 1 << 20
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            x = self.decode(idx).astype(dtype)
            self.norms[start:start + len(idx)] = np.einsum("ni,ij,nj->n", x, g, x)
        values, counts = np.unique(self.norms, return_counts=True)
        self.counts = {int(v): int(c) for v, c in zip(values, counts)}

    def decode(self, idx: np.ndarray) -> np.ndarray:
        side = 2 * self.bound + 1
        out = np.empty((len(idx), self.k), dtype=np.int64)
        rem = idx.copy()
        for j in range(self.k - 1, -1, -1):
            out[:, j] = rem % side - self.bound
            rem //= side
        return out

    def vectors(self, value: int) -> np.ndarray:
        return self.decode(np.nonzero(self.norms == value)[0])


def _block_plan(lat: IntegerLattice, target: int, bound: int):
    blocks = orthogonal_blocks(lat)
    tables = []
    for b in blocks:
        sub = tuple(tuple(lat.gram[i][j] for j in b) for i in b)
        tables.append(_BlockTable(sub, bound))
    # combos: list of per-block norm tuples summing to target
    lo = [min(t.counts) for t in tables]
    hi = [max(t.counts) for t in tables]
    suffix_lo = list(itertools.accumulate(reversed(lo)))[::-1] + [0]
    suffix_hi = list(itertools.accumulate(reversed(hi)))[::-1] + [0]
    combos = []

    def walk(i, remaining, chosen):
        if i == len(tables):
            if remaining == 0:
                combos.append(tuple(chosen))
            return
        for value in tables[i].counts:
            rest = remaining - value
            if suffix_lo[i + 1] <= rest <= suffix_hi[i + 1]:
                chosen.append(value)
                walk(i + 1, rest, chosen)
                chosen.pop()

    walk(0, target, [])
    return blocks, tables, combos


def count_vectors_of_norm(lat: IntegerLattice, target: int, bound: int) -> int:
    """Number of box vectors of the given norm, without materializing them."""
    if bound < 1:
        raise LatticeError("bound must be >= 1")
    if lat.rank == 0:
        return int(target == 0)
    _, tables, combos = _block_plan(lat, target, bound)
    total = 0
    for combo in combos:
        c = 1
        for t, value in zip(tables, combo):
            c *= t.counts[value]
        total += c
    return total


def enumerate_vectors_of_norm(lat: IntegerLattice, target: int, bound: int,
                              limit: int | None = DEFAULT_ENUM_LIMIT) -> list[tuple[int, ...]]:
    """All vectors with coordinates in [-bound, bound] and norm ``target``.

    The scan is exhaustive over the box: the Gram matrix is split into its
    orthogonal blocks, each block's box is tabulated by norm, and the tables
    are combined. Output is sorted lexicographically. Raises
    EnumerationTooLarge when more than ``limit`` vectors would be returned.
    """
    if bound < 1:
        raise LatticeError("bound must be >= 1")
    if lat.rank == 0:
        return [()] if target == 0 else []
    blocks, tables, combos = _block_plan(lat, target, bound)
    total = 0
    for combo in combos:
        c = 1
        for t, value in zip(tables, combo):
            c *= t.counts[value]
        total += c
    if limit is not None and total > limit:
        raise EnumerationTooLarge(
            f"{total} vectors of norm {target} in the box of bound {bound} (limit {limit})", total)
    out: list[tuple[int, ...]] = []
    n = lat.rank
    for combo in combos:
        parts = [t.vectors(value).tolist() for t, value in zip(tables, combo)]
        for pieces in itertools.product(*parts):
            v = [0] * n
            for b, piece in zip(blocks, pieces):
                for i, x in zip(b, piece):
                    v[i] = x
            out.append(tuple(v))
    out.sort()
    return out


def hyperbolic_summands(lat: IntegerLattice) -> list[tuple[int, int]]:
    """Index pairs (i, j) spanning an orthogonal summand with Gram [[0, e], [e, 0]], e = +-1."""
    out = []
    for b in orthogonal_blocks(lat):
        if len(b) == 2:
            i, j = b
            if lat.gram[i][i] == 0 and lat.gram[j][j] == 0 and abs(lat.gram[i][j]) == 1:
                out.append((i, j))
    return out

