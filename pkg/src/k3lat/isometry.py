"""Isometries of a fixed lattice.

Convention: matrices act on coordinate columns, v -> M v, and M is an
isometry when M^T G M = G.

Spinor norm convention: a reflection in v contributes the sign of
-(v, v)/2, so reflections in negative vectors (in particular in
(-2)-vectors) have trivial spinor norm and reflections in positive vectors
have spinor norm -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .lattice import IntegerLattice, LatticeError, norm, orthogonal_basis, pairing, signature
from .linalg import Matrix


class NotAnIsometryError(LatticeError):
    def __init__(self, message: str, entry: tuple[int, int] | None = None):
        super().__init__(message)
        self.entry = entry


@dataclass(frozen=True)
class Isometry:
    lattice: IntegerLattice
    matrix: Matrix

    def __call__(self, v: Sequence):
        return linalg.mat_vec(self.matrix, v)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def is_identity(self) -> bool:
        return self.matrix == linalg.identity(self.rank)


@dataclass(frozen=True)
class ReflectionFactorization:
    """Reflection vectors v_1..v_k with g = s_{v_1} o s_{v_2} o ... o s_{v_k}."""

    vectors: tuple[tuple[Fraction, ...], ...]
    signs: tuple[int, ...]

    @property
    def spinor(self) -> int:
        out = 1
        for s in self.signs:
            out *= s
        return out

    @property
    def parity(self) -> int:
        return len(self.vectors) % 2


def verify_isometry(lat: IntegerLattice, m: Sequence[Sequence[int]]) -> Isometry:
    n = lat.rank
    if len(m) != n or any(len(row) != n for row in m):
        raise NotAnIsometryError(f"matrix is not {n}x{n}")
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if isinstance(x, bool) or int(x) != x:
                raise NotAnIsometryError(f"entry ({i},{j}) is not an integer", (i, j))
    mat = linalg.freeze(tuple(int(x) for x in row) for row in m)
    pulled = linalg.mat_mul(linalg.transpose(mat), linalg.mat_mul(lat.gram, mat))
    for i in range(n):
        for j in range(n):
            if pulled[i][j] != lat.gram[i][j]:
                raise NotAnIsometryError(
                    f"(M^T G M)[{i}][{j}] = {pulled[i][j]} but G[{i}][{j}] = {lat.gram[i][j]}", (i, j))
    return Isometry(lat, mat)


def identity_isometry(lat: IntegerLattice) -> Isometry:
    return Isometry(lat, linalg.identity(lat.rank))


def _same_lattice(a: Isometry, b: Isometry) -> None:
    if a.lattice != b.lattice:
        raise LatticeError("isometries live on different lattices")


def compose(a: Isometry, b: Isometry) -> Isometry:
    """a o b."""
    _same_lattice(a, b)
    return Isometry(a.lattice, linalg.mat_mul(a.matrix, b.matrix))


def inverse(a: Isometry) -> Isometry:
    inv = linalg.rational_inverse(a.matrix)
    if inv is None:
        raise LatticeError("isometry matrix is singular")
    if any(x.denominator != 1 for row in inv for x in row):
        raise LatticeError("isometry is not invertible over the integers")
    return Isometry(a.lattice, tuple(tuple(int(x) for x in row) for row in inv))


def determinant(a: Isometry) -> int:
    return linalg.determinant(a.matrix)


def reflect(lat: IntegerLattice, v: Sequence, alpha: Sequence) -> tuple:
    """Image of alpha under the reflection fixing v^perp."""
    vv = norm(lat, v)
    if vv == 0:
        raise LatticeError("cannot reflect in an isotropic vector")
    c = Fraction(2 * pairing(lat, alpha, v), 1) / vv
    return tuple(_tidy(Fraction(a) - c * Fraction(x)) for a, x in zip(alpha, v))


def _tidy(x: Fraction):
    return int(x) if x.denominator == 1 else x


def reflection_matrix(lat: IntegerLattice, v: Sequence) -> tuple:
    """Matrix of alpha -> alpha - 2(alpha, v)/(v, v) v; rational in general."""
    vv = norm(lat, v)
    if vv == 0:
        raise LatticeError("cannot reflect in an isotropic vector")
    gv = linalg.mat_vec(lat.gram, v)
    n = lat.rank
    return tuple(
        tuple(_tidy(int(i == j) - Fraction(2 * v[i] * gv[j], 1) / vv) for j in range(n))
        for i in range(n))


def reflection_isometry(lat: IntegerLattice, delta: Sequence[int]) -> Isometry:
    """The integral reflection s_delta: alpha -> alpha + (alpha.delta) delta, delta^2 = -2."""
    lat.check_vector(delta)
    if norm(lat, delta) != -2:
        raise LatticeError(f"reflection_isometry needs a (-2)-vector, got norm {norm(lat, delta)}")
    gd = linalg.mat_vec(lat.gram, delta)
    n = lat.rank
    mat = tuple(tuple(int(i == j) + delta[i] * gd[j] for j in range(n)) for i in range(n))
    return Isometry(lat, mat)


def compose_reflections(lat: IntegerLattice, vectors: Sequence[Sequence]) -> tuple:
    """Matrix of s_{v_1} o ... o s_{v_k} (identity for an empty list)."""
    m = linalg.identity(lat.rank)
    for v in vectors:
        m = linalg.mat_mul(m, reflection_matrix(lat, v))
    return tuple(tuple(_tidy(Fraction(x)) for x in row) for row in m)


def _apply_reflection(h: list[list[Fraction]], gram, v, vv) -> None:
    # h <- s_v o h, in place (rank-one update)
    gv = linalg.mat_vec(gram, v)
    n = len(h)
    w = [Fraction(2, 1) * sum(gv[k] * h[k][j] for k in range(n)) / vv for j in range(n)]
    for i in range(n):
        if v[i]:
            vi = v[i]
            row = h[i]
            for j in range(n):
                if w[j]:
                    row[j] -= vi * w[j]


def cartan_dieudonne_factor(a: Isometry) -> ReflectionFactorization:
    """Write ``a`` as a product of at most 2*rank rational reflections.

    Works through a form-orthogonal basis b_1, ..., b_n in order. At step i
    the partial product h fixes b_1..b_{i-1}; if h(b_i) != b_i it is moved
    back by s_{h(b_i) - b_i}, or by s_{b_i} o s_{h(b_i) + b_i} when the
    difference is isotropic. Reflection vectors are reported as primitive
    integer vectors.
    """
    lat = a.lattice
    basis = orthogonal_basis(lat)
    if any(nb == 0 for _, nb in basis):
        raise LatticeError("Cartan-Dieudonne factorization needs a nondegenerate lattice")
    n = lat.rank
    h = [[Fraction(x) for x in row] for row in a.matrix]
    applied: list[tuple[int, ...]] = []

    def push(v):
        v = linalg.primitive(v)
        vv = linalg.bilinear(lat.gram, v, v)
        _apply_reflection(h, lat.gram, v, vv)
        applied.append(v)

    for b, _ in basis:
        hb = linalg.mat_vec(h, b)
        if all(x == y for x, y in zip(hb, b)):
            continue
        diff = [x - y for x, y in zip(hb, b)]
        if linalg.bilinear(lat.gram, diff, diff) != 0:
            push(diff)
        else:
            push([x + y for x, y in zip(hb, b)])
            push(b)
    if any(h[i][j] != int(i == j) for i in range(n) for j in range(n)):
        raise AssertionError("Cartan-Dieudonne reduction did not reach the identity")
    # s_k ... s_1 a = id  =>  a = s_1 o ... o s_k
    signs = tuple(-1 if linalg.bilinear(lat.gram, v, v) > 0 else 1 for v in applied)
    return ReflectionFactorization(tuple(tuple(Fraction(x) for x in v) for v in applied), signs)


def spinor_norm(a: Isometry) -> int:
    """Real spinor norm in {+1, -1}; (-2)-reflections map to +1."""
    return cartan_dieudonne_factor(a).spinor


def spinor_norm_of_minus_identity(lat: IntegerLattice) -> int:
    return (-1) ** signature(lat).positive


def fixed_sublattice(a: Isometry) -> list[tuple[int, ...]]:
    """Basis of the primitive sublattice of vectors fixed by ``a``."""
    n = a.rank
    diff = tuple(tuple(a.matrix[i][j] - int(i == j) for j in range(n)) for i in range(n))
    return linalg.integer_kernel(diff, n)


def orientation_sign(a: Isometry, plane: Sequence[Sequence]) -> int:
    """Sign of det of the projection of a(plane) back onto span(plane).

    The plane must be positive definite. The answer is a genuine
    orientation comparison when the plane is a maximal positive subspace.
    """
    lat = a.lattice
    pg = [[Fraction(pairing(lat, p, q)) for q in plane] for p in plane]
    diag, _ = linalg.congruent_diagonalize(pg)
    if any(d <= 0 for d in diag):
        raise LatticeError("orientation plane is not positive definite")
    pg_inv = linalg.rational_inverse(pg)
    coeffs = []
    for v in plane:
        img = a(v)
        rhs = [pairing(lat, p, img) for p in plane]
        coeffs.append(linalg.mat_vec(pg_inv, rhs))
    # columns are coefficient vectors; determinant is transpose-invariant
    d = _rational_det(coeffs)
    if d == 0:
        raise LatticeError("projection of the image plane is singular")
    return 1 if d > 0 else -1


def _rational_det(m) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d
