"""Extended Neron-Severi (Mukai) lattice, Mukai vectors, chambers and P_0.

The extended lattice of an NS lattice of rank rho has rank rho + 2 with
coordinates (r, l_1..l_rho, s) and the Mukai pairing

    (r, l, s).(r', l', s') = (l.l') - r s' - s r'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .isometry import Isometry, reflection_isometry
from .lattice import IntegerLattice, LatticeError, enumerate_vectors_of_norm, norm, pairing, signature


@dataclass(frozen=True)
class K3LatticeData:
    ns: IntegerLattice
    ample: tuple[int, ...] | None = None
    curve_classes: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        check_ns(self.ns)
        if self.ample is not None:
            object.__setattr__(self, "ample", tuple(self.ample))
            if norm(self.ns, self.ample) <= 0:
                raise LatticeError("ample class must have positive square")
        if self.curve_classes is not None:
            curves = tuple(tuple(c) for c in self.curve_classes)
            object.__setattr__(self, "curve_classes", curves)
            for c in curves:
                if norm(self.ns, c) != -2:
                    raise LatticeError(f"curve class {c} does not have square -2")
                if self.ample is not None and pairing(self.ns, self.ample, c) <= 0:
                    raise LatticeError(f"ample class is not positive on curve class {c}")


@dataclass(frozen=True)
class MukaiVector:
    r: int
    l: tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(self.l))

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.r, *self.l, self.s)

    @classmethod
    def from_coords(cls, v: Sequence[int]) -> "MukaiVector":
        return cls(v[0], tuple(v[1:-1]), v[-1])


@dataclass(frozen=True)
class P0Verdict:
    inside: bool
    positive_definite: bool
    witness: MukaiVector | None
    bound_used: int
    orientation: int | None = None


def check_ns(ns: IntegerLattice) -> None:
    if not ns.is_even:
        raise LatticeError("NS lattice must be even")
    sig = signature(ns)
    if sig.positive != 1 or sig.null != 0:
        raise LatticeError(f"NS lattice must have signature (1, rho-1), got {sig.as_tuple()[:2]}")


def extended_ns(ns: IntegerLattice) -> IntegerLattice:
    """NS + U with basis (e_0, NS basis, e_inf) and (e_0, e_inf) = -1."""
    n = ns.rank + 2
    gram = [[0] * n for _ in range(n)]
    for i, row in enumerate(ns.gram):
        gram[i + 1][1:n - 1] = row
    gram[0][n - 1] = gram[n - 1][0] = -1
    return IntegerLattice(gram)


def _check_l(ns: IntegerLattice, l: Sequence[int]) -> None:
    if len(l) != ns.rank:
        raise LatticeError(f"H^2 part has length {len(l)}, NS has rank {ns.rank}")


def mukai_pairing(ns: IntegerLattice, v: MukaiVector, w: MukaiVector) -> int:
    _check_l(ns, v.l)
    _check_l(ns, w.l)
    return pairing(ns, v.l, w.l) - v.r * w.s - v.s * w.r


def mukai_vector_of_line_bundle(ns: IntegerLattice, l: Sequence[int]) -> MukaiVector:
    """v(L) = (1, l, l^2/2 + 1)."""
    _check_l(ns, l)
    ll = norm(ns, l)
    if ll % 2:
        raise LatticeError("line bundle class has odd square")
    return MukaiVector(1, tuple(l), ll // 2 + 1)


def mukai_vector_of_curve_sheaf(ns: IntegerLattice, c: Sequence[int], i: int) -> MukaiVector:
    """v(O_C(i)) = (0, [C], i + 1) for a smooth rational curve C."""
    _check_l(ns, c)
    if norm(ns, c) != -2:
        raise LatticeError("curve class must have square -2")
    return MukaiVector(0, tuple(c), i + 1)


def spherical_twist_action(ns: IntegerLattice, v: MukaiVector) -> Isometry:
    """Cohomological shadow of the spherical twist: the reflection in v."""
    if mukai_pairing(ns, v, v) != -2:
        raise LatticeError("spherical twist needs a Mukai vector of square -2")
    return reflection_isometry(extended_ns(ns), v.coords)


def extend_isometry_by_identity(g: Isometry) -> Isometry:
    ns = g.lattice
    n = ns.rank + 2
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, row in enumerate(g.matrix):
        m[i + 1][1:n - 1] = row
    return Isometry(extended_ns(ns), linalg.freeze(m))


# --- chambers -------------------------------------------------------------

def is_kahler_class(data: K3LatticeData, alpha: Sequence[int]) -> bool:
    if data.ample is None or data.curve_classes is None:
        raise LatticeError("Kahler test needs an ample class and curve classes")
    ns = data.ns
    if norm(ns, alpha) <= 0 or pairing(ns, alpha, data.ample) <= 0:
        return False
    return all(pairing(ns, alpha, c) > 0 for c in data.curve_classes)


def chamber_normalize(data: K3LatticeData, alpha: Sequence[int], max_steps: int = 1000):
    """Walk alpha into the chamber cut out by the supplied curve classes.

    Returns ``(alpha', word, exhausted)``; word lists the curve classes
    reflected in, in order of application.
    """
    if data.curve_classes is None:
        raise LatticeError("chamber walk needs curve classes")
    ns = data.ns
    alpha = tuple(alpha)
    if norm(ns, alpha) <= 0 or (data.ample is not None and pairing(ns, alpha, data.ample) <= 0):
        raise LatticeError("class is not in the positive cone")
    word = []
    for _ in range(max_steps):
        c = next((c for c in data.curve_classes if pairing(ns, alpha, c) < 0), None)
        if c is None:
            return alpha, word, False
        k = pairing(ns, alpha, c)
        alpha = tuple(a + k * x for a, x in zip(alpha, c))
        word.append(c)
    done = all(pairing(ns, alpha, c) >= 0 for c in data.curve_classes)
    return alpha, word, not done


# --- positive planes and P_0 ------------------------------------------------

def default_positive_plane(data: K3LatticeData) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """(0, w, 0) and (1, 0, -w^2/2) for the ample class w.

    Both have Mukai square w^2 and are orthogonal, so they span a maximal
    positive plane of the extended lattice; comparing orientations there is
    enough for isometries acting trivially on the transcendental part.
    """
    if data.ample is None:
        raise LatticeError("no ample class supplied")
    w = data.ample
    ww = norm(data.ns, w)
    if ww % 2:
        raise LatticeError("ample class has odd square")
    zeros = (0,) * data.ns.rank
    x = tuple(Fraction(t) for t in (0, *w, 0))
    y = tuple(Fraction(t) for t in (1, *zeros, -ww // 2))
    return x, y


def p0_membership(ns: IntegerLattice, x: Sequence, y: Sequence, bound: int = 10,
                  reference_plane: Sequence[Sequence] | None = None) -> P0Verdict:
    """Does the pair (x, y) lie in P_0, as far as the box of radius ``bound`` can tell?"""
    ext = extended_ns(ns)
    x = tuple(Fraction(t) for t in x)
    y = tuple(Fraction(t) for t in y)
    ext.check_vector(x)
    ext.check_vector(y)
    xx, xy, yy = pairing(ext, x, x), pairing(ext, x, y), pairing(ext, y, y)
    if not (xx > 0 and xx * yy - xy * xy > 0):
        return P0Verdict(False, False, None, bound)
    orient = None
    if reference_plane is not None:
        pr = [[pairing(ext, p, q) for q in reference_plane] for p in reference_plane]
        pinv = linalg.rational_inverse(pr)
        cols = [linalg.mat_vec(pinv, [pairing(ext, p, v) for p in reference_plane]) for v in (x, y)]
        det = cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]
        orient = 1 if det > 0 else -1
    gx = linalg.mat_vec(ext.gram, x)
    gy = linalg.mat_vec(ext.gram, y)
    for d in enumerate_vectors_of_norm(ext, -2, bound, limit=None):
        if linalg.dot(d, gx) == 0 and linalg.dot(d, gy) == 0:
            # report the representative with positive leading coordinate
            if next(t for t in d if t) < 0:
                d = tuple(-t for t in d)
            return P0Verdict(False, True, MukaiVector.from_coords(d), bound, orient)
    return P0Verdict(True, True, None, bound, orient)
