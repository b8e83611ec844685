"""The Beauville-Voisin ring R(X) = CH^0 + CH^1 + Z c_X.

An element is a triple (a, l, m): a in CH^0 = Z, l a divisor class in NS,
m the coefficient of the degree-one class c_X. Multiplication follows from
c_1(L) c_1(L') = (L.L') c_X and the vanishing of everything above degree 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .isometry import Isometry
from .lattice import IntegerLattice, LatticeError, norm, pairing
from .mukai import MukaiVector, extended_ns


@dataclass(frozen=True)
class BVClass:
    a: int
    l: tuple[int, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(self.l))

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.a, *self.l, self.m)

    @classmethod
    def from_coords(cls, v: Sequence[int]) -> "BVClass":
        return cls(v[0], tuple(v[1:-1]), v[-1])


def _same(ns: IntegerLattice, *classes: BVClass) -> None:
    for u in classes:
        if len(u.l) != ns.rank:
            raise LatticeError(f"divisor part has length {len(u.l)}, NS has rank {ns.rank}")


def unit(ns: IntegerLattice) -> BVClass:
    return BVClass(1, (0,) * ns.rank, 0)


def point_class(ns: IntegerLattice) -> BVClass:
    """c_X."""
    return BVClass(0, (0,) * ns.rank, 1)


def bv_add(ns: IntegerLattice, u: BVClass, v: BVClass) -> BVClass:
    _same(ns, u, v)
    return BVClass(u.a + v.a, tuple(x + y for x, y in zip(u.l, v.l)), u.m + v.m)


def bv_mul(ns: IntegerLattice, u: BVClass, v: BVClass) -> BVClass:
    _same(ns, u, v)
    return BVClass(
        u.a * v.a,
        tuple(u.a * y + v.a * x for x, y in zip(u.l, v.l)),
        u.a * v.m + v.a * u.m + pairing(ns, u.l, v.l),
    )


def vch_line_bundle(ns: IntegerLattice, l: Sequence[int]) -> BVClass:
    """ch(L) sqrt(td X) = (1 + l + l^2/2 c_X)(1 + c_X) = (1, l, l^2/2 + 1)."""
    _same(ns, BVClass(0, l, 0))
    ll = norm(ns, l)
    if ll % 2:
        raise LatticeError("line bundle class has odd square")
    return BVClass(1, tuple(l), ll // 2 + 1)


def c2_class(ns: IntegerLattice) -> BVClass:
    return BVClass(0, (0,) * ns.rank, 24)


def degree(u: BVClass) -> int:
    """Degree of the CH^2 component (deg c_X = 1)."""
    return u.m


def cycle_class(u: BVClass) -> MukaiVector:
    return MukaiVector(u.a, u.l, u.m)


def from_cycle_class(v: MukaiVector) -> BVClass:
    return BVClass(v.r, v.l, v.s)


@dataclass(frozen=True)
class RAction:
    """Additive endomorphism of R(X) transported from an isometry of the extended lattice."""

    ns: IntegerLattice
    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, u: BVClass) -> BVClass:
        _same(self.ns, u)
        return BVClass.from_coords(linalg.mat_vec(self.matrix, u.coords))


def induced_action_on_R(ns: IntegerLattice, g: Isometry) -> RAction:
    if g.lattice != extended_ns(ns):
        raise LatticeError("isometry does not act on the extended lattice of this NS")
    return RAction(ns, g.matrix)
