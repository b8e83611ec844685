"""Discriminant group L*/L, its quadratic form, and induced isometry actions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .isometry import Isometry
from .lattice import IntegerLattice, LatticeError
from .linalg import smith_normal_form  # noqa: F401  (part of this module's surface)


@dataclass(frozen=True)
class DiscriminantGroup:
    lattice: IntegerLattice
    divisors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    # columns of the SNF right transform; generator i is column[offset + i] / d_i
    _basis_inverse: tuple = ()

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def coordinates(self, x: Sequence) -> tuple[int, ...]:
        """Coefficients of the class of x in L* on the generators, reduced mod d_i."""
        y = linalg.mat_vec(self._basis_inverse, [Fraction(t) for t in x])
        offset = self.lattice.rank - len(self.divisors)
        out = []
        for i, d in enumerate(self.divisors):
            c = y[offset + i] * d
            if c.denominator != 1:
                raise LatticeError("vector is not in the dual lattice")
            out.append(int(c) % d)
        return tuple(out)


@dataclass(frozen=True)
class DiscriminantAction:
    """Column i holds the generator coordinates of the image of generator i."""

    divisors: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def is_trivial(self) -> bool:
        return all(self.matrix[i][j] == (1 if i == j else 0)
                   for i in range(len(self.divisors)) for j in range(len(self.divisors)))


def discriminant_group(lat: IntegerLattice) -> DiscriminantGroup:
    if linalg.determinant(lat.gram) == 0:
        raise LatticeError("discriminant group of a degenerate lattice")
    s, _, v = smith_normal_form(lat.gram)
    n = lat.rank
    diag = [s[i][i] for i in range(n)]
    offset = next((i for i, d in enumerate(diag) if d > 1), n)
    divisors = tuple(diag[offset:])
    vt = linalg.transpose(v)
    # representatives reduced into [0, 1)^n; the class mod L is unchanged
    gens = tuple(tuple(Fraction(x % d, d) for x in vt[offset + i]) for i, d in enumerate(divisors))
    v_inv = linalg.rational_inverse(v) if n else ()
    return DiscriminantGroup(lat, divisors, gens, v_inv)


def in_dual(lat: IntegerLattice, x: Sequence) -> bool:
    return all(Fraction(t).denominator == 1 for t in linalg.mat_vec(lat.gram, [Fraction(c) for c in x]))


def discriminant_form_value(lat: IntegerLattice, x: Sequence) -> Fraction:
    """(x, x) mod 2Z, returned in [0, 2)."""
    if not lat.is_even:
        raise LatticeError("discriminant quadratic form needs an even lattice")
    x = [Fraction(t) for t in x]
    if not in_dual(lat, x):
        raise LatticeError("vector is not in the dual lattice")
    return linalg.bilinear(lat.gram, x, x) % 2


def induced_discriminant_action(a: Isometry) -> DiscriminantAction:
    disc = discriminant_group(a.lattice)
    k = len(disc.divisors)
    cols = [disc.coordinates(a(g)) for g in disc.generators]
    return DiscriminantAction(disc.divisors, tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)))


def acts_trivially_on_discriminant(a: Isometry) -> bool:
    disc = discriminant_group(a.lattice)
    for g in disc.generators:
        if any((x - y).denominator != 1 for x, y in zip(a(g), g)):
            return False
    return True
