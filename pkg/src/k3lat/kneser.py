"""Kneser's criterion: Witt index, p-ranks, (-2)-witnesses and Weyl group membership.

Under the hypotheses (even, nondegenerate, Witt index >= 2, represents -2,
rk_2 >= 6, rk_3 >= 5) the Weyl group generated by (-2)-reflections equals
the kernel of O(L) -> {+-1} x O(L*/L), the map being (spinor norm,
discriminant action). Membership is therefore decided by two homomorphisms;
an explicit word in (-2)-reflections is searched for separately and is
only ever a certificate, never a refutation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .discriminant import acts_trivially_on_discriminant
from .isometry import Isometry, reflection_isometry, spinor_norm
from .lattice import (EnumerationTooLarge, IntegerLattice, LatticeError, count_vectors_of_norm,
                      enumerate_vectors_of_norm, hyperbolic_summands, norm, signature)

log = logging.getLogger(__name__)

DEFAULT_ENUM_BOUND = 10
DEFAULT_FACTOR_BUDGET = 10_000
DEFAULT_POOL_LIMIT = 50_000


@dataclass(frozen=True)
class KneserReport:
    witt_index: int
    rk2: int
    rk3: int
    minus_two_witness: tuple[int, ...] | None
    hypotheses_met: bool
    failures: tuple[str, ...] = ()


@dataclass(frozen=True)
class WeylMembership:
    applicable: bool
    spinor: int
    discriminant_trivial: bool
    determinant: int
    is_member: bool | None
    factorization: tuple[tuple[int, ...], ...] | None = None
    budget_exhausted: bool = False
    hypotheses: KneserReport | None = field(default=None, compare=False)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def witt_index(lat: IntegerLattice) -> int:
    sig = signature(lat)
    if sig.null:
        raise LatticeError("Witt index requested for a degenerate lattice")
    return min(sig.positive, sig.negative)


def p_rank(lat: IntegerLattice, p: int) -> int:
    """rk_p: maximal rank of a sublattice with discriminant prime to p.

    Equal to the rank of the Gram matrix over F_p: a nonsingular r x r minor
    mod p spans such a sublattice, and the Gram matrix of any such sublattice
    is invertible mod p, which bounds the mod p rank from below.
    """
    if not _is_prime(p):
        raise LatticeError(f"{p} is not prime")
    return linalg.rank_mod_p(lat.gram, p)


def _first_in_box(lat: IntegerLattice, target: int, bound: int) -> tuple[int, ...] | None:
    vecs = enumerate_vectors_of_norm(lat, target, bound, limit=None)
    return vecs[0] if vecs else None


def find_minus_two_vector(lat: IntegerLattice, bound: int) -> tuple[int, ...] | None:
    """A (-2)-vector: read off a hyperbolic summand if there is one, else box search."""
    if bound < 1:
        raise LatticeError("bound must be >= 1")
    for i, j in hyperbolic_summands(lat):
        v = [0] * lat.rank
        v[i] = 1
        v[j] = -1 if lat.gram[i][j] == 1 else 1
        return tuple(v)
    return _first_in_box(lat, -2, bound)


def check_kneser_hypotheses(lat: IntegerLattice, bound: int = DEFAULT_ENUM_BOUND,
                            witness: Sequence[int] | None = None) -> KneserReport:
    if not lat.is_even:
        raise LatticeError("Kneser's criterion needs an even lattice")
    wi = witt_index(lat)
    rk2, rk3 = p_rank(lat, 2), p_rank(lat, 3)
    failures = []
    if witness is not None:
        witness = tuple(witness)
        if norm(lat, witness) != -2:
            raise LatticeError("supplied witness does not have norm -2")
    else:
        try:
            witness = find_minus_two_vector(lat, bound)
        except EnumerationTooLarge as exc:
            log.warning("(-2)-witness search abandoned: %s", exc)
            witness = None
    if wi < 2:
        failures.append(f"witt_index={wi}<2")
    if rk2 < 6:
        failures.append(f"rk2={rk2}<6")
    if rk3 < 5:
        failures.append(f"rk3={rk3}<5")
    if witness is None:
        failures.append(f"no (-2)-vector found within bound {bound}")
    return KneserReport(wi, rk2, rk3, witness, not failures, tuple(failures))


# --- factorization search -------------------------------------------------

def root_pool(lat: IntegerLattice, bound: int, pool_limit: int = DEFAULT_POOL_LIMIT):
    """(-2)-vectors up to sign from the largest box (bound <= ``bound``) that fits.

    If not even the unit box fits within ``pool_limit``, its first
    ``pool_limit`` vectors are used.

    Returns ``(pool, bound_used)``; each reflection appears once, represented
    by the vector whose first nonzero coordinate is positive.
    """
    pool, used = [], 0
    for b in range(1, bound + 1):
        try:
            if count_vectors_of_norm(lat, -2, b) > 2 * pool_limit:
                if b == 1:
                    # even the unit box is too big: keep its lexicographically first part
                    vecs = enumerate_vectors_of_norm(lat, -2, 1, limit=None)
                    pool = [v for v in vecs if next(x for x in v if x) > 0][:pool_limit]
                    used = 1
                    log.info("root pool truncated to %d of %d vectors", len(pool), len(vecs) // 2)
                break
            vecs = enumerate_vectors_of_norm(lat, -2, b, limit=None)
        except EnumerationTooLarge:
            break
        pool = [v for v in vecs if next(x for x in v if x) > 0]
        used = b
    return pool, used


def _displacement(m) -> int:
    n = len(m)
    return sum(abs(m[i][j] - (i == j)) for i in range(n) for j in range(n))


def factor_into_minus_two_reflections(a: Isometry, bound: int = DEFAULT_ENUM_BOUND,
                                      budget: int = DEFAULT_FACTOR_BUDGET,
                                      pool_limit: int = DEFAULT_POOL_LIMIT):
    """Greedy search for a = s_{d_1} o ... o s_{d_k} with every d_i^2 = -2.

    Each round picks the pool vector d minimizing sum|s_d o g - I| and keeps
    it only on a strict decrease. Returns the word or None; None says
    nothing about membership.
    """
    lat = a.lattice
    if a.is_identity:
        return ()
    pool, used = root_pool(lat, bound, pool_limit)
    if not pool:
        return None
    n = lat.rank
    P = np.array(pool, dtype=np.int64)
    PG = P @ np.array(lat.gram, dtype=np.int64)
    g = [list(row) for row in a.matrix]
    eye = np.eye(n, dtype=np.int64)
    score = _displacement(g)
    word: list[tuple[int, ...]] = []
    chunk = max(1, 4_000_000 // (n * n))
    for _ in range(budget):
        if score == 0:
            break
        if max(abs(x) for row in g for x in row) > 1 << 20:
            log.info("factor search stopped: matrix entries grew too large")
            break
        G = np.array(g, dtype=np.int64)
        E = G - eye
        best, best_i = None, -1
        for start in range(0, len(P), chunk):
            Pc = P[start:start + chunk]
            W = PG[start:start + chunk] @ G
            s = np.abs(E[None, :, :] + Pc[:, :, None] * W[:, None, :]).sum(axis=(1, 2))
            i = int(np.argmin(s))
            if best is None or s[i] < best:
                best, best_i = int(s[i]), start + i
        if best >= score:
            break
        d = pool[best_i]
        w = linalg.mat_vec(linalg.transpose(g), linalg.mat_vec(lat.gram, d))
        g = [[g[i][j] + d[i] * w[j] for j in range(n)] for i in range(n)]
        word.append(d)
        score = best
    if score != 0:
        return None
    # s_{d_k} ... s_{d_1} a = id  =>  a = s_{d_1} o ... o s_{d_k}
    m = linalg.identity(n)
    for d in word:
        m = linalg.mat_mul(m, reflection_isometry(lat, d).matrix)
    if m != a.matrix:
        raise AssertionError("factorization failed the round-trip check")
    log.debug("factored with %d letters from a pool of %d (bound %d)", len(word), len(pool), used)
    return tuple(word)


def weyl_group_membership(a: Isometry, bound: int = DEFAULT_ENUM_BOUND,
                          factor_budget: int = DEFAULT_FACTOR_BUDGET,
                          pool_limit: int = DEFAULT_POOL_LIMIT,
                          witness: Sequence[int] | None = None) -> WeylMembership:
    lat = a.lattice
    hyp = check_kneser_hypotheses(lat, bound, witness)
    spin = spinor_norm(a)
    disc = acts_trivially_on_discriminant(a)
    det = linalg.determinant(a.matrix)
    member = (spin == 1 and disc) if hyp.hypotheses_met else None
    word, exhausted = None, False
    if member:
        word = factor_into_minus_two_reflections(a, bound, factor_budget, pool_limit)
        exhausted = word is None
    return WeylMembership(hyp.hypotheses_met, spin, disc, det, member, word, exhausted, hyp)
