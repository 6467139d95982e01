"""Exact rank of matrices over Q(zeta_N).

Small matrices are reduced by fraction-free elimination directly over the field.
Large ones use a certified multi-modular rank: for primes p = 1 mod N the ring
Z[zeta_N] maps onto F_p in phi(N) ways (one per primitive N-th root of unity
mod p).  A nonzero rank-(r+1) minor M of an integral matrix cannot vanish
under every such map for a set of primes whose product P satisfies
P > max_sigma |sigma(M)|, because then P divides M and |Norm(M)| >= P^phi.
The Hadamard bound on every complex embedding gives that maximum, so the
modular rank is exact once the primes used cover it.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy import primitive_root
from sympy.ntheory import isprime

from tlj.scalars import Cyclotomic

__all__ = ["exact_rank", "bareiss_rank", "modular_rank", "split_primes"]

# below this many rows*cols the direct field elimination is cheaper
_DIRECT_LIMIT = 64


def exact_rank(rows: Sequence[Sequence[Cyclotomic]], order: int | None = None) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if order is None:
        order = rows[0][0].order
    if len(rows) * len(rows[0]) <= _DIRECT_LIMIT:
        return bareiss_rank(rows)
    return modular_rank(rows, order)


def bareiss_rank(rows: Sequence[Sequence[Cyclotomic]]) -> int:
    """Fraction-free elimination; each division is exact by Sylvester's identity."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = None
    for c in range(ncols):
        pivot = next((i for i in range(rank, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][c]
        inv_prev = prev.inverse() if prev is not None else None
        for i in range(rank + 1, nrows):
            f = m[i][c]
            row = m[i]
            prow = m[rank]
            for j in range(c + 1, ncols):
                v = pv * row[j] - f * prow[j]
                row[j] = v * inv_prev if inv_prev is not None else v
            row[c] = pv * 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


@lru_cache(maxsize=None)
def split_primes(order: int, count: int) -> tuple[int, ...]:
    """The ``count`` largest primes below 2**31 that are 1 mod ``order``."""
    out = []
    candidate = (2**31 - 1) // order * order + 1
    if candidate >= 2**31:
        candidate -= order
    while len(out) < count:
        if isprime(candidate):
            out.append(candidate)
        candidate -= order
    return tuple(out)


@lru_cache(maxsize=None)
def _roots(order: int, p: int) -> tuple[int, ...]:
    """All primitive ``order``-th roots of unity mod p."""
    g = primitive_root(p)
    w = pow(g, (p - 1) // order, p)
    return tuple(pow(w, a, p) for a in range(1, order) if math.gcd(a, order) == 1)


def _integral(rows: Sequence[Sequence[Cyclotomic]]) -> list[list[tuple[int, ...]]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in rows:
        scale = 1
        for x in row:
            scale = scale * x.den // math.gcd(scale, x.den)
        out.append([tuple(c * (scale // x.den) for c in x.num) for x in row])
    return out


def _log_hadamard(num: list[list[tuple[int, ...]]], order: int) -> float:
    """log of a bound on |sigma(minor)| over every embedding and every square minor."""
    deg = len(num[0][0])
    coeffs = np.array([[[float(c) for c in e] for e in row] for row in num])
    best = 0.0
    for a in range(1, order):
        if math.gcd(a, order) != 1:
            continue
        w = np.exp(2j * np.pi * a * np.arange(deg) / order)
        vals = np.abs(coeffs @ w)
        col = np.sum(np.log(np.maximum(1.0, np.sqrt(np.sum(vals**2, axis=0)))))
        row = np.sum(np.log(np.maximum(1.0, np.sqrt(np.sum(vals**2, axis=1)))))
        best = max(best, min(col, row))
    return best * 1.001 + 1.0


def _rank_mod(a: np.ndarray, p: int) -> int:
    a = a % p
    nrows, ncols = a.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1 :, c].copy()
        if below.any():
            a[rank + 1 :] = (a[rank + 1 :] - np.outer(below, a[rank]) % p) % p
        rank += 1
    return rank


def _image(residues: np.ndarray, p: int, w: int) -> np.ndarray:
    """Evaluate the reduced coefficient array (rows, cols, deg) at zeta -> w mod p."""
    acc = np.zeros(residues.shape[:2], dtype=np.int64)
    pw = 1
    for i in range(residues.shape[2]):
        acc = (acc + residues[:, :, i] * pw) % p
        pw = pw * w % p
    return acc


def modular_rank(rows: Sequence[Sequence[Cyclotomic]], order: int) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    full = min(len(rows), len(rows[0]))
    num = _integral(rows)
    need = _log_hadamard(num, order)
    coeffs = np.array(num, dtype=object)
    lower = 0
    covered = 0.0
    count = 4
    used = 0
    while True:
        for p in split_primes(order, count)[used:]:
            used += 1
            residues = (coeffs % p).astype(np.int64)
            for w in _roots(order, p):
                lower = max(lower, _rank_mod(_image(residues, p, w), p))
                if lower == full:
                    return lower
            covered += math.log(p)
            if covered > need:
                return lower
        count *= 2
