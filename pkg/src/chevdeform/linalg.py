"""Exact linear algebra over F_p on numpy integer arrays.

Matrix products are done in float64, which is exact while every partial sum
stays below 2**53; with entries < p <= 2**8 that leaves plenty of room for the
sizes used here.  Reduction mod p follows every product.
"""
from __future__ import annotations

import numpy as np

_EXACT = 2 ** 52


def _dot(a, b, p):
    if a.shape[1] * (p - 1) ** 2 < _EXACT:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    return (a.astype(object) @ b.astype(object)).astype(np.int64) % p


def matmul(a, b, p):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return _dot(a, b, p)


def rref(a, p):
    """Row reduced echelon form.  Returns (rows, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    if a.ndim != 2 or a.shape[0] == 0:
        return a.reshape(0, a.shape[-1] if a.ndim == 2 else 0), []
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(a, p):
    return len(rref(a, p)[1])


def nullspace(a, p):
    """Basis (as rows) of {x : a x = 0}."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    red, piv = rref(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for r, pc in enumerate(piv):
            out[k, pc] = (-red[r, fc]) % p
    return out


def solve(a, b, p):
    """One solution x of a x = b, or None."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.hstack([a, b])
    red, piv = rref(aug, p)
    n = a.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = red[r, n]
    return x


def inverse(a, p):
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    red, piv = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return red[:, n:]


def span_key(rows, p):
    """Canonical hashable key of the row space."""
    red, _ = rref(rows, p)
    return red.tobytes(), red.shape


class Eliminator:
    """Incremental row-echelon basis over F_p.

    Rows are fed in batches; each batch is reduced against the current basis
    with one matrix product, the remainder is echelonized and merged.
    """

    def __init__(self, ncols, p):
        self.n = ncols
        self.p = p
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots = []

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, rows):
        rows = np.asarray(rows, dtype=np.int64) % self.p
        if self.pivots and rows.size:
            coef = rows[:, self.pivots]
            rows = (rows - matmul(coef, self.basis, self.p)) % self.p
        return rows

    def add(self, rows):
        """Add rows; returns the number of new pivots."""
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows.reshape(1, -1)
        if rows.shape[0] == 0 or self.rank == self.n:
            return 0
        rows = self.reduce(rows)
        rows = rows[np.any(rows != 0, axis=1)]
        if rows.shape[0] == 0:
            return 0
        new, newpiv = rref(rows, self.p)
        if self.pivots:
            coef = self.basis[:, newpiv]
            self.basis = (self.basis - matmul(coef, new, self.p)) % self.p
        basis = np.vstack([self.basis, new])
        piv = self.pivots + newpiv
        order = np.argsort(piv, kind="stable")
        self.basis = basis[order]
        self.pivots = [piv[i] for i in order]
        return len(newpiv)

    def contains(self, row):
        r = self.reduce(np.asarray(row).reshape(1, -1))
        return not np.any(r)

    def full(self):
        return self.rank == self.n
