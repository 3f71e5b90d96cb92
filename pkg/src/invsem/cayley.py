"""Cayley tables of finite inverse semigroups.

A CayleyTable stores an n x n multiplication table over element indices
0..n-1 and the derived unique-inverse map.  Validation checks
associativity (exhaustively up to a configurable cap, sampled beyond)
and existence/uniqueness of inverses.
"""

from __future__ import annotations

import random

import numpy as np

from .pbij import PartialBijection

ASSOC_EXHAUSTIVE_CAP = 256
ASSOC_SAMPLES = 10**6


class CayleyTable:
    """An n x n multiplication table of an inverse semigroup."""

    __slots__ = ("order", "table", "inverse_map", "identity_index")

    def __init__(self, table, assoc_cap=ASSOC_EXHAUSTIVE_CAP):
        table = tuple(tuple(row) for row in table)
        n = len(table)
        if n < 1:
            raise ValueError("empty table")
        for i, row in enumerate(table):
            if len(row) != n:
                raise ValueError("row %d has length %d, expected %d"
                                 % (i, len(row), n))
            for v in row:
                if not (0 <= v < n):
                    raise ValueError("entry %r out of range" % (v,))
        arr = np.array(table, dtype=np.int64)
        self._check_associativity(arr, n, assoc_cap)
        inverse_map = self._derive_inverses(arr, n)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "inverse_map", inverse_map)
        object.__setattr__(self, "identity_index", self._find_identity(table, n))

    def __setattr__(self, name, value):
        raise AttributeError("CayleyTable is immutable")

    @staticmethod
    def _check_associativity(arr, n, cap):
        if n <= cap:
            # (ij)k as L[i,j,k]; i(jk) as R[i,j,k]
            left = arr[arr.reshape(-1), :].reshape(n, n, n)
            right = arr[:, arr.reshape(-1)].reshape(n, n, n)
            bad = np.argwhere(left != right)
            if len(bad):
                i, j, k = (int(v) for v in bad[0])
                raise ValueError(
                    "not associative at (%d, %d, %d): (%d*%d)*%d != %d*(%d*%d)"
                    % (i, j, k, i, j, k, i, j, k)
                )
        else:
            rng = random.Random(0)
            for _ in range(ASSOC_SAMPLES):
                i = rng.randrange(n)
                j = rng.randrange(n)
                k = rng.randrange(n)
                if arr[arr[i, j], k] != arr[i, arr[j, k]]:
                    raise ValueError(
                        "not associative at sampled (%d, %d, %d)" % (i, j, k)
                    )

    @staticmethod
    def _derive_inverses(arr, n):
        inverse_map = []
        for x in range(n):
            # candidates y with x y x = x and y x y = y
            xy = arr[x, :]
            yx = arr[:, x]
            cand = np.flatnonzero(
                (arr[xy, x] == x) & (arr[yx, np.arange(n)] == np.arange(n))
            )
            if len(cand) != 1:
                raise ValueError(
                    "element %d has %d inverses, expected exactly 1"
                    % (x, len(cand))
                )
            inverse_map.append(int(cand[0]))
        return tuple(inverse_map)

    @staticmethod
    def _find_identity(table, n):
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                return e
        return None

    # -- arithmetic --------------------------------------------------------

    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self.inverse_map[x]

    def is_idempotent(self, x):
        return self.table[x][x] == x

    def idempotents(self):
        return [x for x in range(self.order) if self.is_idempotent(x)]

    def __eq__(self, other):
        return isinstance(other, CayleyTable) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return "CayleyTable(order=%d)" % self.order


def preston_wagner(S):
    """Embed a CayleyTable into I(S): s maps to the partial bijection
    rho_s with t^(rho_s) = ts whenever t s s~ = t.
    """
    n = S.order
    result = []
    for s in range(n):
        e = S.mul(s, S.inv(s))
        images = [None] * n
        for t in range(n):
            if S.mul(t, e) == t:
                images[t] = S.mul(t, s)
        result.append(PartialBijection(n, images))
    return result


def y2_table():
    """The two-element semilattice {1, 0}; index 0 is the identity."""
    return CayleyTable(((0, 1), (1, 1)))


def brandt_table(n, with_identity=False):
    """B(Omega) on n points as a CayleyTable.

    Index 0 is the zero; the singleton map x -> y has index 1 + x*n + y;
    the identity, if adjoined, comes last.

    Returns (table, index) with the same key scheme as pbij.brandt.
    """
    m = 1 + n * n + (1 if with_identity else 0)
    idx = {("zero",): 0}
    for x in range(n):
        for y in range(n):
            idx[(x, y)] = 1 + x * n + y
    if with_identity:
        idx[("one",)] = m - 1
    table = [[0] * m for _ in range(m)]

    def key_of(i):
        if i == 0:
            return ("zero",)
        if with_identity and i == m - 1:
            return ("one",)
        i -= 1
        return (i // n, i % n)

    for i in range(m):
        for j in range(m):
            a, b = key_of(i), key_of(j)
            if a == ("one",):
                table[i][j] = j
            elif b == ("one",):
                table[i][j] = i
            elif a == ("zero",) or b == ("zero",):
                table[i][j] = 0
            else:
                x, y = a
                x2, y2 = b
                table[i][j] = idx[(x, y2)] if y == x2 else 0
    return CayleyTable(table), idx


def direct_product_table(A, B):
    """Componentwise product; (a, b) gets index a*|B| + b."""
    nb = B.order
    table = [
        [
            A.table[i // nb][j // nb] * nb + B.table[i % nb][j % nb]
            for j in range(A.order * nb)
        ]
        for i in range(A.order * nb)
    ]
    return CayleyTable(table)


def from_closure(elements, mul):
    """Export a closed element list as a CayleyTable.

    Returns (table, index) where index maps each element to its 0-based
    position in `elements`.
    """
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != len(elements):
        raise ValueError("duplicate elements")
    table = [
        [index[mul(x, y)] for y in elements]
        for x in elements
    ]
    return CayleyTable(table), index
