"""Generator systems: an inverse-closed generator list in either input
model (partial bijections or a Cayley table), presenting U = <Sigma>
inside an ambient S.
"""

from __future__ import annotations

from .pbij import PartialBijection, compose, identity

# Virtual adjoined identity for Cayley tables without one; never a valid
# element index.
VIRTUAL_ONE = -1


class GeneratorSystem:
    """A finite inverse-closed generator list.

    model "pb": ambient is the degree n, elements are PartialBijection
    on n points.  model "ct": ambient is a CayleyTable, elements are
    indices into it.  Missing inverses are added at construction.
    """

    def __init__(self, generators, *, degree=None, table=None):
        generators = list(generators)
        if not generators:
            raise ValueError("empty generator list")
        if (degree is None) == (table is None):
            raise ValueError("give exactly one of degree= or table=")
        if table is not None:
            self.model = "ct"
            self.table = table
            self.degree = None
            for g in generators:
                if not (0 <= g < table.order):
                    raise ValueError("generator index %r out of range" % (g,))
        else:
            self.model = "pb"
            self.table = None
            self.degree = degree
            for g in generators:
                if not isinstance(g, PartialBijection) or g.degree != degree:
                    raise ValueError("generator %r not on %d points" % (g, degree))
        # inverse-close, preserving first-seen order
        seen = set()
        closed = []
        for g in generators:
            for h in (g, self.inv(g)):
                if h not in seen:
                    seen.add(h)
                    closed.append(h)
        self.generators = tuple(closed)
        self.adjoined_identity = (
            self.model == "ct" and table.identity_index is None
        )
        # lazy caches (closure, classification, group data)
        self._closure = None
        self._variety = None
        self._bsgs = None

    # -- element operations ------------------------------------------------

    def mul(self, x, y):
        if self.model == "pb":
            return compose(x, y)
        if x == VIRTUAL_ONE:
            return y
        if y == VIRTUAL_ONE:
            return x
        return self.table.table[x][y]

    def inv(self, x):
        if self.model == "pb":
            return x.inverse()
        if x == VIRTUAL_ONE:
            return VIRTUAL_ONE
        return self.table.inverse_map[x]

    @property
    def one(self):
        """The identity of S^1 (adjoined virtually for CT if absent)."""
        if self.model == "pb":
            return identity(self.degree)
        if self.table.identity_index is not None:
            return self.table.identity_index
        return VIRTUAL_ONE

    def is_idempotent(self, x):
        return self.mul(x, x) == x

    def __repr__(self):
        where = ("degree %d" % self.degree if self.model == "pb"
                 else "order %d" % self.table.order)
        return "GeneratorSystem(%s, %d generators, %s)" % (
            self.model, len(self.generators), where)
