"""Cayley-table-model solvers: relative R-equivalence and conjugacy as
undirected reachability, and the greedy membership loop.

If the table lacks an identity, one is adjoined virtually (index n);
tables are never rebuilt.
"""

from __future__ import annotations


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


class CTSolver:
    """Solver state for one (table, Sigma) pair; the reachability
    structures depend only on these and are built once.
    """

    def __init__(self, table, sigma):
        self.table = table
        n = table.order
        for u in sigma:
            if not (0 <= u < n):
                raise ValueError("generator index %r out of range" % (u,))
        # inverse-close Sigma, preserving order
        sig = []
        for u in sigma:
            for v in (u, table.inverse_map[u]):
                if v not in sig:
                    sig.append(v)
        self.sigma = sig
        self.identity = table.identity_index
        if self.identity is None:
            self.identity = n  # virtual adjoined identity
            self.size = n + 1
        else:
            self.size = n
        self._r_uf = None
        self._r_adj = None
        self._conj_uf = None

    # multiplication with the virtual identity
    def mul(self, x, y):
        n = self.table.order
        if x >= n:
            return y
        if y >= n:
            return x
        return self.table.table[x][y]

    def inv(self, x):
        if x >= self.table.order:
            return x
        return self.table.inverse_map[x]

    # -- R_U reachability --------------------------------------------------

    def _build_r(self):
        """Edges {x, y} whenever xu = y and x = y u~ for some u in
        Sigma; connectivity is relative R-equivalence.
        """
        if self._r_uf is not None:
            return
        uf = _UnionFind(self.size)
        adj = [[] for _ in range(self.size)]
        for x in range(self.size):
            for u in self.sigma:
                y = self.mul(x, u)
                if y != x and self.mul(y, self.inv(u)) == x:
                    uf.union(x, y)
                    adj[x].append((y, u))
                    adj[y].append((x, self.inv(u)))
        self._r_uf = uf
        self._r_adj = adj

    def r_equiv(self, s, t):
        self._build_r()
        return self._r_uf.find(s) == self._r_uf.find(t)

    def _r_path_word(self, x, y):
        """A word over Sigma multiplying x to y along R-graph edges."""
        self._build_r()
        if x == y:
            return ()
        prev = {x: None}
        queue = [x]
        qi = 0
        while qi < len(queue):
            z = queue[qi]
            qi += 1
            for w, u in self._r_adj[z]:
                if w not in prev:
                    prev[w] = (z, u)
                    if w == y:
                        word = []
                        while prev[w] is not None:
                            z, u = prev[w]
                            word.append(u)
                            w = z
                        return tuple(reversed(word))
                    queue.append(w)
        raise AssertionError("no R-path between R-equivalent elements")

    # -- conjugacy reachability --------------------------------------------

    def _build_conj(self):
        """Edges {x, y} whenever u~ x u = y and x = u y u~."""
        if self._conj_uf is not None:
            return
        uf = _UnionFind(self.size)
        for x in range(self.size):
            for u in self.sigma:
                ub = self.inv(u)
                y = self.mul(self.mul(ub, x), u)
                if y != x and self.mul(self.mul(u, y), ub) == x:
                    uf.union(x, y)
        self._conj_uf = uf

    def conjugate(self, s, t):
        self._build_conj()
        return self._conj_uf.find(s) == self._conj_uf.find(t)

    # -- greedy membership -------------------------------------------------

    def member(self, t, check=True):
        """Greedy membership: is t in U = <Sigma>?

        Returns (bool, witness word, iterations).  The loop follows the
        published form: starting from the identity, repeatedly pick the
        first y R_U-equivalent to the current x and u in Sigma with
        y u u~ != y and y u u~ y~ t = t, and move to yu.
        """
        self._build_r()
        one = self.identity
        if t == one:
            # The loop normalizes by adjoining 1 to U, so answer t = 1
            # directly.  A virtual identity is part of the normalized
            # problem; a real identity lies in <Sigma> iff some
            # generator has u u~ = 1 (1 is the top idempotent).
            if t == self.table.order:
                return True, (), 0
            for u in self.sigma:
                if self.mul(u, self.inv(u)) == one:
                    return True, (u, self.inv(u)), 0
            return False, None, 0
        sigma = self.sigma
        mul = self.mul
        inv = self.inv
        uf = self._r_uf
        x = one
        word = ()
        iterations = 0
        while True:
            step = None
            x_root = uf.find(x)
            for y in range(self.size):
                if uf.find(y) != x_root:
                    continue
                for u in sigma:
                    yuub = mul(mul(y, u), inv(u))
                    if yuub != y and mul(mul(yuub, inv(y)), t) == t:
                        step = (y, u)
                        break
                if step is not None:
                    break
            if step is None:
                break
            y, u = step
            if check:
                word = word + self._r_path_word(x, y) + (u,)
            x = mul(y, u)
            iterations += 1
            if check:
                # invariants: x in U with the witness word, and x x~ t = t
                acc = one
                for letter in word:
                    acc = mul(acc, letter)
                assert acc == x, "witness word does not evaluate to x"
                assert mul(mul(x, inv(x)), t) == t, "x x~ t = t violated"
            assert iterations <= self.size, "greedy loop exceeded |S| steps"
        if not self.r_equiv(x, t):
            return False, None, iterations
        word = word + self._r_path_word(x, t) if check else None
        return True, word, iterations


def ct_r_equiv(table, sigma, s, t):
    return CTSolver(table, sigma).r_equiv(s, t)


def ct_conjugate(table, sigma, s, t):
    return CTSolver(table, sigma).conjugate(s, t)


def ct_member(table, sigma, t):
    ok, word, _ = CTSolver(table, sigma).member(t)
    return ok, word
