"""Instance generators for the hardness reductions, each paired with a
small-scale checking oracle: graph reachability to Brandt-semigroup
conjugacy/membership, constraint-logic reachability to partial
bijections and to inverse automata, membership to minimum generating
set, and idempotent conjugacy to a single equation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pbij import PartialBijection, partial_identity
from .cayley import brandt_table, y2_table, direct_product_table
from .gensys import GeneratorSystem
from .automata import InverseAutomaton
from .ncl import local_configs, incident_edges, restrict
from .meta import EquationSystem


# -- UGAP to Brandt-semigroup instances ------------------------------------


def gen_ugap_conj(n, edges, s, t):
    """Conjugacy instance over the Brandt-semigroup table of a graph:
    (table, sigma, e_s index, e_t index); e_s ~ e_t in <sigma> iff
    s and t are connected."""
    _check_graph(n, edges, s, t)
    table, idx = brandt_table(n)
    sigma = [idx[(x, x)] for x in range(n)]
    sigma += [idx[(a, b)] for a, b in edges]
    return table, sigma, idx[(s, s)], idx[(t, t)]


def gen_ugap_member(n, edges, s, t):
    """Membership instance through the two-element-semilattice wrapper:
    (table, sigma, target index); target in the closure iff s and t are
    connected."""
    _check_graph(n, edges, s, t)
    btable, idx = brandt_table(n)
    ytable = y2_table()
    table = direct_product_table(btable, ytable)

    def pair(a, marked):
        # the second coordinate: index 0 is the neutral element, index 1
        # the absorbing one (used to mark the special generators)
        return a * 2 + (1 if marked else 0)

    sigma = [pair(idx[(s, s)], True)]
    sigma += [pair(idx[(x, x)], False) for x in range(n)]
    sigma += [pair(idx[(a, b)], False) for a, b in edges]
    target = pair(idx[(t, t)], True)
    return table, sigma, target


def _check_graph(n, edges, s, t):
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError("s or t out of range")
    seen = set()
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise ValueError("bad edge (%r, %r)" % (a, b))
        key = frozenset((a, b))
        if key in seen:
            raise ValueError("parallel edge (%r, %r)" % (a, b))
        seen.add(key)


# -- NCL to partial bijections ---------------------------------------------


@dataclass
class NCLEncoding:
    """Point layout and generators for a constraint-logic machine.

    Points are the local configurations of each vertex, laid out block
    by block; generators reverse one edge when both endpoint blocks
    show a matching local configuration, and act as the identity on all
    other blocks.  labels[i] = (edge, orientation, c1, c2) describes
    generator i.
    """

    machine: object
    degree: int
    offsets: tuple  # per vertex
    locals_: tuple  # per vertex, list of local configurations
    sigma: tuple  # partial bijections
    labels: tuple

    def point(self, v, lc):
        return self.offsets[v] + self.locals_[v].index(lc)

    def idempotent(self, config):
        pts = [self.point(v, restrict(self.machine, config, v))
               for v in range(self.machine.vertices)]
        return partial_identity(self.degree, pts)


def ncl_encode(M):
    locals_ = [local_configs(M, v) for v in range(M.vertices)]
    offsets = []
    total = 0
    for v in range(M.vertices):
        offsets.append(total)
        total += len(locals_[v])
    enc = NCLEncoding(M, total, tuple(offsets),
                      tuple(locals_), (), ())
    sigma = []
    labels = []
    seen = set()
    for i, (a, b, _) in enumerate(M.edges):
        pos_a = incident_edges(M, a).index(i)
        pos_b = incident_edges(M, b).index(i)
        for d in (0, 1):
            for c1 in locals_[a]:
                if c1[pos_a] != d:
                    continue
                c1p = _flip(c1, pos_a)
                if c1p not in locals_[a]:
                    continue
                for c2 in locals_[b]:
                    if c2[pos_b] != d:
                        continue
                    c2p = _flip(c2, pos_b)
                    if c2p not in locals_[b]:
                        continue
                    label = (i, d, c1, c2)
                    if label in seen:
                        continue
                    seen.add(label)
                    images = list(range(total))
                    for v in (a, b):
                        for j in range(len(locals_[v])):
                            images[offsets[v] + j] = None
                    images[enc.point(a, c1)] = enc.point(a, c1p)
                    images[enc.point(b, c2)] = enc.point(b, c2p)
                    sigma.append(PartialBijection(total, images))
                    labels.append(label)
    enc.sigma = tuple(sigma)
    enc.labels = tuple(labels)
    return enc


def _flip(lc, pos):
    out = list(lc)
    out[pos] = 1 - out[pos]
    return tuple(out)


def gen_ncl_conj(M):
    """PB idempotent-conjugacy instance: (encoding, sigma, e_s, e_t);
    conjugate in the generated subsemigroup iff the machine can move
    config_s to config_t."""
    enc = ncl_encode(M)
    if not enc.sigma:
        raise ValueError("machine admits no transitions at all")
    return enc, list(enc.sigma), enc.idempotent(M.config_s), \
        enc.idempotent(M.config_t)


def gen_ncl_member(M):
    """PB idempotent-membership instance on one extra point:
    (encoding, sigma, target)."""
    enc, sigma, e_s, e_t = gen_ncl_conj(M)
    n = enc.degree

    def extend(p, fix_star):
        images = list(p.images) + [n if fix_star else None]
        return PartialBijection(n + 1, images)

    sigma_prime = [extend(u, True) for u in sigma]
    sigma_prime.append(extend(e_s, False))
    sigma_prime.append(extend(e_t, True))
    target = extend(e_t, False)
    return enc, sigma_prime, target


def gen_ncl_automata(M):
    """One two-state inverse automaton per local configuration; the
    intersection of their languages is non-empty iff the machine can
    move config_s to config_t.  Returns (encoding, automata list)."""
    enc = ncl_encode(M)
    alphabet = tuple("u%d" % i for i in range(len(enc.sigma)))
    label_index = {lab: i for i, lab in enumerate(enc.labels)}
    involution = {}
    for i, (e, d, c1, c2) in enumerate(enc.labels):
        pos1 = incident_edges(M, M.edges[e][0]).index(e)
        pos2 = incident_edges(M, M.edges[e][1]).index(e)
        j = label_index[(e, 1 - d, _flip(c1, pos1), _flip(c2, pos2))]
        involution[alphabet[i]] = alphabet[j]
    automata = []
    for v in range(M.vertices):
        for c in enc.locals_[v]:
            transitions = {}
            for i, (e, d, c1, c2) in enumerate(enc.labels):
                a, b, _ = M.edges[e]
                if v == a:
                    mine, flipped = c1, _flip(c1, incident_edges(M, a).index(e))
                elif v == b:
                    mine, flipped = c2, _flip(c2, incident_edges(M, b).index(e))
                else:
                    transitions[alphabet[i]] = PartialBijection(2, (0, 1))
                    continue
                if c == mine:
                    transitions[alphabet[i]] = PartialBijection(2, (1, None))
                elif c == flipped:
                    transitions[alphabet[i]] = PartialBijection(2, (None, 0))
                else:
                    transitions[alphabet[i]] = PartialBijection(2, (None, 1))
            start = 0 if restrict(M, M.config_s, v) == c else 1
            accept = 0 if restrict(M, M.config_t, v) == c else 1
            automata.append(InverseAutomaton(
                2, alphabet, involution, transitions, start,
                frozenset((accept,))))
    return enc, automata


def automata_word_to_transitions(enc, word):
    """Map an intersection witness over the shared alphabet back to the
    edge-reversal sequence it describes."""
    out = []
    for sym in word:
        i = int(sym[1:])
        out.append(enc.labels[i][0])
    return tuple(out)


# -- conjugation-orbit oracle ----------------------------------------------


def conjugation_orbit_decide(gs, s, t, step_check=None):
    """Decide idempotent conjugacy by BFS over {u~ e u} images, without
    closing the generated subsemigroup.  Edges require both defining
    equations, so the search never leaves the conjugacy class of s.
    """
    mul = gs.mul
    inv = gs.inv
    if s == t:
        return True
    seen = {s}
    frontier = [s]
    while frontier:
        nxt = []
        for e in frontier:
            for u in gs.generators:
                ub = inv(u)
                f = mul(mul(ub, e), u)
                if step_check is not None:
                    step_check(e, u, f)
                if f == e or mul(mul(u, f), ub) != e:
                    continue
                if f not in seen:
                    if f == t:
                        return True
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    return False


# -- membership to minimum generating set ----------------------------------


def gen_mgs(gs, t):
    """Tag-point reduction from membership to minimum generating set:
    returns (GeneratorSystem on the enlarged point set, k) such that
    the new subsemigroup is generated by k elements iff t is in the
    original one."""
    if gs.model != "pb":
        raise ValueError("partial-bijection instances only")
    if t.degree != gs.degree:
        raise ValueError("target degree mismatch")
    sigma = gs.generators
    n = gs.degree
    k = 2 * len(sigma)

    def tag(j, copy):
        return n + 2 * j + copy

    gens = [PartialBijection(n + k, tuple(t.images) + (None,) * k)]
    for j, u in enumerate(sigma):
        for copy in (0, 1):
            images = list(u.images) + [None] * k
            images[tag(j, copy)] = tag(j, copy)
            gens.append(PartialBijection(n + k, images))
    return GeneratorSystem(gens, degree=n + k), k


# -- idempotent conjugacy to a single equation -----------------------------


def gen_equation(gs, e_s, e_t):
    """Single equation X~ e_s X = e_t with X constrained to the
    subsemigroup generated by the original generators plus e_s, e_t;
    solvable iff e_s and e_t are conjugate there."""
    if gs.model != "pb":
        raise ValueError("partial-bijection instances only")
    mul = gs.mul
    for e in (e_s, e_t):
        if mul(e, e) != e:
            raise ValueError("targets must be idempotent")
    if len(e_s.domain()) != len(e_t.domain()):
        raise ValueError("targets are not conjugate in the full "
                         "symmetric inverse monoid")
    constraint = GeneratorSystem(
        list(gs.generators) + [e_s, e_t], degree=gs.degree)
    lhs = (("var", "X", True), ("const", e_s, False), ("var", "X", False))
    rhs = (("const", e_t, False),)
    system = EquationSystem(["X"], {"X": constraint}, [(lhs, rhs)])
    system.check()
    return system, constraint
