"""Shared instance generators for the test suite.

All sampling is seeded by the caller, so test runs are deterministic.
"""

import random

from invsem.pbij import PartialBijection, partial_identity, compose
from invsem.gensys import GeneratorSystem
from invsem.oracle import close, ClosureCapExceeded
from invsem.classify import classify_generated


def rand_pb(rng, n, p_defined=0.7):
    """A random partial bijection on n points."""
    targets = list(range(n))
    rng.shuffle(targets)
    images = [None] * n
    for x in range(n):
        if rng.random() < p_defined:
            images[x] = targets.pop()
    return PartialBijection(n, tuple(images))


def rand_perm_on(rng, n, dom):
    """A random permutation of dom, undefined elsewhere."""
    dom = sorted(dom)
    img = dom[:]
    rng.shuffle(img)
    images = [None] * n
    for x, y in zip(dom, img):
        images[x] = y
    return PartialBijection(n, tuple(images))


def rand_partial_identity(rng, n, p=0.6):
    return partial_identity(n, [x for x in range(n) if rng.random() < p])


def _cycles_of(p, dom):
    seen = set()
    cycles = []
    for x in sorted(dom):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = p[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = p[y]
        cycles.append(cyc)
    return cycles


def clifford_gens(rng, n, k):
    """Restrictions of powers of a single permutation to unions of its
    cycles; every product is again such a restriction, so the closure
    is a Clifford semigroup by construction."""
    dom = [x for x in range(n) if rng.random() < 0.85] or [0]
    p = rand_perm_on(rng, n, dom)
    cycles = _cycles_of(p, dom)
    gens = []
    for _ in range(k):
        chosen = [c for c in cycles if rng.random() < 0.7]
        if not chosen:
            chosen = [rng.choice(cycles)]
        pts = [x for c in chosen for x in c]
        e = partial_identity(n, pts)
        q = compose(e, p)
        for _ in range(rng.randrange(0, 3)):
            q = compose(q, p)
        gens.append(compose(e, q) if rng.random() < 0.5 else e)
    return gens


def sis_gens(rng, n, k):
    """Bijections between blocks of a fixed partition, plus partial
    identities on blocks; the closure acts as a Brandt-style groupoid
    over the blocks."""
    m = rng.choice([1, 2])
    blocks = [list(range(i, min(i + m, n))) for i in range(0, n, m)]
    blocks = [b for b in blocks if len(b) == m]
    gens = []
    for _ in range(k):
        i = rng.randrange(len(blocks))
        j = rng.randrange(len(blocks))
        src = blocks[i]
        dst = blocks[j][:]
        rng.shuffle(dst)
        images = [None] * n
        for x, y in zip(src, dst):
            images[x] = y
        gens.append(PartialBijection(n, tuple(images)))
    return gens


def variety_gens(rng, kind, n, k):
    if kind == "semilattice":
        return [rand_partial_identity(rng, n) for _ in range(k)]
    if kind == "group":
        dom = [x for x in range(n) if rng.random() < 0.8] or [0]
        return [rand_perm_on(rng, n, dom) for _ in range(k)]
    if kind == "clifford":
        return clifford_gens(rng, n, k)
    if kind == "sis":
        return sis_gens(rng, n, k)
    if kind == "general":
        return [rand_pb(rng, n) for _ in range(k)]
    raise ValueError(kind)


KINDS = ("semilattice", "group", "clifford", "sis", "general")


def sample_systems(rng, per_kind, degrees=(2, 6), sig_max=4,
                   closure_cap=2000):
    """(gs, variety name) pairs spanning the solver routes; closures
    stay within closure_cap and are precomputed."""
    out = []
    for kind in KINDS:
        made = 0
        while made < per_kind:
            n = rng.randrange(degrees[0], degrees[1] + 1)
            k = rng.randrange(1, sig_max + 1)
            gens = variety_gens(rng, kind, n, k)
            gs = GeneratorSystem(gens, degree=n)
            try:
                close(gs, cap=closure_cap)
            except ClosureCapExceeded:
                continue
            tag = classify_generated(gs)
            out.append((gs, tag.name))
            made += 1
    return out


K4_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PRISM_EDGES = ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
               (0, 3), (1, 4), (2, 5))


def rand_ncl_machine(rng, shape):
    """A random constraint-logic machine on the K4 or triangular-prism
    frame: random edge weights and a random valid configuration pair."""
    from invsem.ncl import NCLMachine, all_configs
    pairs = K4_EDGES if shape == "k4" else PRISM_EDGES
    nv = 4 if shape == "k4" else 6
    while True:
        edges = tuple((a, b, rng.choice((1, 2))) for a, b in pairs)
        probe = NCLMachine(nv, edges, (0,) * len(edges), (0,) * len(edges))
        configs = all_configs(probe)
        if len(configs) < 2:
            continue
        cs = rng.choice(configs)
        ct = rng.choice(configs)
        return NCLMachine(nv, edges, cs, ct)


def check_munn_lemmas(gs, elements, rng, words_per_graph=30):
    """Exhaustive structural checks of the Munn-graph machinery inside
    one strict inverse closure; returns a list of violation strings."""
    from invsem.munn import orbit_closure, munn_graph, _is_large
    from invsem.oracle import naive_conjugate
    mul = gs.mul
    inv = gs.inv
    n = gs.degree
    violations = []

    # orbit partition of the active points
    active = orbit_closure(gs, range(n))
    orbits = []
    seen = set()
    for x in sorted(active):
        if x not in seen:
            o = orbit_closure(gs, [x])
            orbits.append(o)
            seen |= o

    # the non-empty domain traces partition each orbit
    for o in orbits:
        traces = {frozenset(s.domain() & o) for s in elements}
        traces.discard(frozenset())
        union = set()
        for a in traces:
            union |= a
            for b in traces:
                if a != b and a & b:
                    violations.append("domain traces overlap in an orbit")
        if union != set(o):
            violations.append("domain traces do not cover an orbit")

    # invariant sets of interest: dom(e)^U over the idempotents
    idems = [x for x in elements if gs.is_idempotent(x)]
    deltas = {orbit_closure(gs, e.domain()) for e in idems}
    deltas.discard(frozenset())

    for delta in sorted(deltas, key=sorted):
        M = munn_graph(gs, delta)
        if not M.vertices:
            continue
        out_edges = {}
        for gi, a, b in M.edges:
            out_edges.setdefault(a, []).append((gi, b))
        large_gis = sorted({gi for gi, _, _ in M.edges})

        # words correspond to paths: u~ e_s u = e_t iff the word walks
        # the graph from e_s to e_t
        for _ in range(words_per_graph):
            start = rng.randrange(len(M.vertices))
            word = [rng.choice(large_gis)
                    for _ in range(rng.randrange(1, 5))]
            u = gs.generators[word[0]]
            for gi in word[1:]:
                u = mul(u, gs.generators[gi])
            result = mul(mul(inv(u), M.vertices[start]), u)
            cur = start
            for gi in word:
                if cur is None:
                    break
                step = None
                for egi, a, b in M.edges:
                    if egi == gi and a == cur:
                        step = b
                        break
                cur = step
            for vt, e_t in enumerate(M.vertices):
                walks = cur is not None and cur == vt
                if (result == e_t) != walks:
                    violations.append("path correspondence fails")

        # conjugacy class of a vertex = its component's vertex set
        comp_sets = {}
        for v in range(len(M.vertices)):
            comp_sets.setdefault(M.comp[v], set()).add(M.vertices[v])
        for v, e in enumerate(M.vertices):
            if orbit_closure(gs, e.domain()) != delta:
                continue
            conj_class = {f for f in idems
                          if naive_conjugate(gs, e, f)[0]}
            if conj_class != comp_sets[M.comp[v]]:
                violations.append("component is not the conjugacy class")

        # absorption among delta-large elements
        e_delta = M.e_delta
        large = [s for s in elements if _is_large(gs, delta, s)]
        for s in large:
            es = mul(e_delta, s)
            for t in large:
                et = mul(e_delta, t)
                if es.le(et) and es != et:
                    violations.append("delta-large absorption fails")
    return violations


def sample_sis_systems(rng, count, degrees=(2, 6), closure_cap=200):
    """Systems whose closure is strict inverse (including the smaller
    varieties), degree and closure size bounded."""
    out = []
    tries = 0
    while len(out) < count and tries < count * 60:
        tries += 1
        kind = rng.choice(("sis", "clifford", "semilattice", "group"))
        n = rng.randrange(degrees[0], degrees[1] + 1)
        k = rng.randrange(1, 4)
        gs = GeneratorSystem(variety_gens(rng, kind, n, k), degree=n)
        try:
            cl = close(gs, cap=closure_cap)
        except ClosureCapExceeded:
            continue
        tag = classify_generated(gs)
        if tag.name == "General":
            continue
        out.append((gs, list(cl.elements)))
    return out
