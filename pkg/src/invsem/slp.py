"""Straight-line programs over a generator list, with the constructive
length-bounded builders: greedy minimal factorization for semilattices,
BFS / cube-doubling for groups, and the two-phase Clifford
construction.

An SLP is a sequence of items, each Gen(i) (a generator reference),
Mul(i, j) or Inv(i) with strictly earlier operand indices, plus the
index of the item computing the target.
"""

from __future__ import annotations

from dataclasses import dataclass

BFS_THRESHOLD = 4096
CUBE_CAP = 10**5


class NotGenerated(Exception):
    """The target is not in the span of the generators."""


@dataclass(frozen=True)
class SLP:
    items: tuple  # of ("g", i) | ("m", i, j) | ("i", i)
    target: int

    def __len__(self):
        return len(self.items)

    def validate(self, n_gens):
        for pos, item in enumerate(self.items):
            kind = item[0]
            if kind == "g":
                if not (0 <= item[1] < n_gens):
                    raise ValueError("item %d: bad generator index" % pos)
            elif kind == "m":
                if not (0 <= item[1] < pos and 0 <= item[2] < pos):
                    raise ValueError("item %d: operand not earlier" % pos)
            elif kind == "i":
                if not (0 <= item[1] < pos):
                    raise ValueError("item %d: operand not earlier" % pos)
            else:
                raise ValueError("item %d: unknown kind %r" % (pos, kind))
        if not (0 <= self.target < len(self.items)):
            raise ValueError("target index out of range")


def slp_eval(gs, slp):
    """Evaluate over a GeneratorSystem (or anything with generators,
    mul, inv)."""
    return slp_eval_low(gs.generators, gs.mul, gs.inv, slp)


def slp_eval_low(gens, mul, inv, slp):
    slp.validate(len(gens))
    values = []
    for item in slp.items:
        if item[0] == "g":
            values.append(gens[item[1]])
        elif item[0] == "m":
            values.append(mul(values[item[1]], values[item[2]]))
        else:
            values.append(inv(values[item[1]]))
    return values[slp.target]


def slp_to_text(slp):
    lines = []
    for item in slp.items:
        if item[0] == "g":
            lines.append("g %d" % item[1])
        elif item[0] == "m":
            lines.append("m %d %d" % (item[1], item[2]))
        else:
            lines.append("inv %d" % item[1])
    lines.append("target %d" % slp.target)
    return "\n".join(lines) + "\n"


def slp_from_text(text):
    items = []
    target = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%")[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "g" and len(parts) == 2:
                items.append(("g", int(parts[1])))
            elif parts[0] == "m" and len(parts) == 3:
                items.append(("m", int(parts[1]), int(parts[2])))
            elif parts[0] == "inv" and len(parts) == 2:
                items.append(("i", int(parts[1])))
            elif parts[0] == "target" and len(parts) == 2:
                target = int(parts[1])
            else:
                raise ValueError
        except ValueError:
            raise ValueError("line %d: cannot parse %r" % (lineno, raw))
    if target is None:
        raise ValueError("missing target line")
    return SLP(tuple(items), target)


# -- semilattice -----------------------------------------------------------


def slp_semilattice(gs, e):
    """Greedy minimal factorization of an idempotent e over idempotent
    generators.  Length <= 2*ceil(log2(|<Sigma>|+1)).
    """
    gens = gs.generators
    mul = gs.mul
    for g in gens:
        if mul(g, g) != g:
            raise ValueError("generator %r is not idempotent" % (g,))
    if mul(e, e) != e:
        raise NotGenerated("target is not idempotent")
    # all generators above e; their product is e iff e is generated
    chosen = [i for i, g in enumerate(gens) if mul(e, g) == e]
    if not chosen:
        raise NotGenerated("no generator above the target")

    def product(ids):
        x = gens[ids[0]]
        for i in ids[1:]:
            x = mul(x, gens[i])
        return x

    if product(chosen) != e:
        raise NotGenerated("target not in the generated semilattice")
    # greedy deletion in list order
    k = 0
    while k < len(chosen):
        if len(chosen) > 1:
            trial = chosen[:k] + chosen[k + 1:]
            if product(trial) == e:
                chosen = trial
                continue
        k += 1
    items = [("g", chosen[0])]
    for i in chosen[1:]:
        items.append(("g", i))
        items.append(("m", len(items) - 2, len(items) - 1))
    return SLP(tuple(items), len(items) - 1)


# -- groups ----------------------------------------------------------------


def _chain_slp(word):
    """SLP for a non-empty product of generator indices."""
    items = [("g", word[0])]
    for letter in word[1:]:
        items.append(("g", letter))
        items.append(("m", len(items) - 2, len(items) - 1))
    return SLP(tuple(items), len(items) - 1)


def _identity_slp():
    return SLP((("g", 0), ("i", 0), ("m", 0, 1)), 2)


def slp_group(gs, g, bfs_threshold=BFS_THRESHOLD):
    """SLP for a group element; generic over the GeneratorSystem."""
    identity = gs.mul(gs.generators[0], gs.inv(gs.generators[0]))
    return slp_group_low(gs.generators, gs.mul, gs.inv, identity, g,
                         bfs_threshold)


def slp_group_low(gens, mul, inv, identity, target, bfs_threshold=BFS_THRESHOLD):
    """BFS shortest word while the group stays small; cube-doubling
    beyond the threshold (length O(log^2 |G|)).
    """
    if target == identity:
        return _identity_slp()
    # breadth-first shortest words, generators in list order
    words = {identity: ()}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            w = words[x]
            for i, u in enumerate(gens):
                y = mul(x, u)
                if y not in words:
                    words[y] = w + (i,)
                    if y == target:
                        return _chain_slp(words[y])
                    nxt.append(y)
        if len(words) > bfs_threshold:
            return _cube_doubling(gens, mul, inv, identity, target)
        frontier = nxt
    raise NotGenerated("target not in the generated group")


def _cube_doubling(gens, mul, inv, identity, target):
    """Reachability-lemma construction: grow a cube C(h_1..h_k) whose
    difference set C^-1 C doubles until it absorbs the target; each new
    h is a first-found d*g outside the difference set.
    """
    # cube: element -> bitmask over h indices (product in index order)
    cube = {identity: 0}
    hdefs = []  # h_j = (mask1, mask2, gen index): cube[m1]^-1 cube[m2] * gen
    while True:
        if len(cube) > CUBE_CAP:
            raise NotGenerated("cube-doubling exceeded its element cap")
        diff = {}
        for x1, m1 in cube.items():
            ix1 = inv(x1)
            for x2, m2 in cube.items():
                d = mul(ix1, x2)
                if d not in diff:
                    diff[d] = (m1, m2)
        if target in diff:
            m1, m2 = diff[target]
            return _emit_cube_slp(hdefs, (m1, m2, None), gens)
        new_h = None
        for d, (m1, m2) in diff.items():
            for i in range(len(gens)):
                h = mul(d, gens[i])
                if h not in diff:
                    new_h = (h, (m1, m2, i))
                    break
            if new_h:
                break
        if new_h is None:
            raise NotGenerated("target not in the generated group")
        h, hdef = new_h
        j = len(hdefs)
        hdefs.append(hdef)
        bit = 1 << j
        for x, m in list(cube.items()):
            cube[mul(x, h)] = m | bit

    raise AssertionError("unreachable")


def _emit_cube_slp(hdefs, final, gens):
    items = [("g", 0), ("i", 0), ("m", 0, 1)]  # identity at index 2
    identity_item = 2
    gen_item = {}
    h_item = [None] * len(hdefs)
    mask_item = {}

    def emit_gen(i):
        if i not in gen_item:
            items.append(("g", i))
            gen_item[i] = len(items) - 1
        return gen_item[i]

    def emit_h(j):
        if h_item[j] is None:
            m1, m2, gi = hdefs[j]
            d = emit_diff(m1, m2)
            items.append(("m", d, emit_gen(gi)))
            h_item[j] = len(items) - 1
        return h_item[j]

    def emit_mask(mask):
        if mask == 0:
            return identity_item
        if mask not in mask_item:
            j = 0
            acc = None
            m = mask
            while m:
                if m & 1:
                    hj = emit_h(j)
                    if acc is None:
                        acc = hj
                    else:
                        items.append(("m", acc, hj))
                        acc = len(items) - 1
                j += 1
                m >>= 1
            mask_item[mask] = acc
        return mask_item[mask]

    def emit_diff(m1, m2):
        a = emit_mask(m1)
        items.append(("i", a))
        ia = len(items) - 1
        b = emit_mask(m2)
        items.append(("m", ia, b))
        return len(items) - 1

    m1, m2, gi = final
    d = emit_diff(m1, m2)
    if gi is not None:
        items.append(("m", d, emit_gen(gi)))
        d = len(items) - 1
    return SLP(tuple(items), d)


# -- Clifford --------------------------------------------------------------


def slp_clifford(gs, t, bfs_threshold=BFS_THRESHOLD):
    """Two phases: an SLP for the idempotent t t~ over the generator
    idempotents s s~, then a group SLP in the H-class of t t~, both
    rewritten over the original generators.
    """
    gens = gs.generators
    mul = gs.mul
    inv = gs.inv
    e = mul(t, inv(t))
    # phase 1: greedy factorization of e over {s s~ : s s~ >= e}
    chosen = [i for i, s in enumerate(gens) if mul(e, mul(s, inv(s))) == e]
    if not chosen:
        raise NotGenerated("no generator idempotent above t t~")

    def product(ids):
        x = None
        for i in ids:
            f = mul(gens[i], inv(gens[i]))
            x = f if x is None else mul(x, f)
        return x

    if product(chosen) != e:
        raise NotGenerated("t t~ not in the idempotent span; t not generated")
    k = 0
    while k < len(chosen):
        if len(chosen) > 1:
            trial = chosen[:k] + chosen[k + 1:]
            if product(trial) == e:
                chosen = trial
                continue
        k += 1
    items = []
    acc = None
    for i in chosen:
        items.append(("g", i))
        items.append(("i", len(items) - 1))
        items.append(("m", len(items) - 2, len(items) - 1))
        f_item = len(items) - 1
        if acc is not None:
            items.append(("m", acc, f_item))
            f_item = len(items) - 1
        acc = f_item
    e_item = acc

    if mul(t, t) == t:
        if t != e:
            raise NotGenerated("idempotent target differs from its t t~")
        return SLP(tuple(items), e_item)

    # phase 2: group SLP over Sigma' = {e s : s s~ >= e}
    elig = [i for i, s in enumerate(gens) if mul(e, mul(s, inv(s))) == e]
    prime = [mul(e, gens[i]) for i in elig]
    sub = slp_group_low(prime, mul, inv, e, t, bfs_threshold)
    # splice, remapping Gen(j) to Mul(e_item, Gen(elig[j]))
    offset = {}
    for pos, item in enumerate(sub.items):
        if item[0] == "g":
            items.append(("g", elig[item[1]]))
            items.append(("m", e_item, len(items) - 1))
        elif item[0] == "m":
            items.append(("m", offset[item[1]], offset[item[2]]))
        else:
            items.append(("i", offset[item[1]]))
        offset[pos] = len(items) - 1
    return SLP(tuple(items), offset[sub.target])
