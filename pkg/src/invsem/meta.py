"""Desk-scale deciders for the two application problems: minimum
generating set (exact subset search with pruning) and satisfiability of
systems of equations with per-variable subsemigroup constraints
(guess-and-check backtracking over closure enumerations).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gensys import GeneratorSystem
from .oracle import close, ELEMENT_CAP


# -- minimum generating set ------------------------------------------------


def mgs_decide(u, k, cap=ELEMENT_CAP):
    """Is there Xi with |Xi| <= k and <Xi> = U?

    `u` is a GeneratorSystem or a list of partial bijections closed
    under products and inverses.  Xi is not required to be
    inverse-closed: inverses are added when closing but |Xi| counts the
    chosen elements only.  Returns (bool, witness tuple or None).
    """
    if isinstance(u, GeneratorSystem):
        gs = u
        elements = list(close(gs, cap).elements)
    else:
        elements = list(u)
        if not elements:
            raise ValueError("empty element list")
        gs = GeneratorSystem(elements, degree=elements[0].degree)
        if len(close(gs, cap).elements) != len(elements):
            raise ValueError("element list is not closed")
    full_n = len(elements)
    if k <= 0:
        return False, None

    # Precompute the multiplication table once and run the whole search
    # over integer indices; closures here are small enough for the
    # quadratic table to pay for itself immediately.
    index = {x: i for i, x in enumerate(elements)}
    mul = gs.mul
    mul_t = [[index[mul(a, b)] for b in elements] for a in elements]
    inv_t = [index[gs.inv(a)] for a in elements]

    def grow(closure, x):
        # closure of <closure + {x}>; closure is already closed
        new = set(closure)
        frontier = []
        for y in (x, inv_t[x]):
            if y not in new:
                new.add(y)
                frontier.append(y)
        while frontier:
            nxt = []
            snapshot = list(new)
            for a in frontier:
                row = mul_t[a]
                for b in snapshot:
                    for z in (row[b], mul_t[b][a]):
                        if z not in new:
                            new.add(z)
                            nxt.append(z)
            frontier = nxt
        return new

    # Candidate reduction: if <x> is contained in <y>, replacing x by y
    # in any generating set keeps it generating, so only elements with
    # maximal monogenic closure need to be tried (one per closure).
    mono = [frozenset(grow(frozenset(), i)) for i in range(full_n)]
    candidates = []
    for i in range(full_n):
        dominated = False
        for j in range(full_n):
            if j == i:
                continue
            if mono[i] < mono[j] or (mono[i] == mono[j] and j < i):
                dominated = True
                break
        if not dominated:
            candidates.append(i)

    # Covering bound: a maximal J-class contains none of the products
    # of elements outside it, so every generating set meets every
    # maximal J-class.
    gen_idx = sorted({index[g] for g in gs.generators})
    n_classes, class_of = _maximal_class_cover(
        mul_t, full_n, gen_idx, candidates)
    if n_classes > k:
        return False, None

    # Breadth-first over subset sizes; states are the distinct closures
    # reachable by some partial Xi, so equivalent subsets collapse.
    # Never add an element already generated by the current partial Xi.
    states = {frozenset(): ((), frozenset())}
    seen = {frozenset()}
    for level in range(k):
        nxt = {}
        for closure, (chosen, hit) in states.items():
            slack = k - level - (n_classes - len(hit))
            for ci, x in enumerate(candidates):
                if x in closure:
                    continue
                c = class_of[ci]
                covers_new = c is not None and c not in hit
                if slack <= 0 and not covers_new:
                    continue
                new = frozenset(grow(closure, x))
                if len(new) == full_n:
                    witness = tuple(elements[i] for i in chosen + (x,))
                    return True, witness
                if new not in seen:
                    seen.add(new)
                    new_hit = hit | {c} if covers_new else hit
                    nxt[new] = (chosen + (x,), new_hit)
        states = nxt
    return False, None


def _maximal_class_cover(mul_t, full_n, gen_idx, candidates):
    """The maximal J-classes of the closed semigroup given by the
    multiplication table, and for each candidate index the id of the
    maximal class it belongs to (or None).  Returns (class count,
    per-candidate class id list)."""

    def ideal(x):
        out = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for a in frontier:
                row = mul_t[a]
                for b in range(full_n):
                    for z in (row[b], mul_t[b][a]):
                        if z not in out:
                            out.add(z)
                            nxt.append(z)
            frontier = nxt
        return out

    # every maximal J-class contains a generator
    gen_ideals = {g: ideal(g) for g in gen_idx}
    reps = []  # one generator per maximal class
    for g in gen_idx:
        maximal = True
        for h in gen_idx:
            if h == g:
                continue
            if g in gen_ideals[h] and h not in gen_ideals[g]:
                maximal = False  # strictly above g
                break
        if maximal and not any(g in gen_ideals[r] and r in gen_ideals[g]
                               for r in reps):
            reps.append(g)

    class_of = []
    for x in candidates:
        cid = None
        up = None
        for pos, r in enumerate(reps):
            if x in gen_ideals[r]:
                if up is None:
                    up = ideal(x)
                if r in up:
                    cid = pos
                    break
        class_of.append(cid)
    return len(reps), class_of


# -- equations -------------------------------------------------------------


@dataclass
class EquationSystem:
    """Variables with optional constraint generator systems, and
    equations between non-empty words.

    A word is a tuple of tokens ("const", element, barred) or
    ("var", name, barred); barred tokens evaluate to the inverse.
    """

    variables: list  # names, in declaration order
    constraints: dict  # name -> GeneratorSystem or None
    equations: list  # of (lhs, rhs) token tuples

    def check(self):
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise ValueError("duplicate variable name")
        for lhs, rhs in self.equations:
            for word in (lhs, rhs):
                if not word:
                    raise ValueError("empty word in equation")
                for tok in word:
                    if tok[0] == "var" and tok[1] not in declared:
                        raise ValueError("undeclared variable %r" % (tok[1],))
                    if tok[0] not in ("var", "const"):
                        raise ValueError("bad token kind %r" % (tok[0],))


def eval_word(word, assignment, mul, inv):
    value = None
    for kind, payload, barred in word:
        x = assignment[payload] if kind == "var" else payload
        if barred:
            x = inv(x)
        value = x if value is None else mul(value, x)
    return value


def solve_equations(system, ambient, cap=ELEMENT_CAP):
    """First satisfying assignment (dict name -> element) in
    enumeration order, or None.  Unconstrained variables range over the
    ambient closure."""
    system.check()
    mul = ambient.mul
    inv = ambient.inv
    domains = []
    for name in system.variables:
        gs = system.constraints.get(name) or ambient
        domains.append(list(close(gs, cap).elements))

    # check an equation as soon as all its variables are assigned
    def ready(eq, assigned):
        for word in eq:
            for tok in word:
                if tok[0] == "var" and tok[1] not in assigned:
                    return False
        return True

    def holds(eq, assignment):
        lhs, rhs = eq
        return (eval_word(lhs, assignment, mul, inv)
                == eval_word(rhs, assignment, mul, inv))

    names = system.variables

    def backtrack(i, assignment):
        if i == len(names):
            if all(holds(eq, assignment) for eq in system.equations):
                return dict(assignment)
            return None
        name = names[i]
        for cand in domains[i]:
            assignment[name] = cand
            if all(holds(eq, assignment) for eq in system.equations
                   if ready(eq, assignment)):
                found = backtrack(i + 1, assignment)
                if found is not None:
                    return found
            del assignment[name]
        return None

    result = backtrack(0, {})
    if result is not None:
        for eq in system.equations:
            assert holds(eq, result), "assignment fails re-verification"
    return result


def solve_equations_bruteforce(system, ambient, cap=ELEMENT_CAP):
    """Exhaustive enumeration without pruning; confirmation oracle for
    small search spaces."""
    system.check()
    mul = ambient.mul
    inv = ambient.inv
    domains = []
    for name in system.variables:
        gs = system.constraints.get(name) or ambient
        domains.append(list(close(gs, cap).elements))
    from itertools import product
    for combo in product(*domains):
        assignment = dict(zip(system.variables, combo))
        if all(eval_word(l, assignment, mul, inv)
               == eval_word(r, assignment, mul, inv)
               for l, r in system.equations):
            return assignment
    return None
