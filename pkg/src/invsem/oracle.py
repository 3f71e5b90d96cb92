"""Brute-force ground truth: closure enumeration, naive membership,
naive relative conjugacy, and naive relative Green's relations.

Everything here optimizes for auditability over speed; the fast solvers
are validated against this module.
"""

from __future__ import annotations

ELEMENT_CAP = 10**6
PRODUCT_CAP = 10**8


class ClosureCapExceeded(Exception):
    pass


class Closure:
    """The elements of U = <Sigma> with word witnesses.

    elements: breadth-first enumeration, deduplicated; words[i] is a
    tuple of generator indices whose product is elements[i];
    product_witness[i] is None for generators and otherwise a pair
    (j, g) with elements[i] = elements[j] * Sigma[g].
    """

    def __init__(self, elements, words, product_witness):
        self.elements = elements
        self.words = words
        self.product_witness = product_witness
        self.index = {x: i for i, x in enumerate(elements)}

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.index

    def word_for(self, x):
        return self.words[self.index[x]]


def close(gs, cap=ELEMENT_CAP, product_cap=PRODUCT_CAP):
    """Saturate Sigma under products (breadth-first by word length,
    generators in list order).  Sigma is inverse-closed, so this is the
    full inverse-subsemigroup closure.
    """
    if gs._closure is not None:
        # a completed closure is the full set regardless of the cap used
        return gs._closure
    gens = gs.generators
    mul = gs.mul
    elements = []
    words = []
    product_witness = []
    index = {}
    for i, g in enumerate(gens):
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
            words.append((i,))
            product_witness.append(None)
    frontier = list(range(len(elements)))
    products = 0
    while frontier:
        new_frontier = []
        for j in frontier:
            x = elements[j]
            for i, g in enumerate(gens):
                products += 1
                if products > product_cap:
                    raise ClosureCapExceeded(
                        "closure exceeded %d product evaluations" % product_cap
                    )
                y = mul(x, g)
                if y not in index:
                    if len(elements) >= cap:
                        raise ClosureCapExceeded(
                            "closure exceeded %d elements" % cap
                        )
                    index[y] = len(elements)
                    elements.append(y)
                    words.append(words[j] + (i,))
                    product_witness.append((j, i))
                    new_frontier.append(index[y])
        frontier = new_frontier
    result = Closure(elements, words, product_witness)
    gs._closure = result
    return result


def eval_word(gs, word):
    """Evaluate a tuple of generator indices."""
    if not word:
        raise ValueError("empty word")
    x = gs.generators[word[0]]
    for i in word[1:]:
        x = gs.mul(x, gs.generators[i])
    return x


def naive_member(gs, t, cap=ELEMENT_CAP):
    """Is t in <Sigma>?  Returns (bool, witness word or None)."""
    cl = close(gs, cap)
    if t in cl:
        return True, cl.word_for(t)
    return False, None


def naive_conjugate(gs, s, t, cap=ELEMENT_CAP):
    """Is s ~_U t, i.e. is there u in U^1 with u~ s u = t and u t u~ = s?

    Returns (bool, conjugator or None); the identity conjugator is
    gs.one.
    """
    if s == t:
        return True, gs.one
    mul = gs.mul
    inv = gs.inv
    for u in close(gs, cap).elements:
        ub = inv(u)
        if mul(mul(ub, s), u) == t and mul(mul(u, t), ub) == s:
            return True, u
    return False, None


def _right_ideal(gs, t, elements):
    out = {t}
    for u in elements:
        out.add(gs.mul(t, u))
    return out


def _left_ideal(gs, t, elements):
    out = {t}
    for u in elements:
        out.add(gs.mul(u, t))
    return out


def _two_sided_ideal(gs, t, elements):
    out = set()
    for x in _left_ideal(gs, t, elements):
        out |= _right_ideal(gs, x, elements)
    return out


def naive_green(gs, s, t, relation, cap=ELEMENT_CAP):
    """Decide the relative Green equivalence (R, L, J or H) of s and t
    with multipliers from U^1.  D is identified with J (finite case).
    """
    if relation == "H":
        return (naive_green(gs, s, t, "R", cap)
                and naive_green(gs, s, t, "L", cap))
    el = close(gs, cap).elements
    if relation == "R":
        return s in _right_ideal(gs, t, el) and t in _right_ideal(gs, s, el)
    if relation == "L":
        return s in _left_ideal(gs, t, el) and t in _left_ideal(gs, s, el)
    if relation in ("J", "D"):
        return (s in _two_sided_ideal(gs, t, el)
                and t in _two_sided_ideal(gs, s, el))
    raise ValueError("unknown relation %r" % (relation,))


def naive_green_leq(gs, s, t, relation, cap=ELEMENT_CAP):
    """The pre-order s <=_X^U t (s in the suitable ideal of t)."""
    el = close(gs, cap).elements
    if relation == "R":
        return s in _right_ideal(gs, t, el)
    if relation == "L":
        return s in _left_ideal(gs, t, el)
    if relation in ("J", "D"):
        return s in _two_sided_ideal(gs, t, el)
    raise ValueError("unknown relation %r" % (relation,))
