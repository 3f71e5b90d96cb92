"""Inverse automata: validation, the view of letters as partial
bijections on states, and intersection non-emptiness by breadth-first
search over the product state space with witness extraction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pbij import PartialBijection

PRODUCT_CAP = 10**7


class ProductCapExceeded(Exception):
    """The product BFS explored more states than the cap allows."""


@dataclass(frozen=True)
class InverseAutomaton:
    """A partial deterministic automaton whose letters act as partial
    bijections on the states.

    alphabet: tuple of symbol labels; involution maps each symbol to
    its inverse symbol; transitions maps each symbol to a
    PartialBijection on the states (0-based).
    """

    states: int
    alphabet: tuple
    involution: dict
    transitions: dict
    start: int
    accepting: frozenset

    def step(self, q, a):
        return self.transitions[a][q]

    def accepts(self, word):
        q = self.start
        for a in word:
            q = self.step(q, a)
            if q is None:
                return False
        return q in self.accepting


def validate(A):
    """Check the inverse-automaton conditions; returns a list of
    violation strings (empty means ok)."""
    problems = []
    if not (0 <= A.start < A.states):
        problems.append("start state out of range")
    for q in A.accepting:
        if not (0 <= q < A.states):
            problems.append("accepting state %r out of range" % (q,))
    for a in A.alphabet:
        if a not in A.involution:
            problems.append("symbol %r: no involution partner" % (a,))
            continue
        b = A.involution[a]
        if b not in A.transitions or a not in A.transitions:
            problems.append("symbol %r: missing transition map" % (a,))
            continue
        if A.involution.get(b) != a:
            problems.append("symbol %r: involution is not involutive" % (a,))
        da = A.transitions[a]
        if not isinstance(da, PartialBijection) or da.degree != A.states:
            problems.append("symbol %r: transition is not a partial "
                            "bijection on the states" % (a,))
            continue
        # injectivity is structural for PartialBijection; check the
        # inverse-letter condition
        if A.transitions[b] != da.inverse():
            problems.append(
                "symbol %r: transition of %r is not the converse" % (a, b))
    return problems


def intersect_nonempty(automata, cap=PRODUCT_CAP):
    """The lexicographically least shortest word accepted by every
    automaton, or None.  The empty word counts (all starts accepting).

    Symbols are ordered by their position in the shared alphabet.
    """
    if not automata:
        raise ValueError("need at least one automaton")
    alphabet = automata[0].alphabet
    involution = automata[0].involution
    for A in automata[1:]:
        if A.alphabet != alphabet or A.involution != involution:
            raise ValueError("automata do not share an alphabet")
    start = tuple(A.start for A in automata)

    def accepted(qs):
        return all(q in A.accepting for q, A in zip(qs, automata))

    if accepted(start):
        return ()
    prev = {start: None}
    queue = [start]
    qi = 0
    while qi < len(queue):
        qs = queue[qi]
        qi += 1
        for a in alphabet:
            nxt = []
            for q, A in zip(qs, automata):
                r = A.step(q, a)
                if r is None:
                    break
                nxt.append(r)
            else:
                nxt = tuple(nxt)
                if nxt not in prev:
                    prev[nxt] = (qs, a)
                    if accepted(nxt):
                        word = []
                        cur = nxt
                        while prev[cur] is not None:
                            cur, sym = prev[cur]
                            word.append(sym)
                        return tuple(reversed(word))
                    if len(prev) > cap:
                        raise ProductCapExceeded(
                            "product BFS exceeded %d states" % cap)
                    queue.append(nxt)
    return None


def as_dfa(A, failure_state=None):
    """Total-transition view: adds a failure state absorbing all
    undefined transitions.  Returns (states, transitions dict
    symbol -> tuple, start, accepting) with the failure state last.
    """
    fail = A.states if failure_state is None else failure_state
    n = A.states + 1
    trans = {}
    for a in A.alphabet:
        da = A.transitions[a]
        row = [fail if da[q] is None else da[q] for q in range(A.states)]
        row.append(fail)
        trans[a] = tuple(row)
    return n, trans, A.start, frozenset(A.accepting)
