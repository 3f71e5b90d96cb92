"""Instance file formats: round trips, strict errors, and dispatch."""

import random

import pytest

from invsem.pbij import PartialBijection, partial_identity
from invsem.cayley import y2_table, brandt_table
from invsem.ncl import NCLMachine
from invsem.automata import InverseAutomaton
from invsem.formats import (FormatError, PBInstance, CTInstance,
                            GraphInstance, parse_pb, serialize_pb,
                            parse_ct, serialize_ct, parse_graph,
                            serialize_graph, parse_ncl, serialize_ncl,
                            parse_ia, serialize_ia, parse_eqn,
                            serialize_eqn, kind_of, parse, serialize)

from helpers import rand_pb, rand_ncl_machine


GOLDEN_PB = """pb 3
gen 2 3 1
gen 1 _ _
target _ 2 _
ds 1 2
dt 2 3
"""


def test_pb_golden_round_trip():
    inst = parse_pb(GOLDEN_PB)
    assert inst.degree == 3
    assert inst.generators[0] == PartialBijection(3, (1, 2, 0))
    assert inst.generators[1] == PartialBijection(3, (0, None, None))
    assert inst.target == PartialBijection(3, (None, 1, None))
    assert inst.ds == (0, 1) and inst.dt == (1, 2)
    assert serialize_pb(inst) == GOLDEN_PB
    gs = inst.system()
    assert gs.degree == 3


def test_pb_random_round_trip():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randrange(1, 7)
        inst = PBInstance(n, [rand_pb(rng, n)
                              for _ in range(rng.randrange(1, 4))])
        if rng.random() < 0.5:
            inst.target = rand_pb(rng, n)
        if rng.random() < 0.3:
            inst.s = rand_pb(rng, n)
            inst.t = rand_pb(rng, n)
        back = parse_pb(serialize_pb(inst))
        assert back == inst


def test_pb_errors_carry_line_numbers():
    with pytest.raises(FormatError, match="line 1"):
        parse_pb("nope 3\n")
    with pytest.raises(FormatError, match="line 2"):
        parse_pb("pb 2\ngen 1 3\n")
    with pytest.raises(FormatError, match="line 3"):
        parse_pb("pb 2\ngen 1 2\ntarget 1\n")
    with pytest.raises(FormatError, match="duplicate"):
        parse_pb("pb 2\ngen 1 2\ntarget 1 2\ntarget 1 2\n")
    with pytest.raises(FormatError, match="no generators"):
        parse_pb("pb 2\ntarget 1 2\n")
    # repeated image breaks injectivity
    with pytest.raises(FormatError, match="line 2"):
        parse_pb("pb 2\ngen 1 1\n")


def test_pb_comments_and_blank_lines():
    inst = parse_pb("% header comment\npb 2\n\ngen 2 1 % swap\n")
    assert inst.generators == [PartialBijection(2, (1, 0))]


def test_ct_round_trip_and_errors():
    table = y2_table()
    inst = CTInstance(table, [1], target=0)
    back = parse_ct(serialize_ct(inst))
    assert back.table.table == table.table
    assert back.gens == [1] and back.target == 0

    with pytest.raises(FormatError, match="line 1"):
        parse_ct("ct 0\n")
    with pytest.raises(FormatError, match="expected 2 entries"):
        parse_ct("ct 2\n0 1\n0\ngens 0\n")
    with pytest.raises(FormatError, match="no gens"):
        parse_ct("ct 1\n0\n")
    with pytest.raises(FormatError, match="out of range"):
        parse_ct("ct 1\n0\ngens 3\n")


def test_ct_rejects_non_associative_table_naming_triple():
    # (0*0)*1 = 1 but 0*(0*1) = 0
    text = "ct 2\n1 0\n0 0\ngens 0\n"
    with pytest.raises(FormatError) as err:
        parse_ct(text)
    assert "invalid table" in str(err.value)


def test_graph_round_trip_and_errors():
    inst = GraphInstance(4, [(0, 1), (2, 3)], s=0, t=3)
    back = parse_graph(serialize_graph(inst))
    assert (back.n, back.edges, back.s, back.t) == (4, [(0, 1), (2, 3)],
                                                    0, 3)
    with pytest.raises(FormatError, match="loop"):
        parse_graph("graph 2\nedge 1 1\ns 1\nt 2\n")
    with pytest.raises(FormatError, match="parallel"):
        parse_graph("graph 2\nedge 1 2\nedge 2 1\ns 1\nt 2\n")
    with pytest.raises(FormatError, match="missing s or t"):
        parse_graph("graph 2\nedge 1 2\n")


def test_ncl_round_trip_and_validation():
    rng = random.Random(1)
    for _ in range(10):
        machine = rand_ncl_machine(rng, rng.choice(("k4", "prism")))
        back = parse_ncl(serialize_ncl(machine))
        assert back == machine
    with pytest.raises(FormatError, match="invalid machine"):
        parse_ncl("ncl 2\nedge 1 2 2\nconfig-s <\nconfig-t <\n")
    with pytest.raises(FormatError, match="not '<' or '>'"):
        parse_ncl("ncl 2\nedge 1 2 2\nconfig-s x\nconfig-t <\n")
    with pytest.raises(FormatError, match="missing config-t"):
        parse_ncl("ncl 2\nedge 1 2 2\nconfig-s <\n")


def test_ia_canonical_form_is_fixpoint():
    shift = PartialBijection(3, (1, 2, None))
    auto = InverseAutomaton(
        3, ("a", "A"), {"a": "A", "A": "a"},
        {"a": shift, "A": shift.inverse()}, 0, frozenset([2]))
    text = serialize_ia(auto)
    back = parse_ia(text)
    assert serialize_ia(back) == text
    assert back.accepts(("a", "a"))
    assert back.states == 3 and back.start == 0


def test_ia_errors():
    with pytest.raises(FormatError, match="states= and alphabet="):
        parse_ia("ia states=2\n")
    with pytest.raises(FormatError, match="not declared"):
        parse_ia("ia states=1 alphabet=2\ninv a A\ntrans 1 b 1\n"
                 "start 1\naccept 1\n")
    with pytest.raises(FormatError, match="duplicate transition"):
        parse_ia("ia states=2 alphabet=2\ninv a A\ntrans 1 a 1\n"
                 "trans 1 a 2\nstart 1\naccept 1\n")
    with pytest.raises(FormatError, match="header says"):
        parse_ia("ia states=1 alphabet=4\ninv a A\nstart 1\naccept 1\n")
    with pytest.raises(FormatError, match="invalid automaton"):
        parse_ia("ia states=2 alphabet=2\ninv a A\ntrans 1 a 2\n"
                 "trans 1 A 2\nstart 1\naccept 1\n")


def test_eqn_relative_paths(tmp_path):
    (tmp_path / "ambient.pb").write_text(
        "pb 2\ngen 2 1\ns 1 _\nt _ 2\n")
    (tmp_path / "box.pb").write_text("pb 2\ngen 1 _\n")
    text = ("eqn over ambient.pb\n"
            "var X in box.pb\n"
            "eq X~ s X = t\n")
    (tmp_path / "inst.eqn").write_text(text)
    inst = parse(str(tmp_path / "inst.eqn"))
    assert inst.over_path == "ambient.pb"
    assert inst.ambient.generators == [PartialBijection(2, (1, 0))]
    assert [n for n, _ in inst.var_decls] == ["X"]
    assert "X" in inst.constraints
    assert serialize_eqn(inst) == text
    lhs, rhs = inst.system.equations[0]
    assert lhs[0] == ("var", "X", True)
    assert lhs[1] == ("const", partial_identity(2, [0]), False)
    assert rhs[0] == ("const", partial_identity(2, [1]), False)


def test_eqn_errors(tmp_path):
    (tmp_path / "a.pb").write_text("pb 2\ngen 2 1\n")

    def bad(text, match):
        with pytest.raises(FormatError, match=match):
            parse_eqn(text, base_dir=str(tmp_path))

    bad("eqn over a.pb\nvar s\n", "reserved")
    bad("eqn over a.pb\nvar g1\n", "reserved")
    bad("eqn over a.pb\nvar X\nvar X\n", "duplicate")
    bad("eqn over a.pb\neq X = g1\n", "undeclared")
    bad("eqn over a.pb\nvar X\neq X g1\n", "expected 'eq")
    bad("eqn over a.pb\nvar X\neq X = g9\n", "out of range")
    bad("eqn over a.pb\nvar X\neq X = s\n", "no s line")


def test_dispatch(tmp_path):
    assert kind_of("pb 2\ngen 1 2\n") == "pb"
    with pytest.raises(FormatError):
        kind_of("")
    path = tmp_path / "inst.pb"
    path.write_text("pb 2\ngen 2 1\n")
    inst = parse(str(path))
    assert isinstance(inst, PBInstance)
    assert serialize(inst) == "pb 2\ngen 2 1\n"
    bad = tmp_path / "inst.xyz"
    bad.write_text("xyz 1\n")
    with pytest.raises(FormatError, match="unknown instance kind"):
        parse(str(bad))
    with pytest.raises(TypeError):
        serialize(object())
