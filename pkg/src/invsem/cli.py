"""Command-line front end: instance files in, deterministic text out.

Decisions print YES or NO on the first line, witnesses on following
lines.  Exit status 0 means a completed decision (either answer), 1 a
refusal (cap exceeded or outside the tractable varieties), 2 an input
error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .pbij import PartialBijection
from .gensys import GeneratorSystem, VIRTUAL_ONE
from .oracle import (ClosureCapExceeded, close, eval_word, naive_member,
                     naive_conjugate, naive_green, naive_green_leq)
from .classify import classify_generated
from .groups import pb_group_member, group_conjugate, perm_group_of, \
    set_transporter
from .ctsolver import CTSolver
from .slp import (NotGenerated, slp_eval, slp_to_text, slp_from_text,
                  slp_semilattice, slp_group, slp_clifford)
from .munn import (OutsideTractable, dispatch_member, dispatch_conjugate,
                   clifford_member, clifford_conjugate, sis_member,
                   sis_conjugate)
from .automata import ProductCapExceeded, intersect_nonempty
from .ncl import local_configs
from .hardness import (gen_ugap_conj, gen_ugap_member, gen_ncl_conj,
                       gen_ncl_member, gen_ncl_automata, gen_mgs,
                       gen_equation)
from .meta import mgs_decide, solve_equations, eval_word as eval_eq_word
from . import formats
from .formats import FormatError, PBInstance, CTInstance

FORCED_CAP = 10**8


class CLIError(Exception):
    """An input or usage error; exit status 2."""


class Refusal(Exception):
    """A refusal to decide; exit status 1."""


def _pb_images(p):
    return " ".join("_" if x is None else str(x + 1) for x in p.images)


def _word_line(word):
    return "word" + "".join(" g%d" % (i + 1) for i in word)


def _require(value, what):
    if value is None:
        raise CLIError("instance has no %s record" % what)
    return value


def _load(path):
    try:
        return formats.parse(path)
    except OSError as exc:
        raise CLIError(str(exc))


def _system_of(inst):
    if isinstance(inst, (PBInstance, CTInstance)):
        if isinstance(inst, PBInstance) and not inst.generators:
            raise CLIError("instance has no generators")
        return inst.system()
    raise CLIError("expected a pb or ct instance")


def _print_explain(explain):
    for key in sorted(explain):
        value = explain[key]
        if key.endswith("dot"):
            print("%% %s" % key, file=sys.stderr)
            print(value, file=sys.stderr)
        else:
            print("%s: %s" % (key, value), file=sys.stderr)


# -- subcommands -----------------------------------------------------------


def cmd_classify(args):
    inst = _load(args.file)
    gs = _system_of(inst)
    tag = classify_generated(gs, cap=args.cap)
    if tag.cap_exceeded:
        raise Refusal("closure cap exceeded during classification")
    print(tag.name)
    for flag in ("divides_Y2", "divides_B2", "divides_B21"):
        print("%s %s" % (flag, "yes" if getattr(tag, flag) else "no"))
    return 0


def _pb_member(gs, t, args):
    explain = {} if args.explain else None
    solver = args.solver
    if args.force_oracle:
        solver = "oracle"
    if solver == "auto":
        ok = dispatch_member(gs, t, assume=args.assume, explain=explain)
        word = None
    elif solver == "oracle":
        cap = FORCED_CAP if args.force_oracle else args.cap
        ok, word = naive_member(gs, t, cap)
    elif solver == "group":
        ok, word = pb_group_member(gs, t)
    elif solver == "clifford":
        ok, word = clifford_member(gs, t), None
    elif solver == "sis":
        ok, word = sis_member(gs, t, explain=explain), None
    else:
        raise CLIError("solver %r does not apply to pb instances" % solver)
    if explain:
        _print_explain(explain)
    return ok, word


def cmd_member(args):
    inst = _load(args.file)
    if isinstance(inst, PBInstance):
        if args.model not in ("auto", "pb"):
            raise CLIError("file is a pb instance, not %s" % args.model)
        gs = _system_of(inst)
        t = _require(inst.target, "target")
        ok, word = _pb_member(gs, t, args)
        print("YES" if ok else "NO")
        if ok and word is not None:
            print(_word_line(word))
        return 0
    if isinstance(inst, CTInstance):
        if args.model not in ("auto", "ct"):
            raise CLIError("file is a ct instance, not %s" % args.model)
        t = _require(inst.target, "target")
        if args.solver in ("auto", "ct-greedy") and not args.force_oracle:
            ok, word, _ = CTSolver(inst.table, inst.gens).member(t)
            print("YES" if ok else "NO")
            if ok:
                print("word" + "".join(" %d" % x for x in word))
        elif args.solver in ("auto", "oracle") or args.force_oracle:
            gs = inst.system()
            cap = FORCED_CAP if args.force_oracle else args.cap
            ok, word = naive_member(gs, t, cap)
            print("YES" if ok else "NO")
            if ok:
                print(_word_line(word))
        else:
            raise CLIError("solver %r does not apply to ct instances"
                           % args.solver)
        return 0
    raise CLIError("member needs a pb or ct instance")


def _pb_conjugate(gs, s, t, args):
    explain = {} if args.explain else None
    solver = args.solver
    if args.force_oracle:
        solver = "oracle"
    if solver == "auto":
        ok, u = dispatch_conjugate(gs, s, t, assume=args.assume,
                                   explain=explain)
    elif solver == "oracle":
        cap = FORCED_CAP if args.force_oracle else args.cap
        ok, u = naive_conjugate(gs, s, t, cap)
    elif solver == "group":
        ok, u = group_conjugate(gs, s, t)
    elif solver == "clifford":
        ok, u = clifford_conjugate(gs, s, t)
    elif solver == "sis":
        ok, u = sis_conjugate(gs, s, t, explain=explain)
    else:
        raise CLIError("solver %r does not apply to pb instances" % solver)
    if explain:
        _print_explain(explain)
    return ok, u


def cmd_conj(args):
    inst = _load(args.file)
    if isinstance(inst, PBInstance):
        gs = _system_of(inst)
        s = _require(inst.s, "s")
        t = _require(inst.t, "t")
        ok, u = _pb_conjugate(gs, s, t, args)
        print("YES" if ok else "NO")
        if ok and u is not None:
            print("conjugator " + _pb_images(u))
        return 0
    if isinstance(inst, CTInstance):
        s = _require(inst.s, "s")
        t = _require(inst.t, "t")
        if args.solver in ("auto", "ct-greedy") and not args.force_oracle:
            ok = CTSolver(inst.table, inst.gens).conjugate(s, t)
            print("YES" if ok else "NO")
        else:
            gs = inst.system()
            cap = FORCED_CAP if args.force_oracle else args.cap
            ok, u = naive_conjugate(gs, s, t, cap)
            print("YES" if ok else "NO")
            if ok:
                print("conjugator %s"
                      % ("one" if u == VIRTUAL_ONE else str(u)))
        return 0
    raise CLIError("conj needs a pb or ct instance")


def cmd_green(args):
    inst = _load(args.file)
    gs = _system_of(inst)
    s = _require(inst.s, "s")
    t = _require(inst.t, "t")
    if args.leq:
        ok = naive_green_leq(gs, s, t, args.rel, args.cap)
    else:
        ok = naive_green(gs, s, t, args.rel, args.cap)
    print("YES" if ok else "NO")
    return 0


def cmd_slp(args):
    inst = _load(args.file)
    gs = _system_of(inst)
    t = _require(inst.target, "target")
    tag = classify_generated(gs, cap=args.cap)
    if tag.cap_exceeded:
        raise Refusal("closure cap exceeded during classification")
    import math
    try:
        if tag.is_semilattice():
            slp = slp_semilattice(gs, t)
            size = len(close(gs, args.cap).elements)
            bound = 2 * math.ceil(math.log2(size + 1))
        elif tag.is_group():
            slp = slp_group(gs, t)
            if gs.model == "pb":
                G, _ = perm_group_of(gs)
                size = G.order
            else:
                size = len(close(gs, args.cap).elements)
            bound = 16 * max(1.0, math.log2(size)) ** 2
        elif tag.name == "Clifford":
            slp = slp_clifford(gs, t)
            size = len(close(gs, args.cap).elements)
            bound = None
        else:
            raise Refusal("no length-bounded construction for variety %s"
                          % tag.name)
    except NotGenerated as exc:
        print("NO")
        print("reason %s" % exc)
        return 0
    print("YES")
    sys.stdout.write(slp_to_text(slp))
    print("length %d" % len(slp))
    if bound is not None:
        print("bound %g" % bound)
    verified = slp_eval(gs, slp) == t
    print("verified %s" % ("yes" if verified else "no"))
    return 0


def cmd_transport(args):
    inst = _load(args.file)
    if not isinstance(inst, PBInstance):
        raise CLIError("transport needs a pb instance")
    gs = _system_of(inst)
    ds = _require(inst.ds, "ds")
    dt = _require(inst.dt, "dt")
    G, points = perm_group_of(gs)
    pos = {x: i for i, x in enumerate(points)}
    if not (set(ds) <= set(points) and set(dt) <= set(points)):
        print("NO")
        return 0
    found = set_transporter(G, [pos[x] for x in ds], [pos[x] for x in dt])
    if found is None:
        print("NO")
        return 0
    _, word = found
    u = gs.one
    for i in word:
        u = gs.mul(u, gs.generators[i])
    print("YES")
    print("transporter " + _pb_images(u))
    return 0


def cmd_automata(args):
    if args.action != "intersect":
        raise CLIError("unknown automata action %r" % args.action)
    from .automata import InverseAutomaton
    automata = []
    for path in args.files:
        inst = _load(path)
        if not isinstance(inst, InverseAutomaton):
            raise CLIError("%s: not an ia instance" % path)
        automata.append(inst)
    witness = intersect_nonempty(automata)
    if witness is None:
        print("NO")
    else:
        print("YES")
        print("word" + "".join(" %s" % sym for sym in witness))
    return 0


def cmd_mgs(args):
    inst = _load(args.file)
    if not isinstance(inst, PBInstance):
        raise CLIError("mgs needs a pb instance")
    gs = _system_of(inst)
    ok, witness = mgs_decide(gs, args.k, cap=args.cap)
    print("YES" if ok else "NO")
    if ok:
        for g in witness:
            print("gen " + _pb_images(g))
    return 0


def cmd_eqn(args):
    inst = _load(args.file)
    if not isinstance(inst, formats.EqnInstance):
        raise CLIError("eqn needs an eqn instance")
    ambient = inst.ambient.system()
    assignment = solve_equations(inst.system, ambient, cap=args.cap)
    if assignment is None:
        print("NO")
    else:
        print("YES")
        for name in inst.system.variables:
            print("assign %s %s" % (name, _pb_images(assignment[name])))
    return 0


# -- instance generation ---------------------------------------------------


def _write_instance(path, text, source, reduction):
    header = ("%% generated by invsem gen %s\n%% source: %s\n"
              % (reduction, os.path.basename(source)))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(header + text)


def cmd_gen(args):
    inst = _load(args.input)
    reduction = args.reduction
    if reduction in ("ugap-conj", "ugap-member"):
        if not isinstance(inst, formats.GraphInstance):
            raise CLIError("%s needs a graph instance" % reduction)
        if reduction == "ugap-conj":
            table, sigma, e_s, e_t = gen_ugap_conj(
                inst.n, inst.edges, inst.s, inst.t)
            out = CTInstance(table, sigma, s=e_s, t=e_t)
        else:
            table, sigma, target = gen_ugap_member(
                inst.n, inst.edges, inst.s, inst.t)
            out = CTInstance(table, sigma, target=target)
        _write_instance(args.output, formats.serialize(out),
                        args.input, reduction)
        return 0
    if reduction in ("ncl-conj", "ncl-member"):
        if not isinstance(inst, formats.NCLMachine):
            raise CLIError("%s needs an ncl instance" % reduction)
        if reduction == "ncl-conj":
            enc, sigma, e_s, e_t = gen_ncl_conj(inst)
            out = PBInstance(enc.degree, sigma, s=e_s, t=e_t)
        else:
            enc, sigma, target = gen_ncl_member(inst)
            out = PBInstance(enc.degree + 1, sigma, target=target)
        _write_instance(args.output, formats.serialize(out),
                        args.input, reduction)
        return 0
    if reduction == "ncl-automata":
        if not isinstance(inst, formats.NCLMachine):
            raise CLIError("ncl-automata needs an ncl instance")
        enc, automata = gen_ncl_automata(inst)
        os.makedirs(args.output, exist_ok=True)
        pos = 0
        for v in range(inst.vertices):
            for j in range(len(local_configs(inst, v))):
                name = "v%d_c%d.ia" % (v + 1, j + 1)
                _write_instance(os.path.join(args.output, name),
                                formats.serialize(automata[pos]),
                                args.input, reduction)
                pos += 1
        print("wrote %d automata" % pos)
        return 0
    if reduction == "mgs":
        if not isinstance(inst, PBInstance):
            raise CLIError("mgs needs a pb instance")
        gs = _system_of(inst)
        t = _require(inst.target, "target")
        out_gs, k = gen_mgs(gs, t)
        out = PBInstance(out_gs.degree, list(out_gs.generators))
        text = "%% k = %d\n" % k + formats.serialize(out)
        _write_instance(args.output, text, args.input, reduction)
        print("k %d" % k)
        return 0
    if reduction == "equation":
        if not isinstance(inst, PBInstance):
            raise CLIError("equation needs a pb instance")
        gs = _system_of(inst)
        e_s = _require(inst.s, "s")
        e_t = _require(inst.t, "t")
        gen_equation(gs, e_s, e_t)  # validates the pair
        stem = args.output
        if stem.endswith(".eqn"):
            stem = stem[:-4]
        ambient_name = os.path.basename(stem) + "_ambient.pb"
        constraint_name = os.path.basename(stem) + "_constraint.pb"
        out_dir = os.path.dirname(args.output) or "."
        ambient = PBInstance(gs.degree, list(gs.generators), s=e_s, t=e_t)
        constraint = PBInstance(
            gs.degree, list(gs.generators) + [e_s, e_t])
        _write_instance(os.path.join(out_dir, ambient_name),
                        formats.serialize(ambient), args.input, reduction)
        _write_instance(os.path.join(out_dir, constraint_name),
                        formats.serialize(constraint), args.input, reduction)
        eqn_text = ("eqn over %s\nvar X in %s\neq X~ s X = t\n"
                    % (ambient_name, constraint_name))
        _write_instance(args.output if args.output.endswith(".eqn")
                        else stem + ".eqn",
                        eqn_text, args.input, reduction)
        return 0
    raise CLIError("unknown reduction %r" % reduction)


# -- witness verification --------------------------------------------------


def _read_answer(path):
    with open(path, "r", encoding="utf-8") as handle:
        lines = [ln.rstrip("\n") for ln in handle
                 if ln.strip() and not ln.startswith("%")]
    if not lines or lines[0] not in ("YES", "NO"):
        raise CLIError("%s: first line must be YES or NO" % path)
    return lines[0] == "YES", lines[1:]


def _verify_fail(message):
    print("FAIL %s" % message)
    return 1


def cmd_verify(args):
    answer, lines = _read_answer(args.output)
    inst = _load(args.instance)
    kind = args.what

    if kind == "member":
        if not answer:
            print("OK no witness to check")
            return 0
        word_lines = [ln for ln in lines if ln.startswith("word")]
        if not word_lines:
            print("OK no witness to check")
            return 0
        tokens = word_lines[0].split()[1:]
        if isinstance(inst, PBInstance):
            gs = _system_of(inst)
            t = _require(inst.target, "target")
            if not tokens:
                value = gs.one
            else:
                word = tuple(int(tok[1:]) - 1 for tok in tokens)
                value = eval_word(gs, word)
        else:
            t = _require(inst.target, "target")
            value = None
            for tok in tokens:
                x = int(tok)
                value = x if value is None else inst.table.mul(value, x)
            if value is None:
                value = t if inst.table.identity_index is None \
                    else inst.table.identity_index
        if value != t:
            return _verify_fail("witness word does not evaluate to the target")
        print("OK")
        return 0

    if kind == "conj":
        if not answer:
            print("OK no witness to check")
            return 0
        conj_lines = [ln for ln in lines if ln.startswith("conjugator")]
        if not conj_lines:
            print("OK no witness to check")
            return 0
        tokens = conj_lines[0].split()[1:]
        gs = _system_of(inst)
        s = _require(inst.s, "s")
        t = _require(inst.t, "t")
        if isinstance(inst, PBInstance):
            u = PartialBijection(
                inst.degree,
                tuple(None if tok == "_" else int(tok) - 1
                      for tok in tokens))
        else:
            u = VIRTUAL_ONE if tokens[0] == "one" else int(tokens[0])
        ub = gs.inv(u)
        if gs.mul(gs.mul(ub, s), u) != t or gs.mul(gs.mul(u, t), ub) != s:
            return _verify_fail("conjugator fails the defining equations")
        print("OK")
        return 0

    if kind == "transport":
        if not answer:
            print("OK no witness to check")
            return 0
        tr = [ln for ln in lines if ln.startswith("transporter")]
        if not tr:
            return _verify_fail("missing transporter line")
        tokens = tr[0].split()[1:]
        u = PartialBijection(
            inst.degree,
            tuple(None if tok == "_" else int(tok) - 1 for tok in tokens))
        ds = _require(inst.ds, "ds")
        dt = _require(inst.dt, "dt")
        image = set()
        for x in ds:
            y = u.images[x]
            if y is None:
                return _verify_fail("transporter undefined on ds")
            image.add(y)
        if image != set(dt):
            return _verify_fail("transporter does not map ds onto dt")
        print("OK")
        return 0

    if kind == "slp":
        if not answer:
            print("OK no witness to check")
            return 0
        gs = _system_of(inst)
        t = _require(inst.target, "target")
        slp_text = "\n".join(
            ln for ln in lines
            if ln.split() and ln.split()[0] in ("g", "m", "inv", "target"))
        slp = slp_from_text(slp_text)
        if slp_eval(gs, slp) != t:
            return _verify_fail("slp does not evaluate to the target")
        print("OK")
        return 0

    if kind == "mgs":
        if not answer:
            print("OK no witness to check")
            return 0
        gs = _system_of(inst)
        gens = []
        for ln in lines:
            if ln.startswith("gen"):
                tokens = ln.split()[1:]
                gens.append(PartialBijection(
                    inst.degree,
                    tuple(None if tok == "_" else int(tok) - 1
                          for tok in tokens)))
        if not gens:
            return _verify_fail("missing gen lines")
        sub = GeneratorSystem(gens, degree=inst.degree)
        if set(close(sub).elements) != set(close(gs).elements):
            return _verify_fail("witness set does not generate the closure")
        print("OK")
        return 0

    if kind == "eqn":
        if not answer:
            print("OK no witness to check")
            return 0
        ambient = inst.ambient.system()
        assignment = {}
        for ln in lines:
            if ln.startswith("assign"):
                tokens = ln.split()
                assignment[tokens[1]] = PartialBijection(
                    inst.ambient.degree,
                    tuple(None if tok == "_" else int(tok) - 1
                          for tok in tokens[2:]))
        for name in inst.system.variables:
            if name not in assignment:
                return _verify_fail("missing assignment for %s" % name)
        for lhs, rhs in inst.system.equations:
            left = eval_eq_word(lhs, assignment, ambient.mul, ambient.inv)
            right = eval_eq_word(rhs, assignment, ambient.mul, ambient.inv)
            if left != right:
                return _verify_fail("assignment fails an equation")
        print("OK")
        return 0

    if kind == "automata":
        if not answer:
            print("OK no witness to check")
            return 0
        word_lines = [ln for ln in lines if ln.startswith("word")]
        if not word_lines:
            return _verify_fail("missing word line")
        word = tuple(word_lines[0].split()[1:])
        paths = [args.instance] + list(args.extra)
        for path in paths:
            auto = _load(path)
            if not auto.accepts(word):
                return _verify_fail("%s rejects the witness word" % path)
        print("OK")
        return 0

    raise CLIError("unknown verify target %r" % kind)


# -- argument parsing ------------------------------------------------------


def _add_solver_flags(sub):
    sub.add_argument("--solver", default="auto",
                     choices=["auto", "oracle", "group", "clifford", "sis",
                              "ct-greedy"])
    sub.add_argument("--assume", default=None,
                     choices=["Trivial", "Semilattice", "Group", "Clifford",
                              "StrictInverse", "General"])
    sub.add_argument("--force-oracle", action="store_true")
    sub.add_argument("--explain", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="invsem",
        description="membership and conjugacy in finite inverse semigroups")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="accepted and ignored; output is deterministic")
    common.add_argument("--cap", type=int, default=10**6,
                        help="closure element cap")
    subs = parser.add_subparsers(dest="command", required=True,
                                 parser_class=lambda **kw: argparse.
                                 ArgumentParser(parents=[common], **kw))

    p = subs.add_parser("classify")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    for name, func in (("member", cmd_member), ("conj", cmd_conj)):
        p = subs.add_parser(name)
        p.add_argument("file")
        p.add_argument("--model", default="auto", choices=["auto", "pb", "ct"])
        _add_solver_flags(p)
        p.set_defaults(func=func)

    p = subs.add_parser("green")
    p.add_argument("file")
    p.add_argument("--rel", required=True, choices=["R", "L", "J", "H", "D"])
    p.add_argument("--leq", action="store_true")
    p.set_defaults(func=cmd_green)

    p = subs.add_parser("slp")
    p.add_argument("file")
    p.set_defaults(func=cmd_slp)

    p = subs.add_parser("transport")
    p.add_argument("file")
    p.set_defaults(func=cmd_transport)

    p = subs.add_parser("automata")
    p.add_argument("action")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_automata)

    p = subs.add_parser("gen")
    p.add_argument("reduction",
                   choices=["ugap-conj", "ugap-member", "ncl-conj",
                            "ncl-member", "ncl-automata", "mgs", "equation"])
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("mgs")
    p.add_argument("file")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_mgs)

    p = subs.add_parser("eqn")
    p.add_argument("file")
    p.set_defaults(func=cmd_eqn)

    p = subs.add_parser("verify")
    p.add_argument("what",
                   choices=["member", "conj", "transport", "slp", "mgs",
                            "eqn", "automata"])
    p.add_argument("instance")
    p.add_argument("output")
    p.add_argument("extra", nargs="*",
                   help="additional instance files (automata)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (FormatError, CLIError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (Refusal, OutsideTractable, ClosureCapExceeded,
            ProductCapExceeded) as exc:
        print("refused: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
