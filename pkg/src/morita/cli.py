"""Command-line driver: ``morita <command> ...`` (also ``python3 -m morita``).

Exit codes: 0 on success or a passing check, 1 when a check fails (or cannot
be decided), 2 on malformed input.  ``--json`` prints a ``report.v1`` document.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog
from . import io as mio
from .bibundle import (is_biprincipal, is_left_principal, is_principal,
                       morita_equivalent, report_ok, tensor)
from .cocycle import LiftError, lift_cocycle, validate_cocycle
from .fpgroup import (abelianization, format_word, group_presentation, hom_signature_partial,
                      probably_isomorphic, simplify)
from .groupoid import isotropy, orbits, translation_groupoid, validate_groupoid
from .groups import default_targets
from .homotopy import (BorelModel, NonUniformIneffectivity, Report, check_eff_sequence,
                       check_example4_sequence, eff_translation, pi1_nerve)
from .simplicial import pi1_presentation

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _label(labels, key):
    """Resolve a command-line object/vertex name against the stored labels."""
    cands = [key]
    try:
        cands.insert(0, int(key))
    except ValueError:
        pass
    if labels is None:
        labels = []
    for c in cands:
        if c in labels:
            return list(labels).index(c)
    raise InputError("unknown object or vertex %r" % key)


def _groupoid_of(schema, value):
    if schema == "groupoid.v1":
        return value
    if schema == "action.v1":
        return translation_groupoid(value.set_action())
    raise InputError("expected a groupoid or an action, got %s" % schema)


def _emit(args, rep, lines):
    if args.json:
        print(rep.to_json(indent=1))
    else:
        for line in lines:
            print(line)
        if args.verbose:
            print(rep.format_text())


def _status_code(rep):
    return EXIT_OK if rep.passed else EXIT_FAIL


def _presentation_lines(P):
    P = simplify(P).presentation
    gens = ", ".join(format_word((k + 1,), P.names) for k in range(P.n_generators))
    rels = ", ".join(format_word(r, P.names) for r in P.relators)
    sig = hom_signature_partial(P)
    sig_txt = ", ".join("%s:%s" % (T.name, "?" if v is None else v)
                        for T, v in zip(default_targets(), sig))
    return P, ["presentation = <%s | %s>" % (gens, rels),
               "abelianization = %s" % (abelianization(P),),
               "hom-signature = %s" % sig_txt]


# -- commands ----------------------------------------------------------------------------

def cmd_validate(args):
    schema, value = mio.load(args.file)
    rep = Report("validate")
    rep.data["schema"] = schema
    if schema == "groupoid.v1":
        problems = validate_groupoid(value)
    elif schema in ("functor.v1", "bibundle.v1", "complex.v1", "action.v1"):
        problems = value.validate()
    elif schema == "cocycle.v1":
        problems = validate_cocycle(value)
    else:
        problems = []
    rep.add("axioms", "obstruction-found" if len(problems) else "exact",
            "%d violations" % len(problems),
            [list(p) for p in problems[:10]] or None)
    lines = ["%s: %s" % (schema, "valid" if rep.passed else "INVALID")]
    lines += ["  %s: %r" % (p[0], p[1]) for p in problems[:10]]
    if schema == "bibundle.v1" and rep.passed:
        right, left = is_principal(value), is_left_principal(value)
        rep.data["principal"] = report_ok(right)
        rep.data["biprincipal"] = report_ok(right) and report_ok(left)
        lines.append("principal: %s, biprincipal: %s" % (rep.data["principal"], rep.data["biprincipal"]))
    _emit(args, rep, lines)
    return _status_code(rep)


def cmd_orbits(args):
    G = _groupoid_of(*mio.load(args.file))
    labels = G.obj_labels or list(G.objects())
    cls = [[labels[x] for x in c] for c in orbits(G)]
    rep = Report("orbits", data={"orbits": cls})
    rep.add("orbits", "exact", "%d orbits" % len(cls))
    _emit(args, rep, ["%d orbits" % len(cls)] + ["  " + " ".join(map(str, c)) for c in cls])
    return EXIT_OK


def cmd_isotropy(args):
    G = _groupoid_of(*mio.load(args.file))
    a = _label(G.obj_labels, args.at)
    H = isotropy(G, a)
    match = [T.name for T in default_targets() if H.order == T.order
             and probably_isomorphic(H, T).verdict == "yes-certified"]
    rep = Report("isotropy", data={"object": args.at, "order": H.order,
                                   "abelian": H.is_abelian(), "isomorphic to": match})
    rep.add("isotropy", "exact", "group of order %d" % H.order)
    lines = ["isotropy at %s: order %d%s" % (args.at, H.order, ", abelian" if H.is_abelian() else "")]
    if match:
        lines.append("isomorphic to %s" % ", ".join(match))
    _emit(args, rep, lines)
    return EXIT_OK


def cmd_pi1(args):
    rep = Report("pi1")
    if args.borel:
        if not args.action:
            raise InputError("--borel needs --action")
        _, A = mio.load(args.action, "action.v1")
        schema, value = mio.load(args.file)
        if schema == "complex.v1" and value != A.complex:
            raise InputError("the action does not act on %s" % args.file)
        base = _label(A.complex.labels, args.base) if args.base is not None else 0
        P = BorelModel(A, base).presentation
        rep.data["model"] = "Borel construction"
    else:
        schema, value = mio.load(args.file)
        if schema == "complex.v1":
            base = _label(value.labels, args.base) if args.base is not None else 0
            P = pi1_presentation(value, base)
            rep.data["model"] = "edge-path group"
        else:
            G = _groupoid_of(schema, value)
            a = _label(G.obj_labels, args.base) if args.base is not None else 0
            if args.nerve:
                P = pi1_nerve(G, a)
                rep.data["model"] = "nerve"
            else:
                H = isotropy(G, a)
                P = group_presentation(H)[0]
                rep.data["model"] = "isotropy"
    P, lines = _presentation_lines(P)
    rep.data["presentation"] = lines[0].split(" = ", 1)[1]
    rep.data["pi1_ab"] = str(abelianization(P))
    rep.data["hom-signature"] = lines[2].split(" = ", 1)[1]
    rep.add("pi1", "exact", rep.data["model"])
    _emit(args, rep, ["pi1 = %s" % rep.data["pi1_ab"]] + lines)
    return EXIT_OK


def cmd_morita(args):
    GA = _groupoid_of(*mio.load(args.file_a))
    GB = _groupoid_of(*mio.load(args.file_b))
    res = morita_equivalent(GA, GB)
    rep = Report("morita", data={"reason": res.reason})
    if not res.equivalent:
        rep.add("equivalent", "obstruction-found", res.reason)
        _emit(args, rep, ["not equivalent: %s" % res.reason])
        return EXIT_FAIL
    ok = is_biprincipal(res.witness)
    rep.add("equivalent", "exact", "orbit/isotropy match")
    rep.add("witness biprincipal", "exact" if ok else "obstruction-found")
    witness = mio.bibundle_to_json(res.witness)
    lines = ["equivalent"]
    if args.out:
        mio.write_json(witness, args.out)
        lines.append("witness: %d points, written to %s" % (res.witness.n_total, args.out))
    else:
        rep.data["witness"] = witness
        lines.append("witness:")
        lines.append(json.dumps(witness))
    if args.json:
        rep.data["witness"] = witness
    _emit(args, rep, lines)
    return _status_code(rep)


def cmd_tensor(args):
    _, Q = mio.load(args.file_q, "bibundle.v1")
    _, P = mio.load(args.file_p, "bibundle.v1")
    for name, B in (("Q", Q), ("P", P)):
        if not B.validate().ok or not report_ok(is_principal(B)):
            raise InputError("%s is not a principal bibundle" % name)
    try:
        R = tensor(Q, P)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    doc = mio.bibundle_to_json(R)
    rep = Report("tensor", data={"points": R.n_total})
    rep.add("principal", "exact" if report_ok(is_principal(R)) else "obstruction-found")
    if args.out:
        mio.write_json(doc, args.out)
        lines = ["tensor product: %d points, written to %s" % (R.n_total, args.out)]
    else:
        lines = [json.dumps(doc)]
    if args.json:
        rep.data["bibundle"] = doc
    _emit(args, rep, lines)
    return _status_code(rep)


def cmd_eff(args):
    _, A = mio.load(args.action, "action.v1")
    rep = Report("eff")
    try:
        eff = eff_translation(A)
    except NonUniformIneffectivity as exc:
        rep.add("uniform kernel", "obstruction-found", str(exc))
        _emit(args, rep, ["error: %s" % exc])
        return EXIT_FAIL
    rep.add("uniform kernel", "exact", "order %d" % len(eff.kernel_elements))
    rep.data["K"] = "order %d" % len(eff.kernel_elements)
    rep.data["G/K"] = "order %d" % eff.quotient.order
    doc = mio.action_to_json(eff.action)
    lines = ["ineffective kernel: order %d; effective group: order %d"
             % (len(eff.kernel_elements), eff.quotient.order)]
    if args.out:
        mio.write_json(doc, args.out)
        lines.append("effective action written to %s" % args.out)
    if args.json:
        rep.data["action"] = doc
    _emit(args, rep, lines)
    return EXIT_OK


def cmd_lift_cocycle(args):
    _, phi = mio.load(args.functor, "functor.v1")
    doc = mio.read_json(args.cocycle)
    try:
        c = mio.cocycle_from_json(doc, base_dir=os.path.dirname(args.cocycle), groupoid=phi.target)
    except mio.SchemaError as exc:
        raise mio.SchemaError(exc.where, exc.message, exc.path or args.cocycle) from None
    rep = Report("lift-cocycle")
    try:
        lifted = lift_cocycle(phi, c)
    except LiftError as exc:
        rep.add("lift", "obstruction-found", str(exc))
        _emit(args, rep, ["no lift: %s" % exc])
        return EXIT_FAIL
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep.add("lift", "exact", "pushforward equals the input")
    out = mio.cocycle_to_json(lifted)
    if args.out:
        mio.write_json(out, args.out)
        lines = ["lifted cocycle written to %s" % args.out]
    else:
        lines = [json.dumps(out)]
    if args.json:
        rep.data["cocycle"] = out
    _emit(args, rep, lines)
    return EXIT_OK


def cmd_check_seq(args):
    _, A = mio.load(args.action, "action.v1")
    base = _label(A.complex.labels, args.base) if args.base is not None else 0
    if not A.complex.is_connected():
        raise InputError("the complex must be connected")
    check = check_example4_sequence if args.which == "example4" else check_eff_sequence
    try:
        rep = check(A, base)
    except NonUniformIneffectivity as exc:
        rep = Report("eff sequence")
        rep.add("uniform kernel", "obstruction-found", str(exc))
    ab = "pass" if rep.passed else rep.status
    lines = ["%s: %s" % (rep.title, rep.status),
             "exact-abelian-only: %s; hom-signature: %s" % (ab, rep.data.get("hom-check", "not-checked"))]
    lines += ["  %-14s %s" % (c.name, c.verdict) for c in rep.checks]
    lines += ["  %s = %s" % kv for kv in rep.data.items() if kv[0] != "hom-check"]
    _emit(args, rep, lines)
    return _status_code(rep)


def cmd_catalog(args):
    if args.action == "list":
        rep = Report("catalog", data={e.name: e.description for e in catalog.ENTRIES})
        rep.add("list", "exact")
        _emit(args, rep, ["%-22s %s" % (e.name, e.description) for e in catalog.ENTRIES])
        return EXIT_OK
    if args.all:
        entries = catalog.ENTRIES
    elif args.name:
        try:
            entries = [catalog.get(args.name)]
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    else:
        raise InputError("catalog run needs an entry name or --all")
    results = [(e, e.run()) for e in entries]
    if args.json:
        docs = [dict(r.report.as_dict(), summary=r.summary, reference=e.reference)
                for e, r in results]
        print(json.dumps(docs[0] if len(docs) == 1 else docs, indent=1))
    else:
        for e, r in results:
            print("[%s] %s" % (e.name, r.report.status))
            for line in r.summary:
                print(line)
            if args.verbose:
                print(r.report.format_text())
    return EXIT_OK if all(r.report.passed for _, r in results) else EXIT_FAIL


# -- parser ------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a report.v1 JSON document")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS,
                        help="also print the full check list")
    p = argparse.ArgumentParser(prog="morita", parents=[common],
                                description="Finite groupoids, bibundles and their homotopy invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the axioms of any supported file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("orbits", parents=[common], help="orbits of a groupoid")
    s.add_argument("file")
    s.set_defaults(func=cmd_orbits)

    s = sub.add_parser("isotropy", parents=[common], help="isotropy group at an object")
    s.add_argument("file")
    s.add_argument("--at", required=True)
    s.set_defaults(func=cmd_isotropy)

    s = sub.add_parser("pi1", parents=[common], help="fundamental group")
    s.add_argument("file")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--nerve", action="store_true")
    mode.add_argument("--borel", action="store_true")
    s.add_argument("--action")
    s.add_argument("--base")
    s.set_defaults(func=cmd_pi1)

    s = sub.add_parser("morita", parents=[common], help="decide Morita equivalence")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--out", help="write the witness bibundle here")
    s.set_defaults(func=cmd_morita)

    s = sub.add_parser("tensor", parents=[common], help="tensor product Q (x) P of bibundles")
    s.add_argument("file_q")
    s.add_argument("file_p")
    s.add_argument("--out")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("eff", parents=[common], help="effective quotient of an action")
    s.add_argument("--action", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_eff)

    s = sub.add_parser("lift-cocycle", parents=[common], help="lift a cocycle along a functor")
    s.add_argument("--functor", required=True)
    s.add_argument("--cocycle", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_lift_cocycle)

    s = sub.add_parser("check-seq", parents=[common], help="check an exact sequence of pi1")
    s.add_argument("which", choices=("example4", "eff"))
    s.add_argument("--action", required=True)
    s.add_argument("--base")
    s.set_defaults(func=cmd_check_seq)

    s = sub.add_parser("catalog", parents=[common], help="list or run catalog entries")
    s.add_argument("action", choices=("list", "run"))
    s.add_argument("name", nargs="?")
    s.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.verbose = getattr(args, "verbose", False)
    try:
        return args.func(args)
    except mio.SchemaError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, ValueError) as exc:
        print("error: %s" % (exc.args[0] if exc.args else exc), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
