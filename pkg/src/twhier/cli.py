"""Command-line interface.

Verbs: classify-language, classify-monoid, check-identity, ranker,
equiv, itl, witness.  Boolean "no" answers are decided answers and exit
0; exit 2 marks input errors, exit 3 an exceeded cap.  Reports are
deterministic; ``--format keyvalue`` prints one tab-separated pair per
line for machine consumption.
"""

import argparse
import sys

from . import itl, rankers, witnesses
from .errors import (
    InternalDefect,
    ParseError,
    SearchSpaceExceeded,
    SizeCapExceeded,
    StateCapExceeded,
    WorkbenchError,
)
from .languages import (
    Dfa,
    parse_regex,
    regex_to_dfa,
    render_regex,
    syntactic_monoid,
)
from .monfile import read_mon
from .terms import (
    DEFAULT_SEARCH_CAP,
    lm_identity,
    parse_identity,
    rm_identity,
    satisfies_identity,
    w_identity,
)
from .varieties import VARIETY_FAMILIES, classify


def _fmt(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


def _fmt_assignment(assignment, monoid, order=None):
    names = [n for n in order if n in assignment] if order \
        else sorted(assignment)
    return ",".join(f"{name}={monoid.label_of(assignment[name])}"
                    for name in names)


def parse_dfa_file(path):
    """Small text format for explicit automata:

        states <n> / initial <i> / accepting <i...> / alphabet <letters>
        delta
        <n rows of |alphabet| target states, row per state>
    """
    with open(path, encoding="utf-8") as handle:
        lines = [ln.split("#", 1)[0].strip() for ln in handle]
    lines = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    fields = {}
    pos = 0
    for key in ("states", "initial", "accepting", "alphabet"):
        if pos >= len(lines):
            raise ParseError(pos, f"'{key} ...'")
        lineno, line = lines[pos]
        parts = line.split()
        if parts[0] != key:
            raise ParseError(lineno, f"'{key} ...'")
        fields[key] = parts[1:]
        pos += 1
    lineno, line = lines[pos]
    if line != "delta":
        raise ParseError(lineno, "'delta'")
    pos += 1
    n = int(fields["states"][0])
    alphabet = tuple(sorted(fields["alphabet"][0])) if fields["alphabet"] else ()
    delta = []
    for _ in range(n):
        lineno, line = lines[pos]
        row = tuple(int(v) for v in line.split())
        if len(row) != len(alphabet):
            raise ParseError(lineno, f"{len(alphabet)} targets")
        delta.append(row)
        pos += 1
    return Dfa(n, int(fields["initial"][0]),
               frozenset(int(v) for v in fields["accepting"]),
               alphabet, tuple(delta))


def _profile_pairs(profile, extra_first=()):
    pairs = list(extra_first)
    pairs += [
        ("in_da", profile.in_da),
        ("min_r", profile.min_r),
        ("min_l", profile.min_l),
        ("min_join", profile.min_join),
        ("min_intersection", profile.min_intersection),
    ]
    return pairs


def _cmd_classify_language(args):
    if args.dfa:
        dfa = parse_dfa_file(args.dfa)
    else:
        alphabet = set(args.alphabet) if args.alphabet else None
        dfa = regex_to_dfa(parse_regex(args.pattern), alphabet=alphabet)
    morphism = syntactic_monoid(dfa)
    profile = classify(morphism.monoid, cap=args.cap, jobs=args.jobs)
    pairs = _profile_pairs(profile,
                           [("monoid_size", morphism.monoid.size)])
    return pairs, [f"{k}={_fmt(v)}" for k, v in pairs]


def _cmd_classify_monoid(args):
    monoid, _ = read_mon(args.file)
    profile = classify(monoid, cap=args.cap, jobs=args.jobs)
    pairs = _profile_pairs(profile, [("monoid_size", monoid.size)])
    return pairs, [f"{k}={_fmt(v)}" for k, v in pairs]


def _family_identity(spec_text):
    if ":" in spec_text:
        name, _, level = spec_text.partition(":")
        m = int(level)
        makers = {"W": w_identity, "R": rm_identity, "L": lm_identity}
        if name not in makers:
            raise ParseError(0, "family W:<m>, R:<m>, or L:<m>")
        return [makers[name](m)]
    if spec_text not in VARIETY_FAMILIES:
        raise ParseError(0, f"one of {sorted(VARIETY_FAMILIES)} or W:/R:/L:<m>")
    return [mk() for mk in VARIETY_FAMILIES[spec_text]]


def _cmd_check_identity(args):
    monoid, _ = read_mon(args.file)
    if args.family:
        idents = _family_identity(args.family)
        label = args.family
    elif args.identity:
        idents = [parse_identity(args.identity)]
        label = args.identity
    else:
        raise ParseError(0, "an identity or --family")
    counterexample = None
    failing = None
    for ident in idents:
        verdict = satisfies_identity(monoid, ident, cap=args.cap,
                                     jobs=args.jobs)
        if not verdict.holds:
            counterexample = verdict.counterexample
            failing = ident
            break
    pairs = [("identity", label), ("holds", counterexample is None)]
    lines = [f"holds={_fmt(counterexample is None)}"]
    if counterexample is not None:
        rendered = _fmt_assignment(counterexample, monoid, failing.variables)
        pairs.append(("counterexample", rendered))
        lines.append(f"counterexample {rendered}")
    return pairs, lines


def _cmd_ranker(args):
    ranker = rankers.Ranker.parse(args.ranker)
    if args.action == "eval":
        pos = rankers.eval_ranker(ranker, args.word)
        value = "undefined" if pos is None else pos
        return [("position", value)], [_fmt(value)]
    flag = rankers.is_condensed(ranker, args.word)
    return [("condensed", flag)], [_fmt(flag)]


def _cmd_equiv(args):
    alphabet = set(args.alphabet) if args.alphabet else set(args.u) | set(args.v)
    alphabet = alphabet or {"a"}
    same = rankers.equivalent(args.u, args.v, alphabet, args.m, args.n, "full")
    if same:
        return [("equivalent", True)], ["equivalent"]
    formula = itl.distinguishing_formula(args.u, args.v, alphabet, args.m,
                                         args.n)
    rendered = itl.render_formula(formula)
    pairs = [("equivalent", False), ("distinguishing_formula", rendered)]
    return pairs, [f"not equivalent; distinguishing formula: {rendered}"]


def _cmd_itl_eval(args):
    formula = itl.parse_formula(args.formula)
    value = itl.eval_formula(args.word, formula)
    return [("satisfied", value)], [_fmt(value)]


def _cmd_itl_definable(args):
    alphabet = set(args.alphabet) if args.alphabet else None
    dfa = regex_to_dfa(parse_regex(args.pattern), alphabet=alphabet)
    value = itl.definable_in_itl_m(dfa, args.m, cap=args.cap, jobs=args.jobs)
    pairs = [("level", args.m), ("definable", value)]
    return pairs, ["definable" if value else "not definable"]


def _cmd_witness(args):
    if not args.verify:
        regex, spec = witnesses.witness_language(args.m, args.m)
        morphism = syntactic_monoid(regex_to_dfa(regex))
        u, v = witnesses.witness_words(args.m, monoid=morphism.monoid)
        pairs = [
            ("level", args.m),
            ("pattern", render_regex(regex)),
            ("alphabet", "".join(sorted(spec.alphabet))),
            ("monoid_size", morphism.monoid.size),
            ("witness_u", u),
            ("witness_v", v),
        ]
        return pairs, [f"{k}={_fmt(v)}" for k, v in pairs]
    report = witnesses.verify_separation(args.m, cap=args.cap, jobs=args.jobs)
    monoid = report.monoid
    counterexample = _fmt_assignment(report.w_counterexample, monoid,
                                     w_identity(args.m).variables)
    pairs = [
        ("level", report.level),
        ("pattern", report.pattern),
        ("alphabet", "".join(report.alphabet)),
        ("monoid_size", report.monoid_size),
        ("exponent", report.exponent),
        ("in_r_next", report.in_r_next),
        ("in_l_next", report.in_l_next),
        ("w_holds", False),
        ("counterexample", counterexample),
        ("witness_u", report.witness_u),
        ("witness_v", report.witness_v),
        ("u_in_language", report.u_in_language),
        ("v_in_language", report.v_in_language),
        ("image_u", monoid.label_of(report.image_u)),
        ("image_v", monoid.label_of(report.image_v)),
        ("separation_verified", report.all_checks_pass),
    ]
    return pairs, [f"{k}={_fmt(v)}" for k, v in pairs]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP,
                        help="assignment-scan cap for identity checks")
    common.add_argument("--alphabet", default=None,
                        help="widen the inferred alphabet to these letters")
    common.add_argument("--format", choices=("text", "keyvalue"),
                        default="text")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker threads for identity scans")

    parser = argparse.ArgumentParser(
        prog="twhier",
        description="Decide where finite monoids and regular languages "
                    "sit in the Trotter-Weil hierarchy.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify-language", parents=[common],
                       help="hierarchy profile of a regular language")
    p.add_argument("pattern", nargs="?", default=None)
    p.add_argument("--dfa", default=None, help="read an explicit automaton")
    p.set_defaults(handler=_cmd_classify_language)

    p = sub.add_parser("classify-monoid", parents=[common],
                       help="hierarchy profile of a monoid (.mon file)")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_classify_monoid)

    p = sub.add_parser("check-identity", parents=[common],
                       help="check an omega-term identity on a monoid")
    p.add_argument("file")
    p.add_argument("identity", nargs="?", default=None)
    p.add_argument("--family", default=None,
                   help="DA|R|L|J|B|J1 or W:<m>|R:<m>|L:<m>")
    p.set_defaults(handler=_cmd_check_identity)

    p = sub.add_parser("ranker", parents=[common],
                       help="evaluate rankers on words")
    p.add_argument("action", choices=("eval", "condensed"))
    p.add_argument("ranker")
    p.add_argument("word")
    p.set_defaults(handler=_cmd_ranker)

    p = sub.add_parser("equiv", parents=[common],
                       help="ranker equivalence of two words")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(handler=_cmd_equiv)

    p = sub.add_parser("itl",
                       help="interval-logic evaluation and definability")
    itl_sub = p.add_subparsers(dest="action", required=True)
    q = itl_sub.add_parser("eval", parents=[common])
    q.add_argument("formula")
    q.add_argument("word")
    q.set_defaults(handler=_cmd_itl_eval)
    q = itl_sub.add_parser("definable", parents=[common])
    q.add_argument("--m", type=int, required=True)
    q.add_argument("pattern")
    q.set_defaults(handler=_cmd_itl_definable)

    p = sub.add_parser("witness", parents=[common],
                       help="separating language for a level")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(handler=_cmd_witness)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "classify-language" and not (args.pattern or args.dfa):
        parser.error("classify-language needs a pattern or --dfa")
    try:
        pairs, lines = args.handler(args)
    except (SearchSpaceExceeded, SizeCapExceeded, StateCapExceeded) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (InternalDefect,) as exc:
        print(f"internal defect: {exc}", file=sys.stderr)
        return 1
    except (WorkbenchError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "keyvalue":
        for key, value in pairs:
            print(f"{key}\t{_fmt(value)}")
    else:
        for line in lines:
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
