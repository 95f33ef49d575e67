"""Command-line front-end.

One command per invocation, one primary answer line on stdout, diagnostics
on stderr.  Exit codes: 0 answered, 2 malformed input, 3 alphabet outside
the decidable class for a decision command, 4 oracle disagreement, 5
resource limit exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .automata import nfa_parikh
from .engine import (
    DEFAULT_LIMITS,
    Limits,
    decide_rational,
    decide_submonoid,
    decide_subgroup,
)
from .errors import InputError, NotTransitiveForestError, ResourceLimitError
from .fileio import load_alphabet, load_automaton, load_grammar
from .grammar import cfg_normalize, cfg_parikh
from .oracles import benois_member, bfs_member
from .semilinear import render_semilinear
from .traces import (
    DirectZ,
    FreeProduct,
    Trivial,
    ia_decompose,
    ia_is_transitive_forest,
    parse_word,
    render_word,
    trace_nf,
    wp,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_ORACLE = 4
EXIT_RESOURCE = 5


def _render_tree(tree) -> str:
    if isinstance(tree, Trivial):
        return "triv"
    if isinstance(tree, DirectZ):
        return f"(z {tree.vertex} {_render_tree(tree.child)})"
    if isinstance(tree, FreeProduct):
        return "(free " + " ".join(_render_tree(c) for c in tree.children) + ")"
    raise InputError(f"not a decomposition tree: {tree!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ggdec",
        description="membership decision procedures for graph groups over transitive forests",
    )
    parser.add_argument("--max-states", type=int, default=None,
                        help="cap on input automaton states")
    parser.add_argument("--max-parikh-states", type=int, default=None,
                        help="cap on per-call Parikh automaton states")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forest", help="recognise a transitive forest")
    p.add_argument("alphabet")

    p = sub.add_parser("decompose", help="print the decomposition tree")
    p.add_argument("alphabet")

    p = sub.add_parser("nf", help="canonical normal form of a word")
    p.add_argument("alphabet")
    p.add_argument("word")

    p = sub.add_parser("wp", help="is the word trivial in the group?")
    p.add_argument("alphabet")
    p.add_argument("word")

    for name, extra in (("rational", "automaton"), ("submonoid", None), ("subgroup", None)):
        p = sub.add_parser(name, help=f"{name} membership")
        p.add_argument("alphabet")
        if extra:
            p.add_argument(extra)
        else:
            p.add_argument("--gen", action="append", default=[],
                           help="generator word (repeatable)")
        p.add_argument("word")
        p.add_argument("--check-benois", action="store_true",
                       help="cross-check with the free-group saturation oracle")
        p.add_argument("--check-bfs", type=int, metavar="N", default=None,
                       help="cross-check with bounded search up to length N")

    p = sub.add_parser("parikh-nfa", help="Parikh image of an automaton language")
    p.add_argument("automaton")

    p = sub.add_parser("parikh-cfg", help="Parikh image of a grammar language")
    p.add_argument("grammar")
    return parser


def _limits(args) -> Limits:
    kwargs = {}
    if args.max_states is not None:
        kwargs["max_input_states"] = args.max_states
    if args.max_parikh_states is not None:
        kwargs["parikh_max_states"] = args.max_parikh_states
    if not kwargs:
        return DEFAULT_LIMITS
    base = DEFAULT_LIMITS.__dict__ | kwargs
    return Limits(**base)


def _decision_automaton(args, alphabet):
    from .automata import empty_language, from_word, star, union
    from .traces import word_letters

    if args.command == "rational":
        return load_automaton(args.automaton)
    gens = [parse_word(g, alphabet) for g in args.gen]
    if args.command == "subgroup":
        from .traces import invert_word

        gens = gens + [invert_word(g) for g in gens]
    if gens:
        return star(union(*[from_word(word_letters(g)) for g in gens]))
    return star(empty_language())


def _run_checks(args, alphabet, automaton, word, answer) -> int:
    if getattr(args, "check_benois", False):
        if alphabet.edges:
            raise InputError("--check-benois needs an edge-free alphabet")
        verdict = benois_member(automaton, word, alphabet)
        if verdict != answer:
            print(
                f"oracle mismatch: saturation oracle says {verdict}, engine says {answer}",
                file=sys.stderr,
            )
            return EXIT_ORACLE
    depth = getattr(args, "check_bfs", None)
    if depth is not None:
        verdict = bfs_member(alphabet, automaton, word, depth)
        if verdict.is_yes and not answer:
            print(
                f"oracle mismatch: bounded search found witness {render_word(verdict.witness)}",
                file=sys.stderr,
            )
            return EXIT_ORACLE
    return EXIT_OK


def run_command(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK

    try:
        limits = _limits(args)
        if args.command == "forest":
            alphabet = load_alphabet(args.alphabet)
            ok, witness = ia_is_transitive_forest(alphabet)
            if ok:
                print("TRANSITIVE-FOREST")
            else:
                print(f"NOT-TRANSITIVE-FOREST witness={','.join(witness)}")
            return EXIT_OK

        if args.command == "decompose":
            alphabet = load_alphabet(args.alphabet)
            print(_render_tree(ia_decompose(alphabet)))
            return EXIT_OK

        if args.command == "nf":
            alphabet = load_alphabet(args.alphabet)
            word = parse_word(args.word, alphabet)
            print(render_word(trace_nf(alphabet, word)))
            return EXIT_OK

        if args.command == "wp":
            alphabet = load_alphabet(args.alphabet)
            word = parse_word(args.word, alphabet)
            print("TRIVIAL" if wp(alphabet, word) else "NONTRIVIAL")
            return EXIT_OK

        if args.command in ("rational", "submonoid", "subgroup"):
            alphabet = load_alphabet(args.alphabet)
            ia_decompose(alphabet)  # raise NotTransitiveForestError before other work
            word = parse_word(args.word, alphabet)
            automaton = _decision_automaton(args, alphabet)
            if args.command == "rational":
                answer = decide_rational(alphabet, automaton, word, limits)
            elif args.command == "submonoid":
                gens = [parse_word(g, alphabet) for g in args.gen]
                answer = decide_submonoid(alphabet, gens, word, limits)
            else:
                gens = [parse_word(g, alphabet) for g in args.gen]
                answer = decide_subgroup(alphabet, gens, word, limits)
            print("MEMBER" if answer else "NON-MEMBER")
            return _run_checks(args, alphabet, automaton, word, answer)

        if args.command == "parikh-nfa":
            automaton = load_automaton(args.automaton)
            print(render_semilinear(nfa_parikh(automaton, max_states=limits.parikh_max_states)))
            return EXIT_OK

        if args.command == "parikh-cfg":
            grammar = load_grammar(args.grammar)
            print(render_semilinear(cfg_parikh(cfg_normalize(grammar))))
            return EXIT_OK

        raise InputError(f"unknown command {args.command!r}")
    except NotTransitiveForestError as exc:
        print(f"not a transitive forest: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
