"""
Command line interface.

Exit codes:

===== ===========================================================================
code  meaning
===== ===========================================================================
0     valid up to the bound, inconclusive, defines, ok, every scenario passed
1     refuted, discarded, counterexample frame, invalid step, failing law or scenario
2     any other error of the package
64    usage error
66    missing or unreadable input file
===== ===========================================================================
"""
import json
import logging
import sys
from argparse import ArgumentParser, ArgumentTypeError, RawDescriptionHelpFormatter

from ._version import __version__
from .config import LOG_LEVELS, load_settings, to_boolean
from .errors import MvModalError
from .logging_setup import setup_loggers
from .search.msg import dump

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_ERROR = 2
EXIT_USAGE = 64
EXIT_NOINPUT = 66

FRAME_CLASSES = ("all", "idem", "crisp", "boolean")
FORMATS = ("text", "json-lines")


class _UsageError(Exception):
    pass


class _Parser(ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _on_off(text):
    value = to_boolean(text)
    if value is None:
        raise ArgumentTypeError(f"expected on or off, got {text!r}")
    return value


# Output


def _emit(args, result):
    """Write a report: its ``text()`` or one json line of its fields."""
    if args.format == "json-lines":
        record = result.record() if hasattr(result, "record") else dump(result)
        print(json.dumps(record, ensure_ascii=False))
    else:
        print(result.text(), end="")


def _emit_lines(args, records, text_lines):
    if args.format == "json-lines":
        for record in records:
            print(json.dumps(record, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _fields_text(title, fields):
    width = max(len(k) for k in fields)
    lines = [title]
    for key, value in fields.items():
        if isinstance(value, list):
            value = " ".join(value) if value else "-"
        lines.append(f"  {key.ljust(width)}  {value}")
    return "\n".join(lines)


# Shared arguments


def _algebra(args, reference=None):
    from .algebra.presets import resolve_algebra

    reference = reference if reference is not None else args.algebra
    if reference is None:
        raise _UsageError("an algebra is required (--algebra)")
    constants = args.constants
    if constants is None and args.settings.constants:
        constants = True
    return resolve_algebra(reference, constants=constants)


def _budget(args):
    from .search.msg import SearchBudget

    return SearchBudget(
        max_worlds=args.max_worlds,
        jobs=args.jobs or args.settings.jobs,
        model_cap=args.settings.model_cap,
    )


def _formula(text):
    from .formula.parser import parse

    return parse(text)


# algebra


def cmd_algebra(args):
    from .algebra.analysis import check_laws, classify
    from .algebra.textio import dump_algebra

    algebra = _algebra(args, args.reference)
    if args.action == "show":
        report = classify(algebra)
        if args.format == "json-lines":
            _emit(args, report)
        else:
            print(dump_algebra(algebra), end="")
            print(_fields_text("classification:", dump(report)))
        return EXIT_OK
    report = check_laws(algebra)
    if args.format == "json-lines":
        _emit(args, report)
    else:
        for law, witness in report.laws.items():
            if witness is None:
                print(f"ok   {law}")
            else:
                print(f"FAIL {law} at " + ", ".join(f"{k}={v}" for k, v in witness.items()))
    return EXIT_OK if report.ok else EXIT_FOUND


# formula


def cmd_formula(args):
    from .formula.companion import companion, standard_translation
    from .formula.eta import characterizing_formula

    if args.action == "eta":
        algebra = _algebra(args)
        if args.element not in algebra.labels:
            raise _UsageError(f"{args.element!r} is not an element of {algebra.reference}")
        result = str(characterizing_formula(algebra, algebra.index(args.element)))
    else:
        phi = _formula(args.formula)
        if args.action == "parse":
            result = str(phi)
        elif args.action == "companion":
            result = str(companion(phi, indexing=args.indexing))
        else:
            result = standard_translation(phi, free_var=args.free_var)
    _emit_lines(args, [{"action": args.action, "result": result}], [result])
    return EXIT_OK


# model


def cmd_model(args):
    from .semantics.modelio import load_model

    model = load_model(args.model_file)
    phi = _formula(args.formula)
    worlds = [args.world] if args.world is not None else list(model.worlds)
    values = [(model.worlds[model.frame.world_index(w)], model.eval(phi, w).label) for w in worlds]
    if args.world is not None:
        text = [values[0][1]]
    else:
        text = [f"{w} = {label}" for w, label in values]
    records = [{"formula": str(phi), "world": w, "value": label} for w, label in values]
    _emit_lines(args, records, text)
    return EXIT_OK


# search


def cmd_search(args):
    from .search import enumeration

    algebra = _algebra(args)
    action = args.action
    if action == "discard":
        from .search.companion import companion_discard

        premises = [_formula(text) for text in args.premise]
        verdict = companion_discard(algebra, _formula(args.formula), args.variant, premises)
        _emit(args, verdict)
        return EXIT_FOUND if verdict.discarded else EXIT_OK
    if action == "lift":
        from .search.companion import companion_lift

        formulas = [_formula(text) for text in args.formulas]
        _, result = companion_lift(
            algebra,
            _formula(args.delta),
            _formula(args.epsilon),
            formulas[:-1],
            formulas[-1],
            witnessed=args.witnessed,
        )
        _emit(args, result)
        return EXIT_OK
    if action == "define":
        result = enumeration.frame_definability_check(
            [_formula(text) for text in args.formulas], args.frame_class, algebra, _budget(args)
        )
        _emit(args, result)
        return EXIT_OK if result.defines else EXIT_FOUND

    phi = _formula(args.formula)
    if action == "valid":
        verdict = enumeration.validity_search(algebra, args.frame_class, phi, _budget(args))
    else:
        premises = [_formula(text) for text in args.premise]
        if action == "local":
            search = enumeration.local_consequence_refute
        else:
            search = enumeration.global_consequence_refute
        verdict = search(algebra, args.frame_class, premises, phi, _budget(args))
    _emit(args, verdict)
    return EXIT_FOUND if verdict.refuted else EXIT_OK


# calc


def cmd_calc(args):
    if args.action == "bookkeeping":
        from .calculus.generators import generate_bookkeeping, generate_witnessing

        algebra = _algebra(args, args.reference).with_constants()
        formulas = [str(phi) for phi in generate_bookkeeping(algebra)] + [str(generate_witnessing(algebra))]
        _emit_lines(args, [{"formula": phi} for phi in formulas], formulas)
        return EXIT_OK

    from .calculus.derivation import check_derivation, load_derivation
    from .calculus.soundness import soundness_probe

    derivation = load_derivation(args.derivation_file)
    calc = derivation.build_calculus()
    report = check_derivation(calc, derivation, strict=False)
    _emit(args, report)
    if not report.ok:
        return EXIT_FOUND
    if args.probe is not None:
        probe = soundness_probe(calc, [derivation], args.probe)
        _emit(args, probe)
        return EXIT_OK if probe.sound else EXIT_FOUND
    return EXIT_OK


# reproduce


def cmd_reproduce(args):
    from .scenarios import SCENARIOS, run_all, run_scenario

    jobs = args.jobs or args.settings.jobs
    if args.list:
        records = [{"id": s.id, "description": s.description} for s in SCENARIOS.values()]
        _emit_lines(args, records, [f"{s.id}  {s.description}" for s in SCENARIOS.values()])
        return EXIT_OK
    if args.scenario in (None, "all"):
        results = run_all(jobs=jobs)
    else:
        results = [run_scenario(args.scenario, jobs=jobs)]
    for result in results:
        _emit(args, result)
    failed = [result.id for result in results if not result.passed]
    if failed:
        logger.warning("Failed scenarios: %s", ", ".join(failed))
    return EXIT_FOUND if failed else EXIT_OK


# Parser


def _common_parser():
    common = _Parser(add_help=False)
    common.add_argument("--algebra", help="preset expression or algebra file; append ^c for constants")
    common.add_argument("--constants", type=_on_off, default=None, metavar="on|off")
    common.add_argument("--format", choices=FORMATS, default="text")
    return common


def _search_parser():
    search = _Parser(add_help=False)
    search.add_argument("--class", dest="frame_class", choices=FRAME_CLASSES, default="all")
    search.add_argument("--max-worlds", type=_positive_int, default=2)
    search.add_argument("--jobs", type=_positive_int, default=None)
    return search


def build_parser():
    """
    The argument parser of the ``mvmodal`` command.

    Returns
    -------
    ArgumentParser
    """
    parser = _Parser(
        prog="mvmodal",
        description="Finite residuated lattices, many-valued Kripke models and modal calculi.",
        formatter_class=RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"mvmodal {__version__}")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default=None, type=str.upper)
    groups = parser.add_subparsers(dest="group", metavar="command")
    groups.required = True
    common, search_options = _common_parser(), _search_parser()

    algebra = groups.add_parser("algebra", help="validate or show an algebra")
    algebra.set_defaults(handler=cmd_algebra)
    actions = algebra.add_subparsers(dest="action", metavar="action")
    actions.required = True
    for name, text in (("check", "check the lattice laws"), ("show", "print the tables and the classification")):
        sub = actions.add_parser(name, parents=[common], help=text)
        sub.add_argument("reference", metavar="ALGEBRA")

    formula = groups.add_parser("formula", help="parse and translate formulas")
    formula.set_defaults(handler=cmd_formula)
    actions = formula.add_subparsers(dest="action", metavar="action")
    actions.required = True
    actions.add_parser("parse", parents=[common], help="print the canonical form").add_argument("formula")
    sub = actions.add_parser("companion", parents=[common], help="the non-modal companion")
    sub.add_argument("formula")
    sub.add_argument("--indexing", choices=("degree", "level"), default="degree")
    sub = actions.add_parser("translate", parents=[common], help="the standard translation")
    sub.add_argument("formula")
    sub.add_argument("--free-var", default="x")
    sub = actions.add_parser("eta", parents=[common], help="the characterizing formula of an element")
    sub.add_argument("element")

    model = groups.add_parser("model", help="evaluate formulas in a model file")
    model.set_defaults(handler=cmd_model)
    actions = model.add_subparsers(dest="action", metavar="action")
    actions.required = True
    sub = actions.add_parser("eval", parents=[common], help="value of a formula at one or every world")
    sub.add_argument("model_file")
    sub.add_argument("formula")
    sub.add_argument("world", nargs="?")

    search = groups.add_parser("search", help="bounded countermodel search")
    search.set_defaults(handler=cmd_search)
    actions = search.add_subparsers(dest="action", metavar="action")
    actions.required = True
    parents = [common, search_options]
    actions.add_parser("valid", parents=parents, help="validity on a frame class").add_argument("formula")
    for name in ("local", "global"):
        sub = actions.add_parser(name, parents=parents, help=f"{name} consequence on a frame class")
        sub.add_argument("--premise", action="append", default=[])
        sub.add_argument("formula")
    sub = actions.add_parser("define", parents=parents, help="do the formulas define the frame class")
    sub.add_argument("formulas", nargs="+")
    sub = actions.add_parser("discard", parents=[common], help="companion method")
    sub.add_argument("formula")
    sub.add_argument("--variant", choices=("Fr", "IFr", "CFr"), default="Fr")
    sub.add_argument("--premise", action="append", default=[])
    sub = actions.add_parser("lift", parents=[common], help="lift a non-modal theorem to a modal one")
    sub.add_argument("--delta", required=True)
    sub.add_argument("--epsilon", required=True)
    sub.add_argument("--witnessed", action="store_true")
    sub.add_argument("formulas", nargs="+", help="phi_1 ... phi_n followed by phi")

    calc = groups.add_parser("calc", help="calculi and derivations")
    calc.set_defaults(handler=cmd_calc)
    actions = calc.add_subparsers(dest="action", metavar="action")
    actions.required = True
    sub = actions.add_parser("check", parents=[common], help="check a derivation file")
    sub.add_argument("derivation_file")
    sub.add_argument("--probe", type=_positive_int, default=None, metavar="MAX_WORLDS")
    sub = actions.add_parser("bookkeeping", parents=[common], help="book-keeping and witnessing axioms")
    sub.add_argument("reference", metavar="ALGEBRA")

    reproduce = groups.add_parser("reproduce", parents=[common], help="run reproduction scenarios")
    reproduce.set_defaults(handler=cmd_reproduce, action="reproduce")
    reproduce.add_argument("scenario", nargs="?", help="scenario id or 'all'")
    reproduce.add_argument("--list", action="store_true")
    reproduce.add_argument("--jobs", type=_positive_int, default=None)
    return parser


def main(argv=None):
    """
    Entry point of the ``mvmodal`` console script.

    Returns
    -------
    int
        Exit code
    """
    parser = build_parser()
    try:
        settings = load_settings()
    except ValueError as ex:
        print(f"mvmodal: {ex}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    args.settings = settings

    log_stream = sys.stderr if args.format == "json-lines" else sys.stdout
    setup_loggers(log_level=args.log_level or settings.log_level, stream=log_stream)

    try:
        return args.handler(args)
    except _UsageError as ex:
        print(f"mvmodal: error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as ex:
        print(f"mvmodal: {ex}", file=sys.stderr)
        return EXIT_NOINPUT
    except MvModalError as ex:
        print(f"mvmodal: {type(ex).__name__}: {ex}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as ex:
        print(f"mvmodal: {ex}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
