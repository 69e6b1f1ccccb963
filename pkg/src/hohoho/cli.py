"""Command-line entry point: ``hohoho <subcommand> ...``."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import mechcalc, svg
from .codec import COMMAND_SETS, FULL8, Command, Mapping, format_mapping, read_mapping
from .errors import HohohoError, NoSolution
from .notation import Alphabet, HO, OOK
from .recover import RecoveryProblem, format_report, recover, variant_sensitivity
from .transpile import (
    fmt,
    get_language,
    language_for_path,
    loopfree_check,
    parse_program,
    transpile,
)
from .vm import Halt, MachineConfig, compile_program, run

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_SOLUTION = 2
EXIT_HALT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"ERROR: UsageError: {message}", file=sys.stderr)
        sys.exit(EXIT_ERROR)


def _read_text(path) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _language(args, path):
    if getattr(args, "lang", None):
        return get_language(args.lang)
    lang = language_for_path(path)
    if lang is None:
        raise HohohoError(f"cannot infer language of {path!r}; pass --lang")
    return lang


def _write_stdout(text: str):
    sys.stdout.write(text)
    if text and not text.endswith("\n"):
        sys.stdout.write("\n")


def cmd_run(args):
    text = _read_text(args.file)
    lang = _language(args, args.file)
    cmds = parse_program(text, lang, args.notation)
    prog = compile_program(cmds)
    if args.input:
        data = Path(args.input).read_bytes() if args.input != "-" else sys.stdin.buffer.read()
    elif args.file == "-" or Command.INPUT not in prog.cmds:
        data = b""
    else:
        data = sys.stdin.buffer.read()
    cfg = MachineConfig(cell_bits=args.cell_bits, step_limit=args.step_limit)
    result = run(prog, data, cfg)
    sys.stdout.buffer.write(result.output)
    sys.stdout.flush()
    if result.halt is not Halt.FINISHED:
        print(f"ERROR: {result.halt.name}: halted at command {result.ip} "
              f"after {result.steps} steps", file=sys.stderr)
        return EXIT_HALT
    return EXIT_OK


def cmd_transpile(args):
    text = _read_text(args.file)
    src = _language(args, args.file)
    _write_stdout(transpile(src, args.to, text, args.notation))
    return EXIT_OK


def cmd_fmt(args):
    text = _read_text(args.file)
    lang = _language(args, args.file)
    _write_stdout(fmt(text, lang, args.to_notation))
    return EXIT_OK


def cmd_check(args):
    text = _read_text(args.file)
    lang = _language(args, args.file)
    report = loopfree_check(text, lang, COMMAND_SETS[args.subset])
    if not report.clean:
        print(report)
    return EXIT_OK


def _alphabet(text):
    named = {"ho": HO, "binary": HO, "ook": OOK, "ternary": OOK}
    return named.get(text.lower()) or Alphabet.parse(text)


def cmd_recover(args):
    alphabet = _alphabet(args.alphabet)
    anchors = read_mapping(args.anchors) if args.anchors else Mapping(alphabet, args.width)
    problem = RecoveryProblem(
        alphabet=alphabet,
        width=args.width,
        command_set=COMMAND_SETS[args.command_set],
        corpus=_read_text(args.corpus),
        expected_output=args.expect.encode("utf-8"),
        anchors=anchors,
        notation=args.notation,
        prefix_match=args.prefix,
    )
    try:
        solution = recover(problem)
    except NoSolution as e:
        print(f"ERROR: NoSolution: {e}", file=sys.stderr)
        sys.stderr.write(format_report(e.diagnostics))
        return EXIT_NO_SOLUTION
    texts = [format_mapping(m) for m in solution.mappings]
    if args.out:
        Path(args.out).write_text(texts[0], encoding="utf-8")
        for k, t in enumerate(texts[1:], 1):
            Path(f"{args.out}.{k}").write_text(t, encoding="utf-8")
    else:
        sys.stdout.write("\n".join(texts))
    summary = f"{len(texts)} mapping(s) survive; canonical first"
    if args.report:
        Path(args.report).write_text(summary + "\n" + format_report(solution.diagnostics))
    print(summary, file=sys.stderr)
    if args.variants:
        for name, ok in variant_sensitivity(problem, solution.mappings).items():
            flags = ", ".join("ok" if v else "DIFFERS" for v in ok)
            print(f"variant {name}: {flags}", file=sys.stderr)
    return EXIT_OK


def _real(text):
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text}")
    return v


def _show(v: float) -> str:
    return str(int(round(v))) if abs(v - round(v)) <= 1e-9 * max(1.0, abs(v)) else repr(v)


def cmd_calc_tree(args):
    n = max(args.a, args.b, 1.0)
    print(_show(mechcalc.tree_multiply(args.a, args.b, mechcalc.TreeCalc(n))))
    return EXIT_OK


def cmd_calc_monkey(args):
    print(mechcalc.monkey_multiply(args.i, args.j))
    return EXIT_OK


def cmd_svg(args):
    if args.model == "tree":
        if (args.a is None) != (args.b is None):
            raise HohohoError("give both A and B, or neither")
        text = svg.tree_svg(mechcalc.TreeCalc(args.n), args.a, args.b)
    else:
        text = svg.linkage_svg(mechcalc.calibrated_linkage(), args.x)
    if args.out and args.out != "-":
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="hohoho", description="Ho-family esoteric language toolchain")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    langs = ["bf", "ook", "hohoho", "simplehoho"]
    notations = ["standard", "advanced"]

    r = sub.add_parser("run", help="decode and execute a program")
    r.add_argument("file")
    r.add_argument("--lang", choices=langs)
    r.add_argument("--notation", choices=notations)
    r.add_argument("--cell-bits", type=int, default=8, choices=[8, 16, 32])
    r.add_argument("--step-limit", type=int, default=10_000_000)
    r.add_argument("--input", help="file with program input (default: stdin)")
    r.set_defaults(func=cmd_run)

    t = sub.add_parser("transpile", help="convert a program to another language")
    t.add_argument("file")
    t.add_argument("--to", required=True, choices=langs)
    t.add_argument("--lang", choices=langs)
    t.add_argument("--notation", choices=notations)
    t.set_defaults(func=cmd_transpile)

    f = sub.add_parser("fmt", help="re-render a program in another notation")
    f.add_argument("file")
    f.add_argument("--lang", choices=langs)
    f.add_argument("--to-notation", choices=notations)
    f.set_defaults(func=cmd_fmt)

    c = sub.add_parser("check", help="list commands outside a command subset")
    c.add_argument("file")
    c.add_argument("--lang", choices=langs)
    c.add_argument("--subset", default="loopless4", choices=sorted(COMMAND_SETS))
    c.set_defaults(func=cmd_check)

    rc = sub.add_parser("recover", help="reconstruct a code table from a corpus")
    rc.add_argument("--corpus", required=True)
    rc.add_argument("--width", required=True, type=int)
    rc.add_argument("--alphabet", required=True, help="e.g. Ho,ho or ook")
    rc.add_argument("--expect", required=True, help="expected program output")
    rc.add_argument("--anchors", help="mapping file with known codes")
    rc.add_argument("--command-set", default=FULL8.name, choices=sorted(COMMAND_SETS))
    rc.add_argument("--notation", choices=notations)
    rc.add_argument("--out", help="write the canonical mapping here")
    rc.add_argument("--report", help="write the diagnostics report here")
    rc.add_argument("--prefix", action="store_true",
                    help="accept output that merely starts with --expect")
    rc.add_argument("--variants", action="store_true",
                    help="re-run survivors with 16-bit cells and EOF=0")
    rc.set_defaults(func=cmd_recover)

    ct = sub.add_parser("calc-tree", help="multiply with the tree calculator")
    ct.add_argument("a", type=_real)
    ct.add_argument("b", type=_real)
    ct.set_defaults(func=cmd_calc_tree)

    cm = sub.add_parser("calc-monkey", help="multiply with the monkey linkage")
    cm.add_argument("i", type=int)
    cm.add_argument("j", type=int)
    cm.set_defaults(func=cmd_calc_monkey)

    s = sub.add_parser("svg", help="draw one of the calculators")
    models = s.add_subparsers(dest="model", required=True, parser_class=_Parser)
    st = models.add_parser("tree")
    st.add_argument("n", type=_real)
    st.add_argument("a", type=_real, nargs="?")
    st.add_argument("b", type=_real, nargs="?")
    st.add_argument("--out")
    st.set_defaults(func=cmd_svg)
    sm = models.add_parser("monkey")
    sm.add_argument("x", type=_real, nargs="?", default=0.0)
    sm.add_argument("--out")
    sm.set_defaults(func=cmd_svg)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HohohoError, ValueError, OSError) as e:
        print(f"ERROR: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
