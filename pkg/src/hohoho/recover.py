"""Reconstruct an undocumented code table from a program with known output.

The search is exhaustive: every way of giving the unanchored commands to
the unused codes is tried, the corpus is decoded with it, and the
resulting program is executed.  A candidate survives only if it prints
exactly the expected bytes and halts normally.

When nothing survives the solver still explains why.  Each candidate gets
a longest-matching-prefix report from a lenient run (unmatched brackets
are tolerated until execution needs them), and a single-code repair search
looks for one position in the corpus whose replacement would make some
candidate succeed.  For a corpus with one transcription slip, that
position is the defect.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path

from .codec import (
    FULL8,
    LOOPLESS4,
    Command,
    CommandSet,
    Mapping,
    all_codes,
    decode,
    format_mapping,
)
from .errors import CorpusParseError, HohohoError, NoSolution, UnbalancedBrackets
from .notation import HO, Alphabet, parse_advanced, parse_standard
from .vm import EofPolicy, Halt, MachineConfig, compile_program, run

__all__ = [
    "RecoveryProblem",
    "RecoverySolution",
    "RecoveryDiagnostics",
    "CandidateReport",
    "Repair",
    "recover",
    "replay",
    "export_mapping",
    "format_report",
    "variant_sensitivity",
]

DECODE_ERROR = "decode-error"
BRACKET_ERROR = "bracket-error"
WRONG_OUTPUT = "wrong-output"
STEP_LIMIT = "step-limit"
TAPE_UNDERFLOW = "tape-underflow"
FAILURE_CLASSES = (DECODE_ERROR, BRACKET_ERROR, WRONG_OUTPUT, STEP_LIMIT, TAPE_UNDERFLOW)

_OPEN = Command.LOOP_OPEN
_CLOSE = Command.LOOP_CLOSE


@dataclass(frozen=True)
class RecoveryProblem:
    alphabet: Alphabet
    width: int
    command_set: CommandSet
    corpus: str
    expected_output: bytes
    anchors: Mapping | None = None
    notation: str | None = None
    config: MachineConfig = MachineConfig()
    prefix_match: bool = False
    # Bound on lenient diagnostic runs and repair trials, which may loop.
    diagnostic_step_limit: int = 10_000

    def __post_init__(self):
        anchors = self.anchors
        if anchors is None:
            anchors = Mapping(self.alphabet, self.width, ())
            object.__setattr__(self, "anchors", anchors)
        if anchors.alphabet != self.alphabet or anchors.width != self.width:
            raise ValueError("anchors use a different alphabet or width")
        extra = anchors.commands() - self.command_set.allowed
        if extra:
            names = ", ".join(sorted(c.value for c in extra))
            raise ValueError(f"anchors assign commands outside {self.command_set}: {names}")
        object.__setattr__(self, "expected_output", bytes(self.expected_output))

    def atoms(self):
        kind = self.notation
        if kind is None:
            kind = "advanced" if self.alphabet == HO and "!" in self.corpus else "standard"
        try:
            if kind == "advanced":
                seq = parse_advanced(self.corpus, self.alphabet)
            else:
                seq = parse_standard(self.corpus, self.alphabet)
        except HohohoError as e:
            raise CorpusParseError(f"corpus does not parse: {e}") from e
        if len(seq) % self.width:
            raise CorpusParseError(
                f"corpus has {len(seq)} atoms, not divisible by width {self.width}"
            )
        return seq

    def codes(self) -> list[tuple]:
        atoms = self.atoms().atoms
        w = self.width
        return [atoms[i : i + w] for i in range(0, len(atoms), w)]

    def accepts(self, result) -> bool:
        if result.halt is not Halt.FINISHED:
            return False
        if self.prefix_match:
            return result.output.startswith(self.expected_output)
        return result.output == self.expected_output

    def unanchored(self) -> list[Command]:
        return [c for c in self.command_set.ordered() if self.anchors.code(c) is None]

    def free_codes(self) -> list[tuple]:
        return [c for c in all_codes(self.alphabet, self.width) if self.anchors.command(c) is None]


@dataclass(frozen=True)
class CandidateReport:
    mapping: Mapping
    failure: str | None
    # Bytes of the expected output reproduced before the first divergence.
    matched: int
    # Command index where the run first went wrong (None when it succeeded).
    divergence: int | None
    detail: str = ""


@dataclass(frozen=True)
class Repair:
    """Replacing the code at ``index`` lets ``mapping`` reproduce the output."""

    index: int
    atom_offset: int
    original: str
    replacement: str
    mapping: Mapping


@dataclass
class RecoveryDiagnostics:
    examined: int = 0
    counts: Counter = field(default_factory=Counter)
    reports: list = field(default_factory=list)
    repairs: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def first_divergence(self) -> int | None:
        """Best guess at the first defective command of the corpus."""
        if self.repairs:
            return min(r.index for r in self.repairs)
        ranked = self.ranked()
        if ranked and ranked[0].divergence is not None:
            return ranked[0].divergence
        return None

    def ranked(self) -> list[CandidateReport]:
        failed = [r for r in self.reports if r.failure is not None]
        return sorted(
            failed,
            key=lambda r: (-r.matched, -(r.divergence or 0), r.mapping.table_key()),
        )


@dataclass
class RecoverySolution:
    mappings: list
    diagnostics: RecoveryDiagnostics

    @property
    def canonical(self) -> Mapping:
        return self.mappings[0]


def candidate_mappings(problem: RecoveryProblem):
    """Every total extension of the anchors, in a fixed order."""
    free = problem.free_codes()
    remaining = problem.unanchored()
    if len(remaining) > 8:
        raise ValueError("at most 8 unanchored commands are supported")
    if len(remaining) > len(free):
        raise ValueError("not enough unused codes for the unanchored commands")
    base = problem.anchors.entries
    for codes in itertools.permutations(free, len(remaining)):
        yield Mapping(problem.alphabet, problem.width, base + tuple(zip(codes, remaining)))


def _decode_codes(codes, m):
    lookup = m.as_dict()
    cmds = []
    for i, code in enumerate(codes):
        cmd = lookup.get(code)
        if cmd is None:
            return cmds, i
        cmds.append(cmd)
    return cmds, None


def _divergence(result, expected, prefix_match, n):
    """(matched bytes, command index of the first divergence)."""
    out = result.output
    k = 0
    limit = min(len(out), len(expected))
    while k < limit and out[k] == expected[k]:
        k += 1
    if k < len(out) and (k < len(expected) or not prefix_match):
        return k, result.output_ips[k]
    if result.halt is not Halt.FINISHED:
        return k, result.ip
    if k < len(expected):
        return k, n
    return k, None


def _lenient_report(problem, m, cmds, failure, detail, n):
    cfg = replace(
        problem.config,
        step_limit=min(problem.config.step_limit, problem.diagnostic_step_limit),
    )
    result = run(compile_program(cmds, partial=True), b"", cfg)
    matched, where = _divergence(result, problem.expected_output, problem.prefix_match, n)
    if where is None or where > len(cmds):
        where = len(cmds)
    return CandidateReport(m, failure, matched, where, detail)


def evaluate(problem, m, codes):
    """Run one candidate; returns (report, survived)."""
    n = len(codes)
    cmds, bad = _decode_codes(codes, m)
    if bad is not None:
        detail = f"code {m.spell(codes[bad])} at command {bad} unmapped"
        return _lenient_report(problem, m, cmds, DECODE_ERROR, detail, n), False
    try:
        prog = compile_program(cmds)
    except UnbalancedBrackets as e:
        return _lenient_report(problem, m, cmds, BRACKET_ERROR, str(e), n), False
    result = run(prog, b"", problem.config)
    if problem.accepts(result):
        return CandidateReport(m, None, len(problem.expected_output), None), True
    if result.halt is Halt.STEP_LIMIT:
        failure = STEP_LIMIT
    elif result.halt is Halt.TAPE_UNDERFLOW:
        failure = TAPE_UNDERFLOW
    else:
        failure = WRONG_OUTPUT
    matched, where = _divergence(result, problem.expected_output, problem.prefix_match, n)
    return CandidateReport(m, failure, matched, where, f"halt {result.halt.value}"), False


def _reach_bound(prog, f):
    """Largest command index that can have run before command ``f`` ran."""
    bound = f
    jumps = prog.jumps
    for i, c in enumerate(prog.cmds[:f]):
        if c is _OPEN and jumps.get(i, -1) > bound:
            bound = jumps[i]
    return bound


_DELTA = {_OPEN: 1, _CLOSE: -1}


def _positions_to_try(problem, cmds, cfg):
    """Command indices where a substitution could change the failing run.

    A run is determined up to its first divergence by the commands it could
    have reached by then, and bracket pairs inside that prefix do not depend
    on anything after it.  Lenient runs that stopped on an unmatched bracket
    or on the step limit give no such bound.
    """
    n = len(cmds)
    prog = compile_program(cmds, partial=True)
    result = run(prog, b"", cfg)
    if result.halt in (Halt.UNMATCHED_BRACKET, Halt.STEP_LIMIT):
        return range(n)
    _, f = _divergence(result, problem.expected_output, problem.prefix_match, n)
    if f is None or f >= n:
        return range(n)
    return range(_reach_bound(prog, f) + 1)


def find_repairs(problem, codes, mappings) -> list[Repair]:
    """Single-code substitutions in the corpus that make a candidate succeed."""
    cfg = replace(
        problem.config,
        step_limit=min(problem.config.step_limit, problem.diagnostic_step_limit),
    )
    w = problem.width
    repairs = []
    for m in mappings:
        table = m.as_dict()
        cmds = [table.get(c) for c in codes]
        unmapped = [i for i, c in enumerate(cmds) if c is None]
        if len(unmapped) > 1:
            continue
        balance = sum(_DELTA.get(c, 0) for c in cmds)
        if unmapped:
            positions = unmapped
        else:
            positions = _positions_to_try(problem, cmds, cfg)
        for i in positions:
            old = cmds[i]
            for code, new in table.items():
                if code == codes[i]:
                    continue
                if balance - _DELTA.get(old, 0) + _DELTA.get(new, 0):
                    continue
                trial = cmds[:]
                trial[i] = new
                try:
                    prog = compile_program(trial)
                except UnbalancedBrackets:
                    continue
                if problem.accepts(run(prog, b"", cfg)):
                    repairs.append(
                        Repair(i, i * w, m.spell(codes[i]), m.spell(code), m)
                    )
    repairs.sort(key=lambda r: (r.index, r.mapping.table_key(), r.replacement))
    return repairs


def recover(problem: RecoveryProblem, repair_search: bool = True) -> RecoverySolution:
    """Enumerate candidate tables; raise :class:`NoSolution` if none survives."""
    start = time.perf_counter()
    codes = problem.codes()
    diag = RecoveryDiagnostics()
    survivors = []
    candidates = list(candidate_mappings(problem))
    for m in candidates:
        report, ok = evaluate(problem, m, codes)
        diag.examined += 1
        diag.reports.append(report)
        if ok:
            survivors.append(m)
        else:
            diag.counts[report.failure] += 1
    survivors.sort(key=Mapping.table_key)
    for m in survivors:
        # Independent re-check: fresh decode through the public codec path.
        if not problem.accepts(replay(problem, m)):
            raise AssertionError(f"survivor failed replay: {format_mapping(m)}")
    if not survivors:
        if repair_search:
            diag.repairs = find_repairs(problem, codes, candidates)
        diag.elapsed = time.perf_counter() - start
        raise NoSolution(diag)
    diag.elapsed = time.perf_counter() - start
    return RecoverySolution(survivors, diag)


def replay(problem: RecoveryProblem, m: Mapping, cfg: MachineConfig | None = None):
    prog = compile_program(decode(problem.atoms(), m))
    return run(prog, b"", cfg or problem.config)


def variant_sensitivity(problem, mappings) -> dict:
    """Re-run each mapping under alternative machine semantics.

    Returns ``{variant name: [accepted?, ...]}`` in the order of
    ``mappings``.
    """
    variants = {
        "cell16": replace(problem.config, cell_bits=16),
        "eof-zero": replace(problem.config, eof_policy=EofPolicy.ZERO),
    }
    return {
        name: [problem.accepts(replay(problem, m, cfg)) for m in mappings]
        for name, cfg in variants.items()
    }


def export_mapping(m: Mapping, path, command_set: CommandSet | None = None) -> None:
    """Write ``m`` as a mapping file; it must cover its whole command set."""
    if command_set is None:
        command_set = FULL8 if len(m) == len(FULL8.allowed) else LOOPLESS4
    if m.commands() != command_set.allowed:
        raise ValueError(f"mapping is not total for {command_set}")
    Path(path).write_text(format_mapping(m), encoding="utf-8")


def format_report(diag: RecoveryDiagnostics, top: int = 10) -> str:
    lines = [f"candidates examined: {diag.examined}"]
    for cls in FAILURE_CLASSES:
        lines.append(f"  {cls}: {diag.counts.get(cls, 0)}")
    lines.append(f"elapsed: {diag.elapsed:.3f}s")
    first = diag.first_divergence
    if first is not None:
        lines.append(f"first divergent command: {first}")
    if diag.repairs:
        lines.append("single-code repairs that reproduce the expected output:")
        for r in diag.repairs:
            table = " ".join(
                f"{r.mapping.spell(c)}={cmd.value}" for c, cmd in r.mapping.entries
            )
            lines.append(
                f"  command {r.index} (atoms {r.atom_offset}-"
                f"{r.atom_offset + r.mapping.width - 1}): "
                f"{r.original} -> {r.replacement}   [{table}]"
            )
    ranked = diag.ranked()
    if ranked:
        lines.append(f"longest matching prefix (best {min(top, len(ranked))} of {len(ranked)}):")
        for r in ranked[:top]:
            table = " ".join(f"{r.mapping.spell(c)}={cmd.value}" for c, cmd in r.mapping.entries)
            lines.append(
                f"  matched {r.matched} byte(s), diverges at command {r.divergence}, "
                f"{r.failure}: {r.detail}   [{table}]"
            )
    return "\n".join(lines) + "\n"
