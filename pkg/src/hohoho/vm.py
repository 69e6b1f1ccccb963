"""Tape-machine interpreter for the eight-command language."""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field

from .codec import Command, CommandSet
from .errors import UnbalancedBrackets

__all__ = [
    "Program",
    "MachineConfig",
    "EofPolicy",
    "Halt",
    "ExecResult",
    "compile_program",
    "run",
    "check_subset",
]

_C = Command


@dataclass(frozen=True)
class Program:
    cmds: tuple
    jumps: dict = field(hash=False)

    def __len__(self):
        return len(self.cmds)


def compile_program(cmds, partial: bool = False) -> Program:
    """Pair up brackets.

    Raises :class:`UnbalancedBrackets` with the index of the first
    offender: a ``]`` with nothing open, or else the outermost ``[`` left
    open. With ``partial=True`` unmatched brackets are left out of the jump
    table instead; running such a program halts with
    ``Halt.UNMATCHED_BRACKET`` if it ever needs to jump from one.
    """
    cmds = tuple(cmds)
    jumps = {}
    stack = []
    for i, c in enumerate(cmds):
        if c is _C.LOOP_OPEN:
            stack.append(i)
        elif c is _C.LOOP_CLOSE:
            if stack:
                j = stack.pop()
                jumps[i] = j
                jumps[j] = i
            elif not partial:
                raise UnbalancedBrackets(i)
    if stack and not partial:
        raise UnbalancedBrackets(stack[0])
    return Program(cmds, jumps)


class EofPolicy(enum.Enum):
    LEAVE_UNCHANGED = "unchanged"
    ZERO = "zero"


class Halt(enum.Enum):
    FINISHED = "finished"
    STEP_LIMIT = "step-limit"
    TAPE_UNDERFLOW = "tape-underflow"
    # Only reachable for programs compiled with partial=True.
    UNMATCHED_BRACKET = "unmatched-bracket"


@dataclass(frozen=True)
class MachineConfig:
    cell_bits: int = 8
    initial_tape_cells: int = 30000
    eof_policy: EofPolicy = EofPolicy.LEAVE_UNCHANGED
    step_limit: int = 10_000_000

    def __post_init__(self):
        if self.cell_bits not in (8, 16, 32):
            raise ValueError("cell_bits must be 8, 16 or 32")
        if self.step_limit < 1:
            raise ValueError("step_limit must be >= 1")
        if self.initial_tape_cells < 1:
            raise ValueError("initial_tape_cells must be >= 1")


@dataclass(frozen=True)
class ExecResult:
    output: bytes
    steps: int
    halt: Halt
    ip: int
    pointer: int
    # Final tape contents; the list is private to this result.
    tape: list = field(repr=False)
    # Index of the command that emitted each output byte.
    output_ips: tuple = field(default=(), repr=False)

    @property
    def finished(self) -> bool:
        return self.halt is Halt.FINISHED


# Op codes of the folded program.
_ADD, _RIGHT, _LEFT, _OUT, _IN, _OPEN, _CLOSE = range(7)


def _fold(p: Program) -> list[tuple]:
    """Fold runs of one command into ``(op, count, first_ip, jump)`` tuples.

    Only runs of a single command are folded, so a halt inside a run can
    be placed on its exact command.  ``jump`` is the op index to continue
    at when a bracket is taken (``None`` for an unmatched bracket).
    """
    cmds = p.cmds
    ops = []
    op_at = {}
    i = 0
    n = len(cmds)
    while i < n:
        c = cmds[i]
        if c is _C.LOOP_OPEN or c is _C.LOOP_CLOSE or c is _C.OUTPUT or c is _C.INPUT:
            op_at[i] = len(ops)
            ops.append([_SIMPLE[c], 1, i, None])
            i += 1
            continue
        j = i
        while j < n and cmds[j] is c:
            j += 1
        count = j - i
        if c is _C.INC:
            ops.append([_ADD, count, i, 1])
        elif c is _C.DEC:
            ops.append([_ADD, count, i, -1])
        else:
            ops.append([_RIGHT if c is _C.MOVE_RIGHT else _LEFT, count, i, None])
        i = j
    for ip, k in op_at.items():
        target = p.jumps.get(ip)
        if target is not None:
            ops[k][3] = op_at[target] + 1
    return [tuple(o) for o in ops]


_SIMPLE = {_C.LOOP_OPEN: _OPEN, _C.LOOP_CLOSE: _CLOSE, _C.OUTPUT: _OUT, _C.INPUT: _IN}


def _grow(tape, ptr, size):
    while size <= ptr:
        tape.extend([0] * size)
        size *= 2
    return size


# Below this step budget generating code costs more than it saves.
_NATIVE_MIN_STEPS = 200_000
# Python refuses more than 20 statically nested blocks; each loop costs two.
_MAX_NATIVE_DEPTH = 8


def _codegen(ops):
    """Translate folded ops into a Python function, or ``None`` if too deep.

    The function runs whole basic blocks.  Before each block it checks that
    the block fits in the remaining step budget, and a ``<`` run checks for
    underflow; when either check fails it returns the op index to resume
    from, and the op interpreter finishes the job exactly.
    """
    nops = len(ops)
    lines = [
        "def _native(t, ptr, steps, limit, mask, size, out, oips, inp, ipos, eof_zero):",
    ]

    def state(k, steps_expr="steps"):
        return f"return ({k}, ptr, {steps_expr}, size, ipos)"

    def emit(k, end, depth):
        pad = "    " * (depth * 2 + 1)
        while True:
            j = k
            cost = 0
            while j < nops and j != end and ops[j][0] != _OPEN:
                cost += ops[j][1]
                j += 1
            closing = j < nops and (j == end or ops[j][0] == _OPEN)
            total = cost + (1 if closing else 0)
            if total:
                lines.append(f"{pad}if steps + {total} > limit: {state(k)}")
            pre = 0
            for i in range(k, j):
                op, count, first, arg = ops[i]
                if op == _ADD:
                    lines.append(f"{pad}t[ptr] = (t[ptr] + {arg * count}) & mask")
                elif op == _RIGHT:
                    lines.append(f"{pad}ptr += {count}")
                    lines.append(f"{pad}if ptr >= size: size = _grow(t, ptr, size)")
                elif op == _LEFT:
                    lines.append(f"{pad}if ptr < {count}: {state(i, f'steps + {pre}')}")
                    lines.append(f"{pad}ptr -= {count}")
                elif op == _OUT:
                    lines.append(f"{pad}out.append(t[ptr] & 255); oips.append({first})")
                elif op == _IN:
                    lines.append(f"{pad}if ipos < len(inp): t[ptr] = inp[ipos] & mask; ipos += 1")
                    lines.append(f"{pad}elif eof_zero: t[ptr] = 0")
                pre += count
            if total:
                lines.append(f"{pad}steps += {total}")
            if not closing or j == end:
                return True
            # ops[j] opens a loop closing at op ops[j][3] - 1.
            close = ops[j][3] - 1
            if depth + 1 > _MAX_NATIVE_DEPTH:
                return False
            lines.append(f"{pad}if t[ptr]:")
            lines.append(f"{pad}    while True:")
            if not emit(j + 1, close, depth + 1):
                return False
            lines.append(f"{pad}        if not t[ptr]: break")
            k = close + 1

    if any(o[0] in (_OPEN, _CLOSE) and o[3] is None for o in ops):
        return None
    if not emit(0, None, 0):
        return None
    lines.append(f"    {state(nops)}")
    scope = {"_grow": _grow}
    exec(compile("\n".join(lines), "<bf>", "exec"), scope)
    return scope["_native"]


@functools.lru_cache(maxsize=256)
def _prepare(cmds):
    # Tables of strictly compiled and partial programs agree when balanced.
    prog = compile_program(cmds, partial=True)
    ops = _fold(prog)
    return prog.jumps, ops, _codegen(ops)


def run(p: Program, input: bytes = b"", cfg: MachineConfig = MachineConfig()) -> ExecResult:
    """Execute ``p`` to completion, to the step limit, or to a tape underflow.

    ``steps`` counts executed commands; a ``<`` that would leave the tape
    is not executed and not counted. ``ip`` is the index of the command
    that was about to run when execution stopped (``len(p)`` on success).
    """
    if cfg.step_limit >= _NATIVE_MIN_STEPS:
        jumps, ops, native = _prepare(p.cmds)
        if jumps != p.jumps:
            ops, native = _fold(p), None
    else:
        ops, native = _fold(p), None
    nops = len(ops)
    mask = (1 << cfg.cell_bits) - 1
    limit = cfg.step_limit
    eof_zero = cfg.eof_policy is EofPolicy.ZERO
    tape = [0] * cfg.initial_tape_cells
    size = len(tape)
    ptr = 0
    k = 0
    steps = 0
    out = bytearray()
    out_ips = []
    inp = bytes(input)
    ipos = 0
    halt = Halt.FINISHED
    ip = len(p.cmds)

    if native is not None:
        k, ptr, steps, size, ipos = native(
            tape, ptr, steps, limit, mask, size, out, out_ips, inp, ipos, eof_zero
        )
    while k < nops:
        op, count, first, arg = ops[k]
        if steps + count > limit:
            # Run only the commands that fit, then stop on the next one.
            done = limit - steps
            if op == _ADD:
                tape[ptr] = (tape[ptr] + arg * done) & mask
            elif op == _RIGHT:
                ptr += done
            elif op == _LEFT:
                if ptr < done:
                    done = ptr
                    halt = Halt.TAPE_UNDERFLOW
                ptr -= done
            steps += done
            if halt is Halt.FINISHED:
                halt = Halt.STEP_LIMIT
            ip = first + done
            break
        if op == _ADD:
            tape[ptr] = (tape[ptr] + arg * count) & mask
        elif op == _RIGHT:
            ptr += count
            if ptr >= size:
                while size <= ptr:
                    tape.extend([0] * size)
                    size *= 2
        elif op == _LEFT:
            if ptr < count:
                steps += ptr
                ip = first + ptr
                ptr = 0
                halt = Halt.TAPE_UNDERFLOW
                break
            ptr -= count
        elif op == _OPEN:
            if not tape[ptr]:
                if arg is None:
                    halt = Halt.UNMATCHED_BRACKET
                    ip = first
                    break
                k = arg
                steps += 1
                continue
        elif op == _CLOSE:
            if tape[ptr]:
                if arg is None:
                    halt = Halt.UNMATCHED_BRACKET
                    ip = first
                    break
                k = arg
                steps += 1
                continue
        elif op == _OUT:
            out.append(tape[ptr] & 0xFF)
            out_ips.append(first)
        else:
            if ipos < len(inp):
                tape[ptr] = inp[ipos] & mask
                ipos += 1
            elif eof_zero:
                tape[ptr] = 0
        steps += count
        k += 1

    _grow(tape, ptr, size)
    return ExecResult(bytes(out), steps, halt, ip, ptr, tape, tuple(out_ips))


def check_subset(cmds, s: CommandSet) -> list[tuple[int, Command]]:
    """``(index, command)`` for every command outside ``s``, in order."""
    return [(i, c) for i, c in enumerate(cmds) if c not in s.allowed]
