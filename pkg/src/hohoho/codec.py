"""Commands, command sets, and code tables (atom tuple <-> command)."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import (
    CommandNotEncodable,
    LengthNotDivisible,
    MappingFormatError,
    UnmappedCode,
)
from .notation import HO, OOK, Alphabet, AtomSeq

__all__ = [
    "Command",
    "CommandSet",
    "FULL8",
    "LOOPLESS4",
    "Mapping",
    "decode",
    "encode",
    "parse_bf",
    "print_bf",
    "read_mapping",
    "write_mapping",
    "format_mapping",
    "parse_mapping",
    "builtin_mapping",
    "OOK_MAPPING",
    "HOHOHO_ANCHORS",
    "COMMAND_SETS",
    "all_codes",
]


class Command(enum.Enum):
    MOVE_RIGHT = ">"
    MOVE_LEFT = "<"
    INC = "+"
    DEC = "-"
    OUTPUT = "."
    INPUT = ","
    LOOP_OPEN = "["
    LOOP_CLOSE = "]"

    @property
    def order(self) -> int:
        return _ORDER[self]

    def __repr__(self):
        return f"Command({self.value!r})"


_ORDER = {c: i for i, c in enumerate(Command)}
_BY_CHAR = {c.value: c for c in Command}


@dataclass(frozen=True)
class CommandSet:
    name: str
    allowed: frozenset

    def __contains__(self, cmd):
        return cmd in self.allowed

    def __str__(self):
        return self.name

    def ordered(self) -> list[Command]:
        return sorted(self.allowed, key=_ORDER.__getitem__)


FULL8 = CommandSet("full8", frozenset(Command))
LOOPLESS4 = CommandSet(
    "loopless4",
    frozenset({Command.MOVE_RIGHT, Command.INC, Command.DEC, Command.OUTPUT}),
)
COMMAND_SETS = {s.name: s for s in (FULL8, LOOPLESS4)}


def all_codes(alphabet: Alphabet, width: int) -> list[tuple[int, ...]]:
    """Every code of ``width`` atoms, in canonical (alphabet index) order."""
    return list(itertools.product(range(len(alphabet)), repeat=width))


@dataclass(frozen=True)
class Mapping:
    """Injective partial function from width-sized atom tuples to commands.

    ``entries`` may be given as any dict-like or iterable of pairs; it is
    stored as a tuple sorted by code so equal mappings compare equal.
    """

    alphabet: Alphabet
    width: int
    entries: tuple = ()
    _fwd: dict = field(default=None, init=False, repr=False, compare=False)
    _rev: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be >= 1")
        items = self.entries.items() if hasattr(self.entries, "items") else self.entries
        fwd = {}
        rev = {}
        n = len(self.alphabet)
        for code, cmd in items:
            code = tuple(code)
            if len(code) != self.width or not all(0 <= a < n for a in code):
                raise ValueError(f"code {code} is not {self.width} atoms over {self.alphabet}")
            if not isinstance(cmd, Command):
                raise TypeError(f"{cmd!r} is not a Command")
            if code in fwd and fwd[code] != cmd:
                raise ValueError(f"code {code} assigned twice")
            if cmd in rev and rev[cmd] != code:
                raise ValueError(f"command {cmd.value!r} assigned to two codes")
            fwd[code] = cmd
            rev[cmd] = code
        object.__setattr__(self, "entries", tuple(sorted(fwd.items())))
        object.__setattr__(self, "_fwd", fwd)
        object.__setattr__(self, "_rev", rev)

    def __len__(self):
        return len(self._fwd)

    def command(self, code):
        return self._fwd.get(tuple(code))

    def code(self, cmd: Command):
        return self._rev.get(cmd)

    def as_dict(self) -> dict:
        return dict(self._fwd)

    def commands(self) -> frozenset:
        return frozenset(self._rev)

    def is_total(self, cset: CommandSet) -> bool:
        return cset.allowed <= self.commands()

    def unmapped_codes(self) -> list:
        return [c for c in all_codes(self.alphabet, self.width) if c not in self._fwd]

    def spell(self, code) -> str:
        return "".join(self.alphabet.symbols[a] for a in code)

    def table_key(self) -> tuple:
        """Sort key: commands listed in canonical code order (unmapped last)."""
        return tuple(
            self._fwd[c].order if c in self._fwd else len(_ORDER)
            for c in all_codes(self.alphabet, self.width)
        )

    def extends(self, other: "Mapping") -> bool:
        return all(self._fwd.get(code) == cmd for code, cmd in other.entries)


def decode(seq: AtomSeq, m: Mapping) -> list[Command]:
    if seq.alphabet != m.alphabet:
        raise ValueError("atom sequence and mapping use different alphabets")
    atoms = seq.atoms
    w = m.width
    if len(atoms) % w:
        raise LengthNotDivisible(len(atoms), w)
    out = []
    lookup = m._fwd
    for i in range(0, len(atoms), w):
        code = atoms[i : i + w]
        cmd = lookup.get(code)
        if cmd is None:
            raise UnmappedCode(m.spell(code), i // w)
        out.append(cmd)
    return out


def encode(cmds, m: Mapping) -> AtomSeq:
    atoms = []
    for cmd in cmds:
        code = m._rev.get(cmd)
        if code is None:
            raise CommandNotEncodable(cmd)
        atoms.extend(code)
    return AtomSeq(m.alphabet, tuple(atoms))


def parse_bf(text: str) -> list[Command]:
    """Commands in ``text``; any other character is a comment."""
    return [_BY_CHAR[ch] for ch in text if ch in _BY_CHAR]


def print_bf(cmds) -> str:
    return "".join(c.value for c in cmds)


# Mapping files ------------------------------------------------------------


def format_mapping(m: Mapping) -> str:
    lines = [f"alphabet={m.alphabet}", f"width={m.width}"]
    for code, cmd in m.entries:
        lines.append(f"{m.spell(code)}={cmd.value}")
    return "\n".join(lines) + "\n"


def _split_code(text, alphabet, width, lineno):
    atoms = []
    pos = 0
    while pos < len(text):
        for idx, sym in enumerate(alphabet.symbols):
            if text.startswith(sym, pos):
                atoms.append(idx)
                pos += len(sym)
                break
        else:
            raise MappingFormatError(f"line {lineno}: cannot read code {text!r}")
    if len(atoms) != width:
        raise MappingFormatError(f"line {lineno}: code {text!r} is not {width} atoms")
    return tuple(atoms)


def parse_mapping(text: str) -> Mapping:
    alphabet = None
    width = None
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.rpartition("=")
        if not sep or not key:
            raise MappingFormatError(f"line {lineno}: expected KEY=VALUE, got {line!r}")
        key = key.strip()
        value = value.strip()
        if key == "alphabet":
            try:
                alphabet = Alphabet.parse(value)
            except ValueError as e:
                raise MappingFormatError(f"line {lineno}: {e}") from None
        elif key == "width":
            try:
                width = int(value)
            except ValueError:
                raise MappingFormatError(f"line {lineno}: bad width {value!r}") from None
        else:
            if value not in _BY_CHAR:
                raise MappingFormatError(f"line {lineno}: unknown command {value!r}")
            raw.append((lineno, key, _BY_CHAR[value]))
    if alphabet is None or width is None:
        raise MappingFormatError("mapping file needs alphabet= and width= headers")
    entries = [(_split_code(k, alphabet, width, ln), c) for ln, k, c in raw]
    try:
        return Mapping(alphabet, width, entries)
    except ValueError as e:
        raise MappingFormatError(str(e)) from None


def write_mapping(m: Mapping, path) -> None:
    Path(path).write_text(format_mapping(m), encoding="utf-8")


def read_mapping(path) -> Mapping:
    return parse_mapping(Path(path).read_text(encoding="utf-8"))


def builtin_mapping(name: str) -> Mapping:
    """Load one of the shipped tables: ``hohoho``, ``simplehoho`` or ``ook``."""
    text = resources.files("hohoho.data").joinpath(f"{name}.map").read_text("utf-8")
    return parse_mapping(text)


_C = Command
# Reference table of the Ook! language.
OOK_MAPPING = Mapping(
    OOK,
    2,
    {
        (0, 2): _C.MOVE_RIGHT,
        (2, 0): _C.MOVE_LEFT,
        (0, 0): _C.INC,
        (1, 1): _C.DEC,
        (1, 0): _C.OUTPUT,
        (0, 1): _C.INPUT,
        (1, 2): _C.LOOP_OPEN,
        (2, 1): _C.LOOP_CLOSE,
    },
)

HOHOHO_ANCHORS = Mapping(HO, 3, {(0, 0, 1): _C.MOVE_RIGHT, (1, 0, 1): _C.OUTPUT})
