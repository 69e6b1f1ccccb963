"""Reading and writing atom sequences.

Two notations exist for the binary ``Ho``/``ho`` alphabet:

* standard: syllables written back to back, e.g. ``HoHoho hoHoho``;
* advanced: one ``Ho`` followed by any number of ``ho`` and a ``!`` per
  token, e.g. ``Ho! Hohoho! Hoho!``.

Ook! source only has the standard (syllable) notation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import LeadingLowercase, MalformedToken, UnknownSyllable

__all__ = [
    "Alphabet",
    "AtomSeq",
    "HO",
    "OOK",
    "parse_standard",
    "parse_advanced",
    "print_standard",
    "print_advanced",
]


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise ValueError("alphabet needs at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in {self.symbols}")
        for s in self.symbols:
            if not s or any(ch.isspace() for ch in s):
                raise ValueError(f"invalid symbol {s!r}")
        for s in self.symbols:
            for t in self.symbols:
                if s != t and t.startswith(s):
                    raise ValueError(f"symbol {s!r} is a prefix of {t!r}")

    def __len__(self):
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        """Build an alphabet from a comma-separated list like ``Ho,ho``."""
        return cls(tuple(s.strip() for s in text.split(",")))

    def __str__(self):
        return ",".join(self.symbols)


HO = Alphabet(("Ho", "ho"))
OOK = Alphabet(("Ook.", "Ook!", "Ook?"))

# Atom indices in the binary alphabet.
UPPER = 0
LOWER = 1


@dataclass(frozen=True)
class AtomSeq:
    alphabet: Alphabet
    atoms: tuple[int, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        n = len(self.alphabet)
        for a in atoms:
            if not 0 <= a < n:
                raise ValueError(f"atom index {a} outside alphabet of size {n}")
        object.__setattr__(self, "atoms", atoms)

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def spellings(self) -> list[str]:
        return [self.alphabet.symbols[a] for a in self.atoms]

    @classmethod
    def from_symbols(cls, alphabet: Alphabet, symbols) -> "AtomSeq":
        return cls(alphabet, tuple(alphabet.index(s) for s in symbols))


def parse_standard(text: str, alphabet: Alphabet = HO) -> AtomSeq:
    """Scan ``text`` into atoms; whitespace may separate atoms but not split one."""
    symbols = alphabet.symbols
    longest = max(len(s) for s in symbols)
    atoms = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        for idx, sym in enumerate(symbols):
            if text.startswith(sym, pos):
                atoms.append(idx)
                pos += len(sym)
                break
        else:
            end = pos
            while end < n and end - pos < longest and not text[end].isspace():
                end += 1
            raise UnknownSyllable(pos, text[pos:end])
    return AtomSeq(alphabet, tuple(atoms))


_TOKEN = re.compile(r"Ho(?:ho)*!")


def _require_binary(alphabet: Alphabet):
    if alphabet != HO:
        raise ValueError("advanced notation is only defined for the Ho/ho alphabet")


def parse_advanced(text: str, alphabet: Alphabet = HO) -> AtomSeq:
    _require_binary(alphabet)
    atoms = []
    for m in re.finditer(r"\S+", text):
        token = m.group()
        if not _TOKEN.fullmatch(token):
            raise MalformedToken(token, m.start())
        atoms.append(UPPER)
        atoms.extend([LOWER] * ((len(token) - 3) // 2))
    return AtomSeq(alphabet, tuple(atoms))


def print_advanced(seq: AtomSeq) -> str:
    _require_binary(seq.alphabet)
    if not seq.atoms:
        return ""
    if seq.atoms[0] != UPPER:
        raise LeadingLowercase()
    tokens = []
    for a in seq.atoms:
        if a == UPPER:
            tokens.append(["Ho"])
        else:
            tokens[-1].append("ho")
    return " ".join("".join(t) + "!" for t in tokens)


def print_standard(seq: AtomSeq, group: int = 1) -> str:
    if group < 1:
        raise ValueError("group must be >= 1")
    spell = seq.spellings()
    return " ".join(
        "".join(spell[i : i + group]) for i in range(0, len(spell), group)
    )
