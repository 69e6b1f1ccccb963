"""Conversion between BF, Ook!, Hohoho! and Simple Hoho source text."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import PurePath

from . import notation
from .codec import (
    FULL8,
    LOOPLESS4,
    OOK_MAPPING,
    CommandSet,
    Mapping,
    builtin_mapping,
    decode,
    encode,
    parse_bf,
    print_bf,
)
from .errors import SubsetViolation
from .notation import HO, OOK, Alphabet, AtomSeq
from .vm import check_subset

__all__ = [
    "Language",
    "LANGUAGES",
    "get_language",
    "language_for_path",
    "parse_atoms",
    "parse_program",
    "render_program",
    "transpile",
    "fmt",
    "loopfree_check",
    "LoopfreeReport",
]

STANDARD = "standard"
ADVANCED = "advanced"


@dataclass(frozen=True)
class Language:
    name: str
    alphabet: Alphabet | None
    width: int
    command_set: CommandSet
    default_notation: str
    # Atoms per space-separated group in standard rendering.
    group: int
    extension: str

    @property
    def mapping(self) -> Mapping | None:
        return _mapping_for(self.name)

    @property
    def is_bf(self) -> bool:
        return self.alphabet is None

    @property
    def has_advanced(self) -> bool:
        return self.alphabet == HO


@functools.lru_cache(maxsize=None)
def _mapping_for(name):
    if name == "bf":
        return None
    if name == "ook":
        return OOK_MAPPING
    return builtin_mapping(name)


LANGUAGES = {
    lang.name: lang
    for lang in (
        Language("bf", None, 1, FULL8, STANDARD, 1, ".bf"),
        Language("ook", OOK, 2, FULL8, STANDARD, 1, ".ook"),
        Language("hohoho", HO, 3, FULL8, ADVANCED, 3, ".hohoho"),
        Language("simplehoho", HO, 2, LOOPLESS4, ADVANCED, 2, ".shoho"),
    )
}
_ALIASES = {"brainfuck": "bf", "simple-hoho": "simplehoho", "shoho": "simplehoho"}


def get_language(name) -> Language:
    if isinstance(name, Language):
        return name
    key = name.lower()
    key = _ALIASES.get(key, key)
    try:
        return LANGUAGES[key]
    except KeyError:
        raise ValueError(
            f"unknown language {name!r}; choose from {', '.join(LANGUAGES)}"
        ) from None


def language_for_path(path) -> Language | None:
    suffix = PurePath(str(path)).suffix.lower()
    for lang in LANGUAGES.values():
        if lang.extension == suffix:
            return lang
    return None


def _detect_notation(text, lang):
    return ADVANCED if lang.has_advanced and "!" in text else STANDARD


def parse_atoms(text: str, lang, notation_kind: str | None = None) -> AtomSeq:
    lang = get_language(lang)
    if lang.is_bf:
        raise ValueError("BF source has no atom layer")
    kind = notation_kind or _detect_notation(text, lang)
    if kind == ADVANCED:
        return notation.parse_advanced(text, lang.alphabet)
    if kind == STANDARD:
        return notation.parse_standard(text, lang.alphabet)
    raise ValueError(f"unknown notation {kind!r}")


def parse_program(text: str, lang, notation_kind: str | None = None, mapping=None):
    """Command list for ``text``; ``mapping`` overrides the language's table."""
    lang = get_language(lang)
    if lang.is_bf:
        return parse_bf(text)
    seq = parse_atoms(text, lang, notation_kind)
    return decode(seq, mapping or lang.mapping)


def render_atoms(seq: AtomSeq, lang, notation_kind: str | None = None) -> str:
    """Render ``seq``; with no notation given, use the language's default.

    A sequence starting with a lower-case atom has no advanced form, so the
    default falls back to standard notation for it.  Asking for advanced
    explicitly raises :class:`LeadingLowercase` instead.
    """
    lang = get_language(lang)
    kind = notation_kind or lang.default_notation
    if notation_kind is None and kind == ADVANCED and seq.atoms and seq.atoms[0] != notation.UPPER:
        kind = STANDARD
    if kind == ADVANCED:
        return notation.print_advanced(seq)
    if kind == STANDARD:
        return notation.print_standard(seq, lang.group)
    raise ValueError(f"unknown notation {kind!r}")


def render_program(cmds, lang, notation_kind: str | None = None) -> str:
    lang = get_language(lang)
    cmds = list(cmds)
    violations = check_subset(cmds, lang.command_set)
    if violations:
        raise SubsetViolation(violations, lang.command_set.name)
    if lang.is_bf:
        return print_bf(cmds)
    return render_atoms(encode(cmds, lang.mapping), lang, notation_kind)


def transpile(src_lang, dst_lang, text: str, notation_kind: str | None = None,
              src_notation: str | None = None) -> str:
    """Re-render the program in ``text`` from ``src_lang`` as ``dst_lang``.

    ``notation_kind`` picks the output notation (advanced by default for
    the Ho languages); ``src_notation`` is auto-detected when omitted.
    """
    cmds = parse_program(text, src_lang, src_notation)
    return render_program(cmds, dst_lang, notation_kind)


def fmt(text: str, lang, to_notation: str | None = None) -> str:
    """Re-render the atoms of ``text`` without decoding them."""
    lang = get_language(lang)
    if lang.is_bf:
        return print_bf(parse_bf(text))
    seq = parse_atoms(text, lang)
    return render_atoms(seq, lang, to_notation)


@dataclass(frozen=True)
class LoopfreeReport:
    language: str
    width: int
    violations: tuple
    subset: str = LOOPLESS4.name

    @property
    def clean(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = []
        for i, cmd in self.violations:
            where = f"command {i}"
            if self.width > 1:
                where += f" (atoms {i * self.width}-{(i + 1) * self.width - 1})"
            out.append(f"{where}: {cmd.name} {cmd.value!r} not in {self.subset}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def loopfree_check(text: str, lang, subset: CommandSet = LOOPLESS4) -> LoopfreeReport:
    lang = get_language(lang)
    cmds = parse_program(text, lang)
    return LoopfreeReport(lang.name, lang.width, tuple(check_subset(cmds, subset)), subset.name)
