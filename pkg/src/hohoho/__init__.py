"""Toolchain for the Ho-family esoteric languages and two mechanical multipliers."""

from .codec import (
    FULL8,
    LOOPLESS4,
    OOK_MAPPING,
    Command,
    CommandSet,
    Mapping,
    builtin_mapping,
    decode,
    encode,
    parse_bf,
    print_bf,
    read_mapping,
    write_mapping,
)
from .errors import HohohoError
from .notation import HO, OOK, Alphabet, AtomSeq, parse_advanced, parse_standard, print_advanced, print_standard
from .transpile import fmt, loopfree_check, transpile
from .vm import ExecResult, Halt, MachineConfig, Program, check_subset, compile_program, run

__version__ = "0.1.0"
