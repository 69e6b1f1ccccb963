"""Exception classes shared by the toolchain.

Every error raised on bad input derives from :class:`HohohoError`, which the
CLI catches and reports as ``ERROR: <class>: <detail>``.
"""


class HohohoError(ValueError):
    pass


class UnknownSyllable(HohohoError):
    def __init__(self, position, fragment):
        self.position = position
        self.fragment = fragment
        super().__init__(f"unknown syllable {fragment!r} at offset {position}")


class MalformedToken(HohohoError):
    def __init__(self, token, position):
        self.token = token
        self.position = position
        super().__init__(f"malformed token {token!r} at offset {position}")


class LeadingLowercase(HohohoError):
    def __init__(self):
        super().__init__("advanced notation cannot start with a lower-case atom")


class LengthNotDivisible(HohohoError):
    def __init__(self, length, width):
        self.length = length
        self.width = width
        super().__init__(f"{length} atoms do not split into codes of width {width}")


class UnmappedCode(HohohoError):
    def __init__(self, code, position):
        self.code = code
        self.position = position
        super().__init__(f"code {code} at command {position} has no command")


class CommandNotEncodable(HohohoError):
    def __init__(self, command):
        self.command = command
        super().__init__(f"command {command.value!r} has no code in this mapping")


class UnbalancedBrackets(HohohoError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"unmatched bracket at command {index}")


class SubsetViolation(HohohoError):
    def __init__(self, violations, subset=None):
        self.violations = list(violations)
        self.subset = subset
        shown = ", ".join(f"{i}:{c.value}" for i, c in self.violations[:10])
        more = " ..." if len(self.violations) > 10 else ""
        where = f" for {subset}" if subset else ""
        super().__init__(
            f"{len(self.violations)} command(s) not allowed{where}: {shown}{more}"
        )


class MappingFormatError(HohohoError):
    pass


class CorpusParseError(HohohoError):
    pass


class NoSolution(HohohoError):
    def __init__(self, diagnostics):
        self.diagnostics = diagnostics
        super().__init__(
            f"no mapping reproduces the expected output "
            f"({diagnostics.examined} candidates examined)"
        )


class DomainError(HohohoError):
    pass


class RangeError(HohohoError):
    pass
