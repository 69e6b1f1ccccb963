"""Two mechanical multipliers: the parabola tree and the monkey linkage.

Tree calculator
    Balls sit on the parabola ``y = x**2``: value ``a`` on the left at
    ``(-a, a**2)``, value ``b`` on the right at ``(b, b**2)``.  The chord
    between them crosses the trunk (``x = 0``) at height ``a * b``.

Monkey linkage
    Two legs of length ``b`` stand on feet a distance ``2x`` apart and meet
    at the hip, ``s = b cos(gamma)`` above the feet with ``x = b sin(gamma)``.
    Each arm of length ``c = 2a`` leaves the hip at a fixed angle ``alpha``
    to its leg.  The indicator sits between the two hands, ``h`` below the
    hip, at height ``y = s - h``.  With ``alpha = pi/4`` and ``b/a = sqrt(2)``
    the indicator traces ``y = x``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, RangeError

__all__ = [
    "TreeCalc",
    "Linkage",
    "tree_line",
    "tree_multiply",
    "linkage_indicator_y",
    "linkage_pose",
    "linkage_is_calibrated",
    "calibrated_linkage",
    "monkey_multiply",
    "MONKEY_SCALE",
]


@dataclass(frozen=True)
class TreeCalc:
    max_scale: float = 10.0

    def __post_init__(self):
        if not self.max_scale > 0:
            raise DomainError("max_scale must be positive")

    def left_ball(self, a):
        return (-a, a * a)

    def right_ball(self, b):
        return (b, b * b)


def _check_tree_args(a, b, t):
    if a < 0 or b < 0:
        raise DomainError(f"ball values must be non-negative, got {a}, {b}")
    if a > t.max_scale or b > t.max_scale:
        raise DomainError(f"ball values must not exceed {t.max_scale}")


def tree_line(a: float, b: float, t: TreeCalc = TreeCalc()) -> tuple[float, float]:
    """Slope and trunk intercept of the chord from ball ``a`` to ball ``b``."""
    _check_tree_args(a, b, t)
    if a == 0 and b == 0:
        raise DomainError("both balls at the origin do not define a line")
    (x1, y1), (x2, y2) = t.left_ball(a), t.right_ball(b)
    slope = (y2 - y1) / (x2 - x1)
    # Two-point form evaluated at x = 0; symmetric in a and b.
    intercept = (x2 * y1 - x1 * y2) / (x2 - x1)
    return slope, intercept


def tree_multiply(a: float, b: float, t: TreeCalc = TreeCalc()) -> float:
    _check_tree_args(a, b, t)
    if a == 0 and b == 0:
        return 0.0
    return tree_line(a, b, t)[1]


@dataclass(frozen=True)
class Linkage:
    arm_length: float
    leg_length: float
    alpha: float

    def __post_init__(self):
        if not (self.arm_length > 0 and self.leg_length > 0):
            raise DomainError("link lengths must be positive")

    @property
    def a(self) -> float:
        return self.arm_length / 2

    @property
    def b(self) -> float:
        return self.leg_length

    @property
    def c(self) -> float:
        return self.arm_length

    @property
    def f(self) -> float:
        return self.leg_length / self.a

    def gamma(self, x: float) -> float:
        if abs(x) > self.b:
            raise DomainError(f"|x| = {abs(x)} exceeds the leg length {self.b}")
        return math.asin(x / self.b)


def calibrated_linkage(a: float = 1.0) -> Linkage:
    return Linkage(arm_length=2 * a, leg_length=math.sqrt(2) * a, alpha=math.pi / 4)


def linkage_indicator_y(x: float, L: Linkage) -> float:
    """Indicator height for half foot separation ``x`` (closed form)."""
    g = L.gamma(x)
    a, b, al = L.a, L.b, L.alpha
    return (b - 2 * a * math.cos(al)) * math.cos(g) + 2 * a * math.sin(al) * (x / b)


@dataclass(frozen=True)
class LinkagePose:
    left_foot: complex
    right_foot: complex
    hip: complex
    left_hand: complex
    right_hand: complex
    indicator: complex


def linkage_pose(x: float, L: Linkage, center: float = 0.0) -> LinkagePose:
    """Joint coordinates built link by link (points as complex numbers).

    Each arm direction is the leg direction, seen from the hip, rotated
    outward by ``alpha``; both hands are ``c`` from the hip.
    """
    g = L.gamma(x)
    lf = complex(center - x, 0.0)
    rf = complex(center + x, 0.0)
    # Leg from the left foot rises at gamma from the vertical, toward the center.
    hip = lf + L.b * cmath.exp(1j * (math.pi / 2 - g))
    left_down = (lf - hip) / L.b
    right_down = (rf - hip) / L.b
    lh = hip + L.c * left_down * cmath.exp(-1j * L.alpha)
    rh = hip + L.c * right_down * cmath.exp(1j * L.alpha)
    return LinkagePose(lf, rf, hip, lh, rh, (lh + rh) / 2)


def linkage_is_calibrated(L: Linkage, tol: float = 1e-9) -> bool:
    if not tol > 0:
        raise ValueError("tol must be positive")
    ratio = L.b / (2 * L.a)
    return abs(math.cos(L.alpha) - ratio) <= tol and abs(math.sin(L.alpha) - ratio) <= tol


MONKEY_SCALE = range(1, 13)


def _diamond_table():
    table = {}
    for i in MONKEY_SCALE:
        for j in MONKEY_SCALE:
            # (i + j) is twice the midpoint; kept integral to avoid float keys.
            address = (i + j, abs(i - j))
            if table.setdefault(address, i * j) != i * j:
                raise AssertionError(f"address collision at {address}")
    return table


_DIAMOND = _diamond_table()


def monkey_multiply(i: int, j: int, L: Linkage | None = None) -> int:
    """Product read from the indicator cell for feet at ``i`` and ``j``."""
    if L is None:
        L = calibrated_linkage()
    for v in (i, j):
        if int(v) != v or v not in MONKEY_SCALE:
            raise RangeError(f"scale positions run from 1 to 12, got {v}")
    if not linkage_is_calibrated(L, 1e-6):
        raise DomainError("linkage is not calibrated (need alpha = pi/4, b/a = sqrt 2)")
    return _DIAMOND[(int(i) + int(j), abs(int(i) - int(j)))]
