"""Functional letter codes and positional designations of automation devices.

A functional code is the letter tag drawn in the upper half of an instrument
circle: the first letter names the measured variable, an optional modifier
follows, then the function letters (``PDI``, ``TIR``, ``FQI``).  A positional
designation is the loop number followed by a letter suffix (``12б``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class TagError(ValueError):
    """Raised for malformed functional codes or positional designations."""


class MeasuredVariable(Enum):
    DENSITY = "D"
    ELECTRICAL = "E"
    FLOW = "F"
    DIMENSION = "G"
    TIME = "K"
    LEVEL = "L"
    MOISTURE = "M"
    PRESSURE = "P"
    COMPOSITION = "Q"
    RADIOACTIVITY = "R"
    SPEED = "S"
    TEMPERATURE = "T"
    MULTIPLE = "U"
    VISCOSITY = "V"
    MASS = "W"

    @property
    def letter(self) -> str:
        return self.value

    @classmethod
    def from_letter(cls, letter: str) -> MeasuredVariable:
        try:
            return cls(letter)
        except ValueError:
            raise TagError(f"{letter!r} is not a measured-variable letter") from None


VARIABLE_LETTERS: dict[str, str] = {
    "D": "density",
    "E": "electrical quantity",
    "F": "flow",
    "G": "dimension/position",
    "K": "time",
    "L": "level",
    "M": "moisture",
    "P": "pressure/vacuum",
    "Q": "composition/quantity",
    "R": "radioactivity",
    "S": "speed/frequency",
    "T": "temperature",
    "U": "multiple variables",
    "V": "viscosity",
    "W": "mass",
}

MODIFIER_LETTERS: dict[str, str] = {
    "D": "difference",
    "F": "ratio",
    "J": "scan",
    "Q": "integration",
}

FUNCTION_LETTERS: dict[str, str] = {
    "E": "sensing",
    "T": "transmit",
    "K": "control station",
    "I": "indicate",
    "R": "record",
    "C": "regulate",
    "S": "switch",
    "A": "alarm",
    "Y": "compute",
    "H": "manual",
}


@dataclass(frozen=True)
class FunctionalCode:
    variable: str
    modifier: str | None = None
    functions: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "functions", tuple(self.functions))
        if self.variable not in VARIABLE_LETTERS:
            raise TagError(f"{self.variable!r} is not a measured-variable letter")
        if self.modifier is not None and self.modifier not in MODIFIER_LETTERS:
            raise TagError(f"{self.modifier!r} is not a modifier letter")
        for letter in self.functions:
            if letter not in FUNCTION_LETTERS:
                raise TagError(f"{letter!r} is not a function letter")
        if len(set(self.functions)) != len(self.functions):
            raise TagError(f"duplicate function letters in {''.join(self.functions)!r}")

    def __str__(self) -> str:
        return display_code(self)


@dataclass(frozen=True, order=True)
class PositionalDesignation:
    """Loop number plus letter suffix; orders by (loop, suffix code points)."""

    loop: int
    suffix: str = ""

    def __post_init__(self) -> None:
        if isinstance(self.loop, bool) or not isinstance(self.loop, int) or self.loop < 1:
            raise TagError(f"loop number must be a positive integer, got {self.loop!r}")
        if self.suffix and not self.suffix.isalpha():
            raise TagError(f"designation suffix must be letters only, got {self.suffix!r}")

    def __str__(self) -> str:
        return f"{self.loop}{self.suffix}"


def parse_code(text: str) -> FunctionalCode:
    """Parse a letter tag such as ``"PDI"`` into a :class:`FunctionalCode`.

    The second character is taken as a modifier when it is a modifier letter
    and either cannot be a function letter or the code has at least three
    characters.  Everything after the variable (and modifier) must be
    distinct function letters.
    """
    if not text:
        raise TagError("empty functional code")
    variable = text[0]
    if variable not in VARIABLE_LETTERS:
        raise TagError(f"{variable!r} is not a measured-variable letter in {text!r}")
    rest = text[1:]
    modifier = None
    if rest and rest[0] in MODIFIER_LETTERS and (
        rest[0] not in FUNCTION_LETTERS or len(text) >= 3
    ):
        modifier, rest = rest[0], rest[1:]
    seen: set[str] = set()
    for ch in rest:
        if ch not in FUNCTION_LETTERS:
            raise TagError(f"{ch!r} is not a function letter in {text!r}")
        if ch in seen:
            raise TagError(f"duplicate function letter {ch!r} in {text!r}")
        seen.add(ch)
    return FunctionalCode(variable, modifier, tuple(rest))


def display_code(code: FunctionalCode) -> str:
    return code.variable + (code.modifier or "") + "".join(code.functions)


def measured_variable(code: FunctionalCode) -> MeasuredVariable:
    return MeasuredVariable(code.variable)


_DESIGNATION = re.compile(r"([0-9]+)(.*)", re.DOTALL)


def parse_designation(text: str) -> PositionalDesignation:
    """Split ``"12б"`` into loop 12 and suffix ``"б"``."""
    m = _DESIGNATION.fullmatch(text)
    if m is None:
        raise TagError(f"positional designation {text!r} must start with decimal digits")
    loop = int(m.group(1))
    if loop == 0:
        raise TagError(f"loop number in {text!r} must be at least 1")
    suffix = m.group(2)
    if suffix and not suffix.isalpha():
        raise TagError(f"positional designation {text!r} has non-letter characters after the digits")
    return PositionalDesignation(loop, suffix)


def display_designation(pos: PositionalDesignation) -> str:
    return f"{pos.loop}{pos.suffix}"
