"""Exception types raised by the library."""

from __future__ import annotations


class HeckeCongruenceError(Exception):
    """Base class for all library errors."""


class RootDatumError(HeckeCongruenceError, ValueError):
    """The root datum violates one of its structural invariants."""


class NotMinusculeError(HeckeCongruenceError, ValueError):
    def __init__(self, mu, root, value):
        self.mu = mu
        self.root = root
        self.value = value
        super().__init__(
            f"cocharacter {list(mu)} is not minuscule: <{list(root)}, mu> = {value}"
        )


class NotDivisibleError(HeckeCongruenceError, ArithmeticError):
    """Polynomial division left a nonzero remainder."""

    def __init__(self, degree, remainder):
        self.degree = degree
        self.remainder = remainder
        super().__init__(f"not divisible: remainder has nonzero coefficient of x^{degree}")


class InvarianceError(HeckeCongruenceError):
    """A coefficient is not fixed by the dot action of a Weyl element."""

    def __init__(self, coefficient_index, witness, message=None):
        self.coefficient_index = coefficient_index
        self.witness = witness
        super().__init__(
            message
            or f"coefficient of x^{coefficient_index} is not dot-invariant under {witness}"
        )


class PeriodGapError(HeckeCongruenceError):
    """No label in MV(tau) has the full period m."""


class EnumerationError(HeckeCongruenceError):
    """A bounded search did not find what it was guaranteed to find."""


class ConfigError(HeckeCongruenceError, ValueError):
    """Malformed datum configuration."""
