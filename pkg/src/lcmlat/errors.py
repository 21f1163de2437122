"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class LcmLatError(Exception):
    """Base class for all errors raised by lcmlat."""


class ValidationError(LcmLatError, ValueError):
    """Malformed input: bad cover relation, bad set, bad file."""


class NotGcdClosedError(ValidationError):
    def __init__(self, x: int, y: int, g: int):
        self.pair = (x, y)
        self.gcd = g
        super().__init__(f"set is not GCD closed: gcd({x}, {y}) = {g} is missing")


class PreconditionError(LcmLatError, ValueError):
    """Arguments are well formed but violate an operation's precondition."""


class FactorizationBudgetExceeded(LcmLatError):
    def __init__(self, n: int, budget: int):
        self.n = n
        self.budget = budget
        super().__init__(f"factorization budget exceeded: {n} needs more than {budget} trial divisions")


class UncertifiableError(LcmLatError):
    """Interval evaluation could not decide a sign within the precision cap."""
