"""Exception hierarchy.

Three verdict families matter for callers (and fix the CLI exit codes):
``NegativeVerdict`` (a definite "no"), ``Inconclusive`` (resource bounds hit
before a verdict), and ``UsageError`` (malformed input or violated
precondition).  Every exception carries a short machine-readable ``code`` and
a ``details`` dict so reports can be serialized without parsing messages.
"""

from __future__ import annotations


class PermutoidLabError(Exception):
    code = "Error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class NegativeVerdict(PermutoidLabError):
    """A definite negative answer (invalid object, rigidity failure, ...)."""


class Inconclusive(PermutoidLabError):
    """A resource bound was exhausted before reaching a verdict."""


class UsageError(PermutoidLabError):
    """Bad input: parse errors, schema violations, violated preconditions."""


# -- negative verdicts -------------------------------------------------------

class ValidationError(NegativeVerdict):
    """A candidate permutoid violates one of its defining clauses."""

    def __init__(self, code: str, message: str = "", **details):
        self.code = code
        super().__init__(message or code, **details)


class MorphismError(NegativeVerdict):
    """A candidate morphism violates one of the three morphism clauses."""

    def __init__(self, code: str, message: str = "", **details):
        self.code = code
        super().__init__(message or code, **details)


class DevelopmentError(NegativeVerdict):
    """A claimed development fails independent re-verification."""

    def __init__(self, code: str, message: str = "", **details):
        self.code = code
        super().__init__(message or code, **details)


class PseudogroupError(NegativeVerdict):
    """A claimed pseudogroup fails its well-formedness checks."""

    def __init__(self, code: str, message: str = "", **details):
        self.code = code
        super().__init__(message or code, **details)


class NotRigid(NegativeVerdict):
    code = "NotRigid"


class RelatorNotKilled(NegativeVerdict):
    code = "RelatorNotKilled"


class NotFree(NegativeVerdict):
    code = "NotFree"


class NotAnAction(NegativeVerdict):
    code = "NotAnAction"


# -- inconclusive outcomes ---------------------------------------------------

class OutOfBounds(Inconclusive):
    """Coset enumeration hit its bound.  Never evidence of infiniteness."""

    code = "OutOfBounds"


# Word-problem backends surface their resource failures under this name.
BackendInconclusive = OutOfBounds


class ClosureCapExceeded(Inconclusive):
    code = "ClosureCapExceeded"


class GroupClosureCapExceeded(Inconclusive):
    code = "GroupClosureCapExceeded"


# -- usage errors ------------------------------------------------------------

class ParseError(UsageError):
    def __init__(self, code: str, message: str = "", **details):
        self.code = code
        super().__init__(message or code, **details)


class FormatError(UsageError):
    """A data file does not match its documented schema."""

    code = "FormatError"


class GroundSetMismatch(UsageError):
    code = "GroundSetMismatch"


class GroundSetTooLarge(UsageError):
    code = "GroundSetTooLarge"


class PreconditionRadius(UsageError):
    code = "PreconditionRadius"
