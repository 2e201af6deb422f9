"""Exception types shared across the package."""

from __future__ import annotations


class WordmapError(Exception):
    """Base class for every error raised by this package."""


class NotAGroupError(WordmapError):
    """A multiplication table fails one of the group axioms."""


class UnknownSpecError(WordmapError):
    """A group-spec string does not match the mini-language."""


class SizeLimitError(WordmapError):
    """A requested group exceeds the configured order cap."""


class WordSyntaxError(WordmapError):
    """A word string does not match the grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ArityMismatchError(WordmapError):
    """An arity hint or assignment does not cover the variables used."""


class MissingParameterError(WordmapError):
    """A word references a parameter slot that was not bound."""


class BudgetExceededError(WordmapError):
    """A brute-force enumeration would exceed the evaluation budget."""

    def __init__(self, message: str, required: int | None = None) -> None:
        super().__init__(message)
        self.required = required


class CapExceededError(WordmapError):
    """A function-group enumeration hit the element cap.

    ``partial`` holds the incomplete enumeration, flagged unusable for any
    claim that quantifies over the whole group of word maps.
    """

    def __init__(self, message: str, partial=None) -> None:
        super().__init__(message)
        self.partial = partial


class NotNilpotentError(WordmapError):
    """An operation that requires a nilpotent group got a non-nilpotent one."""


class PrimeNotDividingError(WordmapError):
    """The given prime does not divide the group order."""


class IncompleteSetError(WordmapError):
    """A distribution set flagged as partial was fed to a set-level check."""


class NotNilpotentSetError(WordmapError):
    """A distribution set fails the nilpotency criterion required here."""


class NoSylowVectorError(WordmapError):
    """No distribution identifies the requested Sylow subgroup."""


class NoMatchError(WordmapError):
    """No abelian group matches the observed deficiency set."""


class AmbiguousMatchError(WordmapError):
    """More than one abelian group matches; treated as an internal failure."""


class NotSurjectiveError(WordmapError):
    """A word required to be surjective is not."""


class NotCommutatorWordError(WordmapError):
    """A word required to have zero exponent sums does not."""


class VerificationError(WordmapError):
    """An internal cross-check between two computation paths failed."""
