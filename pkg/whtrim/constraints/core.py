"""
Weakly-hard constraints and execution traces.

Provides the AnyMiss/AnyHit constraint type, the Word trace type and the
brute-force semantic oracle that every automaton is validated against.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Set, Tuple

# Exhaustive enumeration grows like 2^n; beyond this length it is a bug, not a query.
MAX_ENUMERATION_LENGTH = 24

MISS = 0
HIT = 1


class ConstraintError(ValueError):
    """Base exception for constraint and trace errors."""

    pass


class InvalidConstraintError(ConstraintError):
    """Raised when (m, k) or (h, k) violate 1 <= m < k."""

    pass


class LimitExceeded(ConstraintError):
    """Raised when an exhaustive query exceeds its length guard."""

    pass


class ConstraintKind(str, Enum):
    """Weakly-hard constraint families."""

    ANY_MISS = "anymiss"  # at most m misses in every window of k
    ANY_HIT = "anyhit"  # at least h hits in every window of k


@dataclass(frozen=True, eq=False)
class WeaklyHardConstraint:
    """
    An AnyMiss(m, k) or AnyHit(h, k) constraint.

    Equality is semantic: AnyHit(h, k) equals AnyMiss(k - h, k).

    Attributes:
        kind: Constraint family
        m_or_h: Misses allowed (AnyMiss) or hits required (AnyHit)
        k: Window length in job activations
    """

    kind: ConstraintKind
    m_or_h: int
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or not isinstance(self.m_or_h, int):
            raise InvalidConstraintError("Constraint parameters must be integers")
        if self.k < 2 or not 1 <= self.m_or_h < self.k:
            raise InvalidConstraintError(
                f"{self.kind.value}({self.m_or_h},{self.k}) requires 1 <= {self.m_or_h} < {self.k}"
            )

    @classmethod
    def any_miss(cls, m: int, k: int) -> "WeaklyHardConstraint":
        """Create AnyMiss(m, k)."""
        return cls(ConstraintKind.ANY_MISS, m, k)

    @classmethod
    def any_hit(cls, h: int, k: int) -> "WeaklyHardConstraint":
        """Create AnyHit(h, k)."""
        return cls(ConstraintKind.ANY_HIT, h, k)

    @classmethod
    def parse(cls, text: str) -> "WeaklyHardConstraint":
        """
        Parse the CLI syntax ``anymiss:m:k`` or ``anyhit:h:k``.

        Raises:
            InvalidConstraintError: If the text is malformed or out of range
        """
        parts = text.strip().lower().split(":")
        if len(parts) != 3:
            raise InvalidConstraintError(f"Expected 'anymiss:m:k' or 'anyhit:h:k', got '{text}'")
        try:
            kind = ConstraintKind(parts[0])
        except ValueError:
            raise InvalidConstraintError(f"Unknown constraint kind '{parts[0]}'")
        try:
            first, k = int(parts[1]), int(parts[2])
        except ValueError:
            raise InvalidConstraintError(f"Non-integer parameter in '{text}'")
        return cls(kind, first, k)

    @property
    def misses(self) -> int:
        """Maximum number of misses per window."""
        if self.kind == ConstraintKind.ANY_MISS:
            return self.m_or_h
        return self.k - self.m_or_h

    @property
    def hits(self) -> int:
        """Minimum number of hits per window."""
        return self.k - self.misses

    def as_anymiss(self) -> "WeaklyHardConstraint":
        """Canonical AnyMiss form of this constraint."""
        return WeaklyHardConstraint.any_miss(self.misses, self.k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeaklyHardConstraint):
            return NotImplemented
        return (self.misses, self.k) == (other.misses, other.k)

    def __hash__(self) -> int:
        return hash((self.misses, self.k))

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.m_or_h}:{self.k}"


@dataclass(frozen=True)
class Word:
    """
    A finite execution trace over {0, 1}, stored oldest-first.

    Position i of ``bits`` is the (i+1)-th job activation; 1 is a deadline hit,
    0 a deadline miss. The descending window notation v_{k:1} used for automaton
    labels reads the same string left to right, with v_1 the newest symbol.
    """

    bits: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for bit in self.bits:
            if bit not in (MISS, HIT):
                raise ConstraintError(f"Word symbols must be 0 or 1, got {bit!r}")

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse a string such as ``"0110100"``."""
        try:
            return cls(tuple(int(ch) for ch in text.strip()))
        except ValueError:
            raise ConstraintError(f"Invalid word '{text}'")

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __str__(self) -> str:
        return "".join(str(bit) for bit in self.bits)

    def count_misses(self) -> int:
        """Number of deadline misses in the trace."""
        return self.bits.count(MISS)

    def append(self, symbol: int) -> "Word":
        """Return the trace extended by one activation."""
        return Word(self.bits + (symbol,))


def _window_ok(bits: Tuple[int, ...], constraint: WeaklyHardConstraint) -> bool:
    """Check the window of the newest min(k, len) symbols."""
    return bits[-constraint.k :].count(MISS) <= constraint.misses


def satisfies(word: Word, constraint: WeaklyHardConstraint) -> bool:
    """
    Check a finite trace against a constraint.

    A trace satisfies when it is the prefix of some infinite trace that does,
    i.e. when it can be continued with hits forever. Every full window of k
    symbols is checked, and a trace shorter than k may hold at most m misses
    in total.
    """
    bits = word.bits
    k = constraint.k
    if len(bits) < k:
        return bits.count(MISS) <= constraint.misses

    misses = bits[:k].count(MISS)
    if misses > constraint.misses:
        return False
    for end in range(k, len(bits)):
        misses += (bits[end] == MISS) - (bits[end - k] == MISS)
        if misses > constraint.misses:
            return False
    return True


def enumerate_language(constraint: WeaklyHardConstraint, length: int) -> Set[Word]:
    """
    Enumerate every word of exactly ``length`` symbols satisfying the constraint.

    Words are grown one symbol at a time from satisfying prefixes, which is
    exhaustive because the constraint is prefix-closed.

    Raises:
        LimitExceeded: If length exceeds MAX_ENUMERATION_LENGTH
    """
    if length < 0:
        raise ConstraintError(f"Length must be non-negative, got {length}")
    if length > MAX_ENUMERATION_LENGTH:
        raise LimitExceeded(
            f"Enumeration length {length} exceeds limit {MAX_ENUMERATION_LENGTH}"
        )

    frontier: List[Tuple[int, ...]] = [()]
    for _ in range(length):
        extended = []
        for bits in frontier:
            for symbol in (MISS, HIT):
                candidate = bits + (symbol,)
                if _window_ok(candidate, constraint):
                    extended.append(candidate)
        frontier = extended

    return {Word(bits) for bits in frontier}


def language_size(constraint: WeaklyHardConstraint, length: int) -> int:
    """Number of satisfying words of exactly ``length`` symbols (oracle count)."""
    return len(enumerate_language(constraint, length))


def dual(constraint: WeaklyHardConstraint) -> WeaklyHardConstraint:
    """
    Map AnyMiss(m, k) to AnyHit(k - m, k) and vice versa.

    The result accepts exactly the same traces.
    """
    if constraint.kind == ConstraintKind.ANY_MISS:
        return WeaklyHardConstraint.any_hit(constraint.k - constraint.m_or_h, constraint.k)
    return WeaklyHardConstraint.any_miss(constraint.k - constraint.m_or_h, constraint.k)
