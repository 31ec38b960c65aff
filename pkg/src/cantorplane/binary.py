"""Points of the binary sequence space 2^N with 1-based indices.

A point is identified with its support, the set of indices carrying a 1.
Finite-support points are stored as sorted tuples and are immutable values.
Infinite-support points are lazy: a generator of strictly increasing
positions, memoized as it is forced.  Lazy points may be advanced from one
logical owner at a time; share across contexts only behind external
synchronization.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .errors import DomainError

__all__ = [
    "CantorPoint",
    "FinitePoint",
    "LazyPoint",
    "ZERO",
    "Cylinder",
    "support",
    "counting_function",
    "enumerate_level",
    "successors",
    "cylinder_of",
]


class CantorPoint:
    """Common interface of finite and lazy points."""

    is_finite: bool

    def support_upto(self, bound: int) -> tuple[int, ...]:
        raise NotImplementedError

    def element(self, j: int) -> int:
        raise NotImplementedError


class FinitePoint(CantorPoint):
    """A point with finite support, canonical as a sorted tuple."""

    is_finite = True
    __slots__ = ("support",)

    def __init__(self, support: Iterable[int] = ()):
        sup = tuple(support)
        if list(sup) != sorted(set(sup)):
            raise ValueError(f"support must be strictly increasing: {sup}")
        if sup and sup[0] < 1:
            raise ValueError("support indices are 1-based")
        object.__setattr__(self, "support", sup)

    def __setattr__(self, *args):
        raise AttributeError("FinitePoint is immutable")

    @property
    def size(self) -> int:
        """Number of ones."""
        return len(self.support)

    @property
    def max_index(self) -> int:
        """Largest support index; 0 for the all-zero point."""
        return self.support[-1] if self.support else 0

    def support_upto(self, bound: int) -> tuple[int, ...]:
        return tuple(i for i in self.support if i <= bound)

    def element(self, j: int) -> int:
        if not 1 <= j <= len(self.support):
            raise DomainError(f"index {j} outside support of size {len(self.support)}")
        return self.support[j - 1]

    def extends(self, other: "FinitePoint") -> bool:
        """True when this point's support starts with the other's."""
        return self.support[: len(other.support)] == other.support

    def __eq__(self, other):
        return isinstance(other, FinitePoint) and other.support == self.support

    def __hash__(self):
        return hash(self.support)

    def __str__(self):
        return "{" + ",".join(map(str, self.support)) + "}"

    def __repr__(self):
        return f"FinitePoint({self.support})"


ZERO = FinitePoint(())


class LazyPoint(CantorPoint):
    """A point with infinite support, produced by a monotone generator.

    The generator must yield a strictly increasing unbounded stream of
    positive integers; emitted values are memoized.
    """

    is_finite = False

    def __init__(self, positions: Iterator[int] | Iterable[int]):
        self._iter = iter(positions)
        self._memo: list[int] = []

    def _force(self, count: int) -> None:
        while len(self._memo) < count:
            nxt = next(self._iter)
            if self._memo and nxt <= self._memo[-1]:
                raise ValueError(
                    f"lazy support not strictly increasing: {nxt} after {self._memo[-1]}"
                )
            if nxt < 1:
                raise ValueError("support indices are 1-based")
            self._memo.append(nxt)

    def element(self, j: int) -> int:
        if j < 1:
            raise DomainError("support positions are 1-based")
        self._force(j)
        return self._memo[j - 1]

    def support_upto(self, bound: int) -> tuple[int, ...]:
        while not self._memo or self._memo[-1] <= bound:
            self._force(len(self._memo) + 1)
        return tuple(i for i in self._memo if i <= bound)

    def known_prefix(self) -> tuple[int, ...]:
        return tuple(self._memo)

    def __str__(self):
        shown = ",".join(map(str, self._memo[:8]))
        return "{" + shown + ",...}"


def support(x: CantorPoint, bound: int) -> tuple[int, ...]:
    """The support of x restricted to [1..bound]."""
    if bound < 1:
        raise DomainError("bound must be at least 1")
    return x.support_upto(bound)


def counting_function(x: CantorPoint, j: int) -> int:
    """The j-th smallest support element of x."""
    return x.element(j)


def enumerate_level(k: int, max_index: int) -> list[FinitePoint]:
    """All finite points with exactly k ones, all below max_index, in
    lexicographic support order."""
    if k < 0 or max_index < 0:
        raise DomainError("level and index bound must be nonnegative")
    return [FinitePoint(c) for c in combinations(range(1, max_index + 1), k)]


def successors(d: FinitePoint, max_index: int) -> list[FinitePoint]:
    """Immediate successors of d: supports extending d's by one index m with
    d.max_index < m <= max_index."""
    return [
        FinitePoint(d.support + (m,)) for m in range(d.max_index + 1, max_index + 1)
    ]


class Cylinder:
    """The set of points sharing a fixed 0/1 prefix."""

    __slots__ = ("word",)

    def __init__(self, word: str):
        if any(ch not in "01" for ch in word):
            raise ValueError(f"cylinder word must be over 0/1: {word!r}")
        object.__setattr__(self, "word", word)

    def __setattr__(self, *args):
        raise AttributeError("Cylinder is immutable")

    @property
    def length(self) -> int:
        return len(self.word)

    def ones(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, ch in enumerate(self.word) if ch == "1")

    def member(self, x: CantorPoint) -> bool:
        return x.support_upto(self.length) == self.ones()

    def refines(self, other: "Cylinder") -> bool:
        return self.word.startswith(other.word)

    def __eq__(self, other):
        return isinstance(other, Cylinder) and other.word == self.word

    def __hash__(self):
        return hash(self.word)

    def __str__(self):
        return self.word if self.word else "(empty word)"

    def __repr__(self):
        return f"Cylinder({self.word!r})"


def cylinder_of(x: CantorPoint, n: int) -> Cylinder:
    """The basic open set of all points agreeing with x on [1..n]."""
    if n < 0:
        raise DomainError("prefix length must be nonnegative")
    if n == 0:
        return Cylinder("")
    ones = set(x.support_upto(n))
    return Cylinder("".join("1" if i in ones else "0" for i in range(1, n + 1)))
