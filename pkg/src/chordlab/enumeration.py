"""Exhaustive generators for the chord diagram classes.

Streams are deterministic: position 1 is matched with its smallest free
partner first, which yields canonical forms in lexicographic order.
"""

from __future__ import annotations

import itertools
from enum import Enum
from typing import Callable, Iterator

from .bijection import PendingChord
from .diagram import ChordDiagram, component_count, is_indecomposable
from .errors import UsageError


class DiagramClass(str, Enum):
    ALL = "all"
    CONNECTED = "connected"
    CONNECTED_NO_SINGLE = "connectedNoSingle"
    INDECOMPOSABLE = "indecomposable"
    AT_MOST_TWO_COMPONENTS = "atMostTwoComponents"
    INDECOMPOSABLE_TWO_COMPONENTS = "indecomposableTwoComponents"

    @classmethod
    def parse(cls, tag: str) -> DiagramClass:
        try:
            return cls(tag)
        except ValueError:
            raise UsageError(f"unknown diagram class {tag!r}") from None


def _matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1:]
        for m in _matchings(remaining):
            yield [(first, partner)] + m


def all_diagrams(n: int) -> Iterator[ChordDiagram]:
    """Every perfect matching of ``{1..2n}``, once each, in lexicographic order."""
    for m in _matchings(list(range(1, 2 * n + 1))):
        yield ChordDiagram(tuple(m))


def _predicate(cls: DiagramClass) -> Callable[[ChordDiagram], bool]:
    if cls is DiagramClass.ALL:
        return lambda d: True
    if cls is DiagramClass.CONNECTED:
        return lambda d: component_count(d) == 1
    if cls is DiagramClass.CONNECTED_NO_SINGLE:
        return lambda d: d.n >= 2 and component_count(d) == 1
    if cls is DiagramClass.INDECOMPOSABLE:
        return is_indecomposable
    if cls is DiagramClass.AT_MOST_TWO_COMPONENTS:
        return lambda d: component_count(d) <= 2
    if cls is DiagramClass.INDECOMPOSABLE_TWO_COMPONENTS:
        return lambda d: is_indecomposable(d) and component_count(d) == 2
    raise UsageError(f"unknown diagram class {cls!r}")


def in_class(cls: DiagramClass | str, d: ChordDiagram) -> bool:
    if isinstance(cls, str):
        cls = DiagramClass.parse(cls)
    return _predicate(cls)(d)


def filter_class(cls: DiagramClass | str, n: int) -> Iterator[ChordDiagram]:
    if isinstance(cls, str):
        cls = DiagramClass.parse(cls)
    keep = _predicate(cls)
    return (d for d in all_diagrams(n) if keep(d))


def count_class(cls: DiagramClass | str, n: int) -> int:
    return sum(1 for _ in filter_class(cls, n))


def all_pending(n: int) -> Iterator[PendingChord]:
    """Every labelled marked chord with an ordered pair of diagrams, total size ``n``.

    Labels ``1..n`` are dealt to the marked chord, then the chords of ``d_l``,
    then those of ``d_r``, in every possible way.
    """
    if n < 1:
        return
    for left_size in range(n):
        right_size = n - 1 - left_size
        for dl in all_diagrams(left_size):
            for dr in all_diagrams(right_size):
                for perm in itertools.permutations(range(1, n + 1)):
                    yield PendingChord(
                        perm[0],
                        dl.with_labels(perm[1:1 + left_size]) if left_size else dl,
                        dr.with_labels(perm[1 + left_size:]) if right_size else dr,
                    )
