"""Rooted chord diagrams and their structural decompositions.

A diagram on ``n`` chords is a perfect matching of ``{1, ..., 2n}`` stored as
chords ``(a, b)`` with ``a < b``, sorted by left endpoint, so chord 0 is the
root chord.  Interval ``i`` (``1 <= i <= 2n``) is the gap immediately right of
endpoint position ``i``.

Sub-diagrams are always relabelled order-preservingly onto ``{1..2k}``;
chord labels, when present, travel with their chords.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    DomainError,
    EmptyDiagramError,
    LabelError,
    NotRootComponentError,
    ParseError,
    StructureError,
)

Chord = tuple[int, int]


@dataclass(frozen=True)
class ChordDiagram:
    chords: tuple[Chord, ...] = ()
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        chords = [tuple(c) for c in self.chords]
        labels = None if self.labels is None else list(self.labels)
        if labels is not None and len(labels) != len(chords):
            raise LabelError("need exactly one label per chord")
        order = sorted(range(len(chords)), key=lambda i: min(chords[i]))
        chords = [(min(chords[i]), max(chords[i])) for i in order]
        seen = sorted(p for c in chords for p in c)
        if seen != list(range(1, 2 * len(chords) + 1)):
            raise DomainError(f"endpoints {seen} do not form a matching of 1..{2 * len(chords)}")
        object.__setattr__(self, "chords", tuple(chords))
        if not chords:
            labels = None
            object.__setattr__(self, "labels", None)
        if labels is not None:
            labels = [labels[i] for i in order]
            if len(set(labels)) != len(labels) or any(l < 1 for l in labels):
                raise LabelError(f"labels must be distinct positive integers, got {labels}")
            object.__setattr__(self, "labels", tuple(labels))

    @property
    def n(self) -> int:
        return len(self.chords)

    def __len__(self) -> int:
        return len(self.chords)

    def __bool__(self) -> bool:
        return bool(self.chords)

    def __str__(self) -> str:
        return format_diagram(self)

    def label(self, i: int) -> int | None:
        return None if self.labels is None else self.labels[i]

    def word(self) -> list[int]:
        """Chord index sitting at each endpoint position (0-based list)."""
        w = [0] * (2 * self.n)
        for i, (a, b) in enumerate(self.chords):
            w[a - 1] = i
            w[b - 1] = i
        return w

    def unlabelled(self) -> ChordDiagram:
        return ChordDiagram(self.chords)

    def with_labels(self, labels: Sequence[int]) -> ChordDiagram:
        return ChordDiagram(self.chords, tuple(labels))


EMPTY = ChordDiagram()


def from_word(keys: Sequence[Hashable], labels: Mapping[Hashable, int] | None = None) -> ChordDiagram:
    """Build a diagram from a sequence in which every chord key occurs twice."""
    first: dict[Hashable, int] = {}
    chords: list[Chord] = []
    chord_keys: list[Hashable] = []
    for pos, key in enumerate(keys, start=1):
        if key in first:
            chords.append((first.pop(key), pos))
            chord_keys.append(key)
        else:
            first[key] = pos
    if first:
        raise DomainError(f"unmatched keys {sorted(map(str, first))}")
    lab = None if labels is None else tuple(labels[k] for k in chord_keys)
    return ChordDiagram(tuple(chords), lab)


def keyed_word(d: ChordDiagram, tag: Hashable) -> tuple[list[tuple[Hashable, int]], dict[tuple[Hashable, int], int] | None]:
    """``d``'s word with keys ``(tag, chord index)`` plus the matching label map."""
    if d.n == 0:
        return [], _NEUTRAL
    word = [(tag, i) for i in d.word()]
    labels = None if d.labels is None else {(tag, i): l for i, l in enumerate(d.labels)}
    return word, labels


# label map of an empty diagram: compatible with labelled and unlabelled peers
_NEUTRAL: dict = {}


def merge_label_maps(*maps):
    maps = tuple(m for m in maps if m is not _NEUTRAL)
    if all(m is None for m in maps):
        return None
    if any(m is None for m in maps):
        raise LabelError("cannot mix labelled and unlabelled diagrams")
    out = {}
    for m in maps:
        out.update(m)
    return out


def subdiagram(d: ChordDiagram, indices: Iterable[int]) -> ChordDiagram:
    """Restrict ``d`` to the given chords, relabelling endpoints in order."""
    keep = set(indices)
    word = [i for i in d.word() if i in keep]
    labels = None if d.labels is None else {i: d.labels[i] for i in keep}
    return from_word(word, labels)


def concat(*diagrams: ChordDiagram) -> ChordDiagram:
    word: list = []
    maps = []
    for t, d in enumerate(diagrams):
        w, m = keyed_word(d, t)
        word += w
        maps.append(m)
    return from_word(word, merge_label_maps(*maps))


def insert_at_interval(host: ChordDiagram, block: ChordDiagram, k: int) -> ChordDiagram:
    """Place ``block`` as one contiguous run inside interval ``k`` of ``host``."""
    if not 0 <= k <= 2 * host.n:
        raise DomainError(f"interval {k} out of range for {host.n} chords")
    hw, hl = keyed_word(host, 0)
    bw, bl = keyed_word(block, 1)
    return from_word(hw[:k] + bw + hw[k:], merge_label_maps(hl, bl))


# --- text / json -------------------------------------------------------------

_TOKEN = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*$")


def parse_diagram(text: str) -> ChordDiagram:
    """Parse ``"1-3,2-4"``; the empty string is the empty diagram."""
    if not text.strip():
        return EMPTY
    tokens = text.split(",")
    pairs = []
    used: set[int] = set()
    for tok in tokens:
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"malformed chord token {tok!r}", tok)
        a, b = int(m.group(1)), int(m.group(2))
        if a == b:
            raise ParseError(f"chord {tok!r} joins a point to itself", tok)
        for p in (a, b):
            if p in used:
                raise ParseError(f"duplicate endpoint {p} in {tok!r}", tok)
            used.add(p)
        pairs.append((tok, min(a, b), max(a, b)))
    top = 2 * len(pairs)
    for tok, a, b in pairs:
        if a < 1 or b > top:
            raise ParseError(f"endpoint in {tok!r} outside 1..{top}", tok)
    return ChordDiagram(tuple((a, b) for _, a, b in pairs))


def format_diagram(d: ChordDiagram) -> str:
    return ",".join(f"{a}-{b}" for a, b in d.chords)


def diagram_to_obj(d: ChordDiagram) -> dict:
    obj: dict = {"n": d.n, "chords": [[a, b] for a, b in d.chords]}
    if d.labels is not None:
        obj["labels"] = list(d.labels)
    return obj


def diagram_from_obj(obj: Mapping) -> ChordDiagram:
    chords = tuple((int(a), int(b)) for a, b in obj["chords"])
    if obj.get("n", len(chords)) != len(chords):
        raise ParseError("field n disagrees with the chord list")
    labels = obj.get("labels")
    d = ChordDiagram(chords, None if labels is None else tuple(labels))
    if d.chords != chords:
        raise ParseError("chords are not sorted by left endpoint")
    return d


def diagram_to_json(d: ChordDiagram) -> str:
    return json.dumps(diagram_to_obj(d), separators=(",", ":"))


def diagram_from_json(text: str) -> ChordDiagram:
    return diagram_from_obj(json.loads(text))


# --- crossings and components -------------------------------------------------


def crosses(c1: Chord, c2: Chord) -> bool:
    (v1, v2), (w1, w2) = c1, c2
    return v1 < w1 < v2 < w2 or w1 < v1 < w2 < v2


@dataclass(frozen=True)
class IntersectionGraph:
    n: int
    edges: frozenset[tuple[int, int]]

    def neighbours(self, i: int) -> list[int]:
        return sorted(j if k == i else k for k, j in self.edges if i in (k, j))


def intersection_graph(d: ChordDiagram) -> IntersectionGraph:
    ch = d.chords
    edges = frozenset(
        (i, j) for i in range(len(ch)) for j in range(i + 1, len(ch)) if crosses(ch[i], ch[j])
    )
    return IntersectionGraph(len(ch), edges)


def component_indices(d: ChordDiagram) -> list[list[int]]:
    """Chord index sets of the connected components, ordered by first endpoint."""
    n = d.n
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ch = d.chords
    for i in range(n):
        a, b = ch[i]
        for j in range(i + 1, n):
            c = ch[j][0]
            if c > b:
                break
            if ch[j][1] > b:  # a < c < b < d
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    # chords are sorted by left endpoint, so each group's first index is its leftmost
    return sorted(groups.values(), key=lambda g: g[0])


def connected_components(d: ChordDiagram) -> list[ChordDiagram]:
    return [subdiagram(d, g) for g in component_indices(d)]


def component_count(d: ChordDiagram) -> int:
    return len(component_indices(d))


def is_connected(d: ChordDiagram) -> bool:
    return component_count(d) == 1


def root_component_indices(d: ChordDiagram) -> list[int]:
    if d.n == 0:
        raise EmptyDiagramError("the empty diagram has no root component")
    return component_indices(d)[0]


def root_component(d: ChordDiagram) -> ChordDiagram:
    return subdiagram(d, root_component_indices(d))


def _dangling_indices(d: ChordDiagram) -> tuple[list[int], list[tuple[list[int], list[int]]]]:
    """Root component chord indices and, for each, the chords dangling off its ends."""
    root = root_component_indices(d)
    in_root = set(root)
    owner: dict[int, tuple[int, int]] = {}  # endpoint position -> (slot in root, side)
    for slot, i in enumerate(root):
        a, b = d.chords[i]
        owner[a] = (slot, 0)
        owner[b] = (slot, 1)
    gap_of = [None] * (2 * d.n + 1)
    current = None
    for pos in range(1, 2 * d.n + 1):
        if pos in owner:
            current = owner[pos]
        gap_of[pos] = current
    hanging: list[tuple[list[int], list[int]]] = [([], []) for _ in root]
    for i, (a, b) in enumerate(d.chords):
        if i in in_root:
            continue
        if a in owner or b in owner or gap_of[a] != gap_of[b]:
            raise StructureError(f"chord {a}-{b} straddles the root component")
        slot, side = gap_of[a]
        hanging[slot][side].append(i)
    return root, hanging


def dangling_pairs(d: ChordDiagram) -> list[tuple[ChordDiagram, ChordDiagram]]:
    """``(d_l, d_r)`` for every root component chord, in root component order."""
    _, hanging = _dangling_indices(d)
    return [(subdiagram(d, left), subdiagram(d, right)) for left, right in hanging]


def dangling_pair(d: ChordDiagram, chord_index: int) -> tuple[ChordDiagram, ChordDiagram]:
    """Diagrams hanging right of the left and right endpoint of a root component chord.

    ``chord_index`` indexes the chords of ``root_component(d)``.
    """
    root, hanging = _dangling_indices(d)
    if not 0 <= chord_index < len(root):
        raise NotRootComponentError(
            f"chord {chord_index} is not in the root component ({len(root)} chords)"
        )
    left, right = hanging[chord_index]
    return subdiagram(d, left), subdiagram(d, right)


def attach_dangling(root: ChordDiagram, pairs: Sequence[tuple[ChordDiagram, ChordDiagram]]) -> ChordDiagram:
    """Inverse of root component extraction: hang ``pairs[i]`` off chord ``i`` of ``root``."""
    if len(pairs) != root.n:
        raise DomainError("need one dangling pair per root chord")
    word: list = []
    maps = [None if root.labels is None else {("r", i): l for i, l in enumerate(root.labels)}]
    for pos, i in enumerate(root.word(), start=1):
        word.append(("r", i))
        side = 0 if root.chords[i][0] == pos else 1
        w, m = keyed_word(pairs[i][side], (i, side))
        word += w
        maps.append(m)
    return from_word(word, merge_label_maps(*maps))


# --- concatenation structure --------------------------------------------------


def factor_boundaries(d: ChordDiagram) -> list[int]:
    """Positions p where everything left of p+1 closes before p+1."""
    right_of = {a: b for a, b in d.chords}
    cuts = []
    reach = 0
    for pos in range(1, 2 * d.n + 1):
        reach = max(reach, right_of.get(pos, pos))
        if reach == pos:
            cuts.append(pos)
    return cuts


def concat_factorization(d: ChordDiagram) -> list[ChordDiagram]:
    """Split ``d`` into its maximal run of nonempty indecomposable factors."""
    word = d.word()
    out = []
    start = 0
    for cut in factor_boundaries(d):
        out.append(subdiagram(d, set(word[start:cut])))
        start = cut
    return out


def is_indecomposable(d: ChordDiagram) -> bool:
    return len(factor_boundaries(d)) <= 1


def root_removal_decomposition(d: ChordDiagram) -> tuple[list[ChordDiagram], int]:
    """Remove the root of an indecomposable diagram.

    Returns the factors of what is left and the interval of the last factor
    that held the root's right endpoint.
    """
    if d.n < 2 or not is_indecomposable(d):
        raise DomainError(f"{format_diagram(d) or 'empty'}: need an indecomposable diagram with >= 2 chords")
    b = d.chords[0][1]
    rest = subdiagram(d, range(1, d.n))
    factors = concat_factorization(rest)
    # root endpoint b sits right of rest-position b-2
    offset = 2 * (rest.n - factors[-1].n)
    marked = b - 2 - offset
    if not 1 <= marked <= 2 * factors[-1].n:
        raise StructureError("root right endpoint is not inside the last factor")
    return factors, marked


def root_insertion(factors: Sequence[ChordDiagram], marked: int) -> ChordDiagram:
    """Inverse of :func:`root_removal_decomposition`."""
    if not factors or any(f.n == 0 for f in factors):
        raise DomainError("need a nonempty list of nonempty factors")
    last = factors[-1]
    if not 1 <= marked <= 2 * last.n:
        raise DomainError(f"marked interval {marked} outside 1..{2 * last.n}")
    body = concat(*factors)
    if body.labels is not None:
        raise LabelError("root insertion works on unlabelled diagrams")
    word = [("b", i) for i in body.word()]
    g = 2 * (body.n - last.n) + marked
    return from_word([("root",)] + word[:g] + [("root",)] + word[g:])
