"""The Phi bijection (connected diagrams -> two-component indecomposables) and
the Theta bijection (marked chord with two diagrams -> Z-trees).

Theta follows the queue algorithm literally: entries are processed in FIFO
order and each entry lands in one of five cases (2, 3, 4, 5a, 5b) according
to which of its two dangling diagrams are empty.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .diagram import (
    EMPTY,
    ChordDiagram,
    attach_dangling,
    component_count,
    component_indices,
    concat,
    concat_factorization,
    dangling_pairs,
    diagram_from_obj,
    diagram_to_obj,
    format_diagram,
    from_word,
    insert_at_interval,
    is_indecomposable,
    keyed_word,
    root_component,
    subdiagram,
    merge_label_maps,
)
from .errors import DomainError, LabelError, MalformedTreeError, StructureError


@dataclass(frozen=True)
class PendingChord:
    """A marked chord with its ordered pair of dangling diagrams ``(d_l, d_r)``."""

    label: int
    d_l: ChordDiagram = EMPTY
    d_r: ChordDiagram = EMPTY

    @property
    def size(self) -> int:
        return 1 + self.d_l.n + self.d_r.n

    def all_labels(self) -> list[int]:
        return [self.label, *(self.d_l.labels or ()), *(self.d_r.labels or ())]

    def to_obj(self) -> dict:
        return {"label": self.label, "left": diagram_to_obj(self.d_l), "right": diagram_to_obj(self.d_r)}

    @classmethod
    def from_obj(cls, obj: Mapping) -> PendingChord:
        return cls(int(obj["label"]), diagram_from_obj(obj["left"]), diagram_from_obj(obj["right"]))


# --- Phi -----------------------------------------------------------------------


def _require_connected(c: ChordDiagram) -> None:
    if c.n < 2 or component_count(c) != 1:
        raise DomainError(f"{format_diagram(c) or 'empty'}: need a connected diagram with >= 2 chords")


def root_share(c: ChordDiagram) -> tuple[int, ChordDiagram, ChordDiagram]:
    """Split a connected diagram into ``(k, c1, c2)``.

    ``c2`` is the first component left after deleting the root, ``c1`` is
    everything else (root included) and ``k`` is the interval of ``c2`` that
    holds the root's right endpoint.
    """
    _require_connected(c)
    rest = subdiagram(c, range(1, c.n))
    # chord order survives the relabelling, so rest chord i is c chord i+1
    first = [i + 1 for i in component_indices(rest)[0]]
    others = [i for i in range(c.n) if i not in set(first)]
    c2 = subdiagram(c, first)
    c1 = subdiagram(c, others)
    k = subdiagram(c, [0, *first]).chords[0][1] - 2
    return k, c1, c2


def recombine(k: int, c1: ChordDiagram, c2: ChordDiagram) -> ChordDiagram:
    """Inverse of :func:`root_share`."""
    if not 1 <= k <= 2 * c2.n - 1:
        raise DomainError(f"interval {k} outside 1..{2 * c2.n - 1}")
    w1, l1 = keyed_word(c1, 1)
    w2, l2 = keyed_word(c2, 2)
    return from_word(w1[:1] + w2[:k] + w1[1:] + w2[k:], merge_label_maps(l1, l2))


def phi(c: ChordDiagram) -> ChordDiagram:
    """Drop ``c1`` as one block into interval ``k`` of ``c2``."""
    k, c1, c2 = root_share(c)
    return insert_at_interval(c2, c1, k)


def split_two_components(e: ChordDiagram) -> tuple[int, ChordDiagram, ChordDiagram]:
    """For an indecomposable two-component diagram return ``(k, inner, outer)``."""
    if e.n < 2 or component_count(e) != 2 or not is_indecomposable(e):
        raise DomainError(f"{format_diagram(e) or 'empty'}: need an indecomposable diagram with two components")
    outer, inner = component_indices(e)
    word = e.word()
    inner_set = set(inner)
    positions = [p for p, i in enumerate(word) if i in inner_set]
    if positions[-1] - positions[0] + 1 != len(positions):
        raise StructureError(f"{format_diagram(e)}: inner component is not contiguous")
    return positions[0], subdiagram(e, inner), subdiagram(e, outer)


def phi_inv(e: ChordDiagram) -> ChordDiagram:
    """Pull the inner component's root left end to the front."""
    k, c1, c2 = split_two_components(e)
    return recombine(k, c1, c2)


# --- Z-trees ---------------------------------------------------------------------


@dataclass(frozen=True)
class ZTree:
    stack: tuple[int, ...]
    structure: ChordDiagram = EMPTY
    children: tuple[ZTree, ...] = ()

    @property
    def top(self) -> int:
        return self.stack[0]

    def node_count(self) -> int:
        return len(self.stack) + sum(c.node_count() for c in self.children)

    def labels(self) -> list[int]:
        out = list(self.stack)
        for c in self.children:
            out += c.labels()
        return out

    def to_obj(self) -> dict:
        return {
            "stack": list(self.stack),
            "structure": diagram_to_obj(self.structure),
            "children": [c.to_obj() for c in self.children],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), separators=(",", ":"))

    @classmethod
    def from_obj(cls, obj: Mapping) -> ZTree:
        try:
            return cls(
                tuple(int(l) for l in obj["stack"]),
                diagram_from_obj(obj["structure"]),
                tuple(cls.from_obj(c) for c in obj["children"]),
            )
        except (KeyError, TypeError) as exc:
            raise MalformedTreeError(f"bad tree object: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> ZTree:
        return cls.from_obj(json.loads(text))


def validate_ztree(z: ZTree, size: int | None = None) -> None:
    """Raise :class:`MalformedTreeError` unless ``z`` is a well-formed Z-tree."""
    labels = z.labels()
    if len(set(labels)) != len(labels):
        raise MalformedTreeError(f"repeated labels in {sorted(labels)}")
    if size is not None and len(labels) != size:
        raise MalformedTreeError(f"tree has {len(labels)} nodes, expected {size}")
    todo = [z]
    while todo:
        v = todo.pop()
        if not v.stack:
            raise MalformedTreeError("empty vertex stack")
        s = v.structure
        if s.n != len(v.children):
            raise MalformedTreeError(f"vertex {v.top}: {s.n} structure chords for {len(v.children)} children")
        if s.n:
            if s.labels is None or set(s.labels) != {c.top for c in v.children}:
                raise MalformedTreeError(f"vertex {v.top}: structure labels do not match children")
            if component_count(s) > 2:
                raise MalformedTreeError(f"vertex {v.top}: structure has more than two components")
        todo.extend(v.children)


@dataclass
class _Vertex:
    stack: list[int]
    structure: ChordDiagram = EMPTY
    children: list[_Vertex] = field(default_factory=list)

    def freeze(self) -> ZTree:
        by_top = {c.stack[0]: c for c in self.children}
        order = self.structure.labels or ()
        return ZTree(tuple(self.stack), self.structure, tuple(by_top[l].freeze() for l in order))


@dataclass(frozen=True)
class TraceStep:
    iteration: int
    queue_length: int
    case: str
    chord: int
    vertex: int

    def __str__(self) -> str:
        return f"iter={self.iteration} queue={self.queue_length} case={self.case} chord={self.chord} vertex={self.vertex}"


def _check_labels(p: PendingChord) -> None:
    for d in (p.d_l, p.d_r):
        if d.n and d.labels is None:
            raise LabelError("dangling diagrams must carry chord labels")
    labels = p.all_labels()
    if len(set(labels)) != len(labels):
        raise LabelError(f"label collision in {labels}")


def theta(p: PendingChord, trace: list[TraceStep] | None = None) -> ZTree:
    """Build the Z-tree of ``p`` with the queue algorithm."""
    _check_labels(p)
    root = _Vertex([p.label])
    host = {p.label: root}  # chord label -> vertex whose stack holds it
    queue = deque([(p.label, p.d_l, p.d_r)])
    iteration = 0

    def spawn(v: _Vertex, diagram: ChordDiagram) -> None:
        rc = root_component(diagram)
        for i, (dl, dr) in enumerate(dangling_pairs(diagram)):
            child = _Vertex([rc.labels[i]])
            v.children.append(child)
            host[rc.labels[i]] = child
            queue.append((rc.labels[i], dl, dr))

    while queue:
        iteration += 1
        length = len(queue)
        label, dl, dr = queue[0]
        v = host[label]
        if not dl and not dr:
            case = "2"
        elif not dl:
            case = "3"
            v.structure = root_component(dr)
            spawn(v, dr)
        elif dr:
            case = "4"
            v.structure = concat(root_component(dl), root_component(dr))
            spawn(v, dl)
            spawn(v, dr)
        else:
            rc = root_component(dl)
            if rc.n == 1:
                case = "5a"
                c = rc.labels[0]
                v.stack.append(c)
                host[c] = v
                (cl, cr), = dangling_pairs(dl)
                queue.append((c, cl, cr))
            else:
                case = "5b"
                v.structure = phi(rc)
                spawn(v, dl)
        if trace is not None:
            trace.append(TraceStep(iteration, length, case, label, v.stack[0]))
        queue.popleft()
    return root.freeze()


def theta_inv(z: ZTree) -> PendingChord:
    """Rebuild the marked chord and its dangling diagrams from a Z-tree."""
    validate_ztree(z)

    def single(label: int) -> ChordDiagram:
        return ChordDiagram(((1, 2),), (label,))

    def danglers(v: ZTree, depth: int) -> tuple[ChordDiagram, ChordDiagram]:
        if depth < len(v.stack) - 1:
            # stacked node: left dangler whose root component is the next node alone
            return attach_dangling(single(v.stack[depth + 1]), [danglers(v, depth + 1)]), EMPTY
        s = v.structure
        if s.n == 0:
            return EMPTY, EMPTY
        child = {c.top: c for c in v.children}

        def grow(rc: ChordDiagram) -> ChordDiagram:
            return attach_dangling(rc, [danglers(child[l], 0) for l in rc.labels])

        parts = component_count(s)
        if parts == 1:
            return EMPTY, grow(s)
        if parts == 2 and is_indecomposable(s):
            return grow(phi_inv(s)), EMPTY
        if parts == 2:
            left, right = concat_factorization(s)
            return grow(left), grow(right)
        raise MalformedTreeError(f"vertex {v.top}: structure fits none of the four cases")

    dl, dr = danglers(z, 0)
    return PendingChord(z.top, dl, dr)
