import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chordlab.diagram import (
    EMPTY,
    ChordDiagram,
    attach_dangling,
    concat,
    concat_factorization,
    connected_components,
    dangling_pair,
    dangling_pairs,
    diagram_from_json,
    diagram_to_json,
    format_diagram,
    intersection_graph,
    is_connected,
    is_indecomposable,
    parse_diagram,
    root_component,
    root_component_indices,
    root_insertion,
    root_removal_decomposition,
)
from chordlab.enumeration import all_diagrams
from chordlab.errors import (
    DomainError,
    EmptyDiagramError,
    LabelError,
    NotRootComponentError,
    ParseError,
)
from oracles import crossing, graph, indecomposable, n_components

SINGLE = parse_diagram("1-2")
CROSSING = parse_diagram("1-3,2-4")
NESTED = parse_diagram("1-4,2-3")


@st.composite
def diagrams(draw, max_n=7, labelled=False):
    n = draw(st.integers(0, max_n))
    points = draw(st.permutations(list(range(1, 2 * n + 1))))
    chords = tuple(tuple(sorted(points[i:i + 2])) for i in range(0, 2 * n, 2))
    labels = None
    if labelled and n:
        labels = tuple(draw(st.permutations(list(range(1, n + 1)))))
    return ChordDiagram(chords, labels)


def up_to(n_max):
    for n in range(n_max + 1):
        yield from all_diagrams(n)


def test_parse_examples():
    assert parse_diagram("") == EMPTY and EMPTY.n == 0
    assert CROSSING.chords == ((1, 3), (2, 4))
    assert is_connected(CROSSING)
    assert len(connected_components(NESTED)) == 2


def test_parse_sorts_chords():
    assert parse_diagram("2-4,1-3") == CROSSING
    assert parse_diagram("3-1, 4-2") == CROSSING


@pytest.mark.parametrize("text, token", [
    ("1-3,2-x", "2-x"),
    ("1-3,1-4", "1-4"),
    ("1-3,2-5", "2-5"),
    ("1-2,3-3", "3-3"),
    ("1-3;2-4", "1-3;2-4"),
])
def test_parse_errors_name_the_token(text, token):
    with pytest.raises(ParseError) as info:
        parse_diagram(text)
    assert info.value.token == token


@given(diagrams(labelled=True))
def test_text_and_json_round_trip(d):
    assert parse_diagram(format_diagram(d)) == d.unlabelled()
    assert diagram_from_json(diagram_to_json(d)) == d


def test_json_format():
    d = CROSSING.with_labels([7, 3])
    assert diagram_to_json(d) == '{"n":2,"chords":[[1,3],[2,4]],"labels":[7,3]}'
    assert diagram_to_json(EMPTY) == '{"n":0,"chords":[]}'


def test_labels_must_be_distinct():
    with pytest.raises(LabelError):
        CROSSING.with_labels([1, 1])


def test_intersection_graph_examples():
    assert intersection_graph(CROSSING).edges == {(0, 1)}
    assert intersection_graph(NESTED).edges == frozenset()
    # (2,6) and (3,5) are nested, so only the root crosses both
    expected = {(i, j) for i, j in itertools.combinations(range(3), 2)
                if crossing(((1, 4), (2, 6), (3, 5))[i], ((1, 4), (2, 6), (3, 5))[j])}
    assert expected == {(0, 1), (0, 2)}
    assert intersection_graph(parse_diagram("1-4,2-6,3-5")).edges == expected


@given(diagrams())
def test_intersection_graph_matches_brute_force(d):
    g = graph(d.chords)
    assert intersection_graph(d).edges == {tuple(sorted(e)) for e in g.edges}
    assert all(crossing(a, b) == crossing(b, a) for a in d.chords for b in d.chords)


@given(diagrams())
def test_components_match_networkx(d):
    comps = connected_components(d)
    assert len(comps) == n_components(d.chords)
    assert all(is_connected(c) for c in comps)
    assert sum(c.n for c in comps) == d.n


@given(diagrams(labelled=True))
def test_component_graph_is_induced_subgraph(d):
    g = graph(d.chords)
    label_of = dict(enumerate(d.labels or ()))
    for comp in connected_components(d):
        idx = [i for i in range(d.n) if label_of.get(i) in set(comp.labels or ())]
        sub = nx.relabel_nodes(g.subgraph(idx), {v: k for k, v in enumerate(sorted(idx))})
        assert intersection_graph(comp).edges == {tuple(sorted(e)) for e in sub.edges}


def test_components_are_ordered_by_first_endpoint():
    d = parse_diagram("1-2,3-6,4-5")
    assert connected_components(d) == [SINGLE, SINGLE, SINGLE]
    assert connected_components(EMPTY) == []
    assert connected_components(CROSSING) == [CROSSING]


def test_root_component_examples():
    assert root_component(CROSSING) == CROSSING
    assert root_component(parse_diagram("1-2,3-6,4-5")) == SINGLE
    assert root_component(NESTED) == SINGLE
    with pytest.raises(EmptyDiagramError):
        root_component(EMPTY)


def test_root_component_keeps_labels():
    d = parse_diagram("1-5,2-8,3-4,6-7,9-10").with_labels([5, 4, 3, 2, 1])
    assert root_component(d) == parse_diagram("1-3,2-4").with_labels([5, 4])


def test_dangling_examples():
    assert dangling_pair(CROSSING, 0) == (EMPTY, EMPTY)
    assert dangling_pair(CROSSING, 1) == (EMPTY, EMPTY)
    assert dangling_pair(NESTED, 0) == (SINGLE, EMPTY)
    assert dangling_pair(parse_diagram("1-2,3-4"), 0) == (EMPTY, SINGLE)
    with pytest.raises(NotRootComponentError):
        dangling_pair(NESTED, 1)


def test_dangling_labelled():
    d = parse_diagram("1-5,2-8,3-4,6-7,9-10").with_labels([5, 4, 3, 2, 1])
    one = lambda l: SINGLE.with_labels([l])  # noqa: E731
    assert dangling_pairs(d) == [(EMPTY, one(2)), (one(3), one(1))]


def test_dangling_partition_and_reassembly_exhaustive():
    for d in up_to(6):
        if not d.n:
            continue
        labelled = d.with_labels(range(1, d.n + 1))
        pairs = dangling_pairs(labelled)
        rc = root_component(labelled)
        assert rc.n + sum(l.n + r.n for l, r in pairs) == d.n
        seen = set(rc.labels)
        for l, r in pairs:
            for part in (l, r):
                assert not seen & set(part.labels or ())
                seen |= set(part.labels or ())
        assert seen == set(range(1, d.n + 1))
        assert attach_dangling(rc, pairs) == labelled


def test_concat_factorization_examples():
    assert concat_factorization(CROSSING) == [CROSSING]
    assert concat_factorization(parse_diagram("1-2,3-4")) == [SINGLE, SINGLE]
    assert concat_factorization(EMPTY) == []


def test_concat_factorization_exhaustive():
    for d in up_to(6):
        factors = concat_factorization(d)
        assert concat(*factors) == d
        assert all(f.n and indecomposable(f.chords) for f in factors)
        assert is_indecomposable(d) == (d.n == 0 or indecomposable(d.chords))


def test_indecomposable_count_at_three():
    assert sum(1 for d in all_diagrams(3) if len(concat_factorization(d)) == 1) == 10


def test_connected_implies_indecomposable():
    for d in up_to(6):
        if is_connected(d):
            assert is_indecomposable(d)


@pytest.mark.slow
def test_connected_implies_indecomposable_n7():
    for d in all_diagrams(7):
        if is_connected(d):
            assert is_indecomposable(d)
        assert concat(*concat_factorization(d)) == d


def test_root_removal_examples():
    assert root_removal_decomposition(CROSSING) == ([SINGLE], 1)
    assert root_removal_decomposition(NESTED) == ([SINGLE], 2)
    for bad in (SINGLE, parse_diagram("1-2,3-4")):
        with pytest.raises(DomainError):
            root_removal_decomposition(bad)


def test_root_removal_round_trip():
    for d in up_to(6):
        if d.n >= 2 and is_indecomposable(d):
            assert root_insertion(*root_removal_decomposition(d)) == d


def _indecomposables(n):
    return [ChordDiagram(m) for m in _brute_indecomposable(n)]


def _brute_indecomposable(n):
    return [d.chords for d in all_diagrams(n) if indecomposable(d.chords)]


def test_root_insertion_counts_indecomposables():
    # lists of nonempty indecomposables with a marked interval in the last one
    by_size = {k: _indecomposables(k) for k in range(1, 6)}
    for n in range(1, 6):
        images = set()
        for parts in _compositions(n):
            for factors in itertools.product(*(by_size[k] for k in parts)):
                for marked in range(1, 2 * parts[-1] + 1):
                    images.add(root_insertion(list(factors), marked))
        assert len(images) == len(_brute_indecomposable(n + 1))
        assert all(is_indecomposable(e) for e in images)


def _compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first, *rest)


def test_root_component_indices_first_is_root():
    for d in up_to(5):
        if d.n:
            assert root_component_indices(d)[0] == 0
