import json
from collections import deque
from functools import lru_cache
from itertools import product

import pytest
from hypothesis import given

from nhopf.core import (
    Forest,
    Signature,
    UnsupportedError,
    forests_up_to,
    forests_with_word,
    parse_forest,
    preorder_decorations,
)
from nhopf.lattice import (
    Interval,
    LatticeError,
    between,
    covers,
    hasse_export,
    interval,
    less_equal,
    lower_set,
    moebius,
    mobius_downward,
    mobius_upward,
    upper_set,
)

from conftest import S_E, forests_strategy

P = parse_forest


@lru_cache(maxsize=None)
def _reach(f: Forest) -> frozenset:
    seen, queue = {f}, deque([f])
    while queue:
        g = queue.popleft()
        for h in covers(g):
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return frozenset(seen)


@lru_cache(maxsize=None)
def _mu(f, g):
    # textbook recursion on the reachability order
    if f == g:
        return 1
    if g not in _reach(f):
        return 0
    return -sum(_mu(f, h) for h in _reach(f) if h != g and g in _reach(h))


def test_covers_of_small_forests():
    assert covers(P("a[*] a[*]")) == [P("a[a[*]]")]
    assert covers(P("b[*,*] a[*]")) == [P("b[*,a[*]]")]
    # case (a) needs the brother to the left; a leftmost child has none
    assert covers(P("b[a[*],*]")) == []
    assert covers(P("b[*,a[*]]")) == [P("b[a[*],*]")]
    assert covers(P("c[*,*,*] a[*] b[*,*]")) == [P("c[*,*,*] a[b[*,*]]"), P("c[*,*,a[*]] b[*,*]")]


def test_cover_into_deep_rightmost_leaf():
    assert covers(P("b[*,b[*,*]] a[*]")) == [P("b[*,b[*,a[*]]]"), P("b[b[*,*],*] a[*]")]


def test_covers_refuse_nullary_rightmost():
    sig = Signature.parse("z:0,b:2")
    with pytest.raises(UnsupportedError):
        covers(parse_forest("z[] z[]", sig))


def test_cab_interval_shape():
    iv = interval(S_E, "cab")
    assert (len(iv), len(iv.cover_pairs), iv.word_class_size) == (11, 14, 11)
    assert iv.bottom == P("c[*,*,*] a[*] b[*,*]")
    assert iv.top == P("c[a[b[*,*]],*,*]")
    assert iv.moebius(iv.bottom, iv.top) == 0
    assert iv.meet(iv.top, iv.top) == iv.top


def test_small_intervals():
    iv = interval(S_E, "aa")
    assert (len(iv), len(iv.cover_pairs)) == (2, 1)
    iv = interval(S_E, "a")
    assert (len(iv), len(iv.cover_pairs)) == (1, 0)
    assert iv.bottom == iv.top == P("a[*]")


@pytest.mark.parametrize("length", [1, 2, 3])
def test_word_class_is_the_whole_interval(length):
    # the bottom and top forests are the extremes of their decoration class
    for word in product(S_E.names, repeat=length):
        iv = Interval(S_E, word)
        assert len(iv) == iv.word_class_size
        assert set(iv.elements) == set(forests_with_word(S_E, word))


def test_interval_errors():
    iv = interval(S_E, "cab")
    with pytest.raises(LatticeError):
        iv.leq(P("a[*]"), iv.top)
    with pytest.raises(LatticeError):
        iv.moebius(iv.top, iv.bottom)
    with pytest.raises(ValueError):
        interval(S_E, "")
    with pytest.raises(ValueError):
        interval(S_E, "x")


def test_hasse_exports():
    iv = interval(S_E, "cab")
    dot = hasse_export(iv, "dot")
    assert dot.splitlines()[0] == "// format_version 1"
    assert dot.count("->") == 14
    data = json.loads(hasse_export(iv, "json"))
    assert data["format_version"] == 1
    assert len(data["nodes"]) == 11 and len(data["edges"]) == 14
    assert data["word_class_size"] == 11
    with pytest.raises(ValueError):
        hasse_export(iv, "svg")


def test_order_matches_reachability_exhaustively():
    forests = [f for f in forests_up_to(S_E, 3) if f]
    for f in forests:
        ups = set(upper_set(f))
        assert ups == _reach(f)
        for g in ups:
            assert less_equal(f, g)
            assert f in lower_set(g)


@pytest.mark.parametrize("word", ["cab", "bb", "cba", "abc", "ccb"])
def test_moebius_matches_recursion(word):
    iv = interval(S_E, word)
    for f in iv.elements:
        up = mobius_upward(f)
        for g in iv.elements:
            if iv.leq(f, g):
                assert iv.moebius(f, g) == moebius(f, g) == up.get(g, 0) == _mu(f, g)
                assert mobius_downward(g).get(f, 0) == up.get(g, 0)


@given(forests_strategy(S_E, 3, max_degree=5))
def test_covers_are_strict_and_preserve_the_word(f):
    for g in covers(f):
        assert g != f and g.degree == f.degree
        assert preorder_decorations(g) == preorder_decorations(f)
        assert less_equal(f, g) and not less_equal(g, f)


@given(forests_strategy(S_E, 2, max_degree=4))
def test_between_is_an_interval(f):
    ups = upper_set(f)
    g = ups[-1]
    seg = between(f, g)
    assert f in seg and g in seg
    assert all(less_equal(f, h) and less_equal(h, g) for h in seg)
