from collections import Counter
from itertools import product

import pytest
from hypothesis import given, strategies as st

from nhopf.core import ArityError, ParseError, Signature, UnsupportedError, parse_term
from nhopf.operad import AssociativeOperad, AsElement, FreeOperad, MasOperad

from conftest import S_E, terms_strategy

SMALL = Signature.parse("a:1,b:2")


def _brute_factorizations(op, x, max_arity):
    """Every (y, w) with compose(y, w) == x, by exhaustive search.

    In a positive signature every argument has arity at least 1, so
    ``y.arity <= x.arity`` bounds the search.
    """
    pool = [z for d in range(x.degree + 1) for z in op.elements(d)]
    found = Counter()
    for y in pool:
        if y.arity > max_arity:
            continue
        for w in product(pool, repeat=y.arity):
            if y.degree + sum(z.degree for z in w) != x.degree:
                continue
            if op.compose(y, list(w)) == x:
                found[(y, tuple(w))] += 1
    return found


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_free_factorizations_match_brute_force(degree):
    op = FreeOperad(SMALL)
    for x in op.elements(degree):
        got = Counter((y, w) for y, w in op.factorizations(x))
        assert got == _brute_factorizations(op, x, x.arity)


def test_free_factorizations_are_prefixes():
    op = FreeOperad(S_E)
    x = parse_term("b[a[*],*]")
    got = {(y.key, tuple(z.key for z in w)) for y, w in op.factorizations(x)}
    assert got == {
        ("*", ("b[a[*],*]",)),
        ("b[*,*]", ("a[*]", "*")),
        ("b[a[*],*]", ("*", "*")),
    }
    # one factorization per parent-closed set of internal nodes, plus the empty one
    assert len(op.factorizations(parse_term("c[a[*],b[*,*],*]"))) == 5


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_mas_factorizations_match_brute_force(degree):
    op = MasOperad(SMALL)
    for x in op.elements(degree):
        got = Counter((y, w) for y, w in op.factorizations(x))
        assert got == _brute_factorizations(op, x, x.arity)


def test_as_factorizations():
    op = AssociativeOperad()
    a4 = op.parse_element("alpha_4")
    fs = op.factorizations(a4)
    # compositions of 4: 2^3 of them
    assert len(fs) == 8
    assert all(op.compose(y, w) == a4 for y, w in fs)
    assert op.compose(AsElement(2), [AsElement(1), AsElement(3)]) == a4
    assert op.parse_element("α3") == AsElement(3)


def test_as_rejects():
    op = AssociativeOperad()
    with pytest.raises(ParseError):
        op.parse_element("alpha_0")
    with pytest.raises(ArityError):
        op.compose(AsElement(2), [AsElement(1)])
    with pytest.raises(TypeError):
        op.factorizations(parse_term("a[*]"))


def test_mas_elements_and_arity():
    op = MasOperad(Signature.parse("a:2,b:3"))
    x = op.parse_element("{b, a,a}")
    assert x.key == "{a,a,b}"
    assert x.arity == 2 + 2 + 3 - 3 + 1
    assert op.unit.arity == 1 and op.unit.is_unit
    assert op.compose(op.parse_element("{a}"), [op.parse_element("{b}"), op.unit]) == \
        op.parse_element("{a,b}")
    assert op.parse_word("{a,b} {a}") == (op.parse_element("{a,b}"), op.parse_element("{a}"))
    with pytest.raises(ParseError):
        op.parse_element("{z}")
    with pytest.raises(ParseError):
        op.parse_word("{a} junk")


def test_mas_refuses_non_positive():
    op = MasOperad(Signature.parse("z:0,b:2"))
    with pytest.raises(UnsupportedError):
        op.factorizations(op.parse_element("{b}"))


def test_mas_on_one_binary_generator_is_as():
    op = MasOperad(Signature.parse("a:2"))
    As = AssociativeOperad()
    for d in range(5):
        (x,) = op.elements(d)
        assert x.arity == d + 1
        assert len(op.factorizations(x)) == len(As.factorizations(AsElement(d + 1)))


def test_word_parsing():
    op = FreeOperad(S_E)
    assert op.parse_word("ε") == ()
    assert op.format_word(()) == "ε"
    As = AssociativeOperad()
    assert As.format_word(As.parse_word("alpha_2 alpha_3")) == "alpha_2 alpha_3"
    with pytest.raises(ParseError) as info:
        As.parse_word("alpha_2 beta")
    assert info.value.pos == 8


@given(terms_strategy(S_E, 5))
def test_free_factorizations_recompose(x):
    op = FreeOperad(S_E)
    fs = op.factorizations(x)
    assert len(set(fs)) == len(fs)
    for y, w in fs:
        assert op.compose(y, list(w)) == x
        assert y.degree + sum(z.degree for z in w) == x.degree


@given(st.lists(st.sampled_from("ab"), max_size=4))
def test_mas_factorizations_recompose(letters):
    op = MasOperad(SMALL)
    x = op.element(letters)
    for y, w in op.factorizations(x):
        assert op.compose(y, list(w)) == x
