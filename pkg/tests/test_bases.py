from itertools import product

import pytest
from hypothesis import given

from nhopf.bases import (
    basis_element,
    convert,
    extremal_leaves,
    over,
    product_in_basis,
    under,
)
from nhopf.core import LEAF, Forest, Signature, UnsupportedError, forests_up_to, full_compose, parse_forest
from nhopf.hopf import NaturalHopfAlgebra
from nhopf.lattice import between, less_equal
from nhopf.operad import AssociativeOperad, FreeOperad, MasOperad

from conftest import S_E, forests_strategy

P = parse_forest
ALG = NaturalHopfAlgebra(FreeOperad(S_E))


def test_extremal_leaves():
    assert extremal_leaves(P("c[*,a[*],*]")[0]) == [2, 3]
    assert extremal_leaves(P("b[*,a[*]]")[0]) == [2]
    assert extremal_leaves(P("c[*,*,*]")[0]) == [1, 2, 3]
    assert extremal_leaves(P("b[a[*],*]")[0]) == [1, 2]
    with pytest.raises(ValueError):
        extremal_leaves(LEAF)


def test_over_and_under():
    assert over(P("c[*,*,*]"), P("a[*] b[*,*]")) == P("c[*,*,*] a[*] b[*,*]")
    assert under(P("c[*,*,*]"), P("a[*] b[*,*]")) == P("c[a[*],b[*,*],*]")
    assert under(P("c[*,a[*],*]"), P("b[*,*] b[*,*] a[*]")) == P("c[*,a[b[*,*]],b[*,*]] a[*]")
    assert under(Forest(), P("a[*]")) == P("a[*]")
    assert under(P("a[*]"), Forest()) == P("a[*]")


def test_f_product_example_has_seven_terms():
    x = basis_element(ALG, P("c[*,*,*]"), "F")
    y = basis_element(ALG, P("a[*] b[*,*]"), "F")
    z = x * y
    assert len(z) == 7
    assert set(z) == set(between(P("c[*,*,*] a[*] b[*,*]"), P("c[a[*],b[*,*],*]")))


def test_h_product_is_a_single_term():
    x = basis_element(ALG, P("c[*,*,*]"), "H")
    y = basis_element(ALG, P("a[*] b[*,*]"), "H")
    assert dict((x * y).items()) == {P("c[a[*],b[*,*],*]"): 1}


def test_round_trips_and_triangularity():
    for f in forests_up_to(S_E, 3):
        for tag in "EFH":
            x = basis_element(ALG, f, tag)
            for target in "EFH":
                assert convert(convert(x, target), tag) == x
        ef = convert(basis_element(ALG, f, "E"), "F")
        assert ef[f] == 1 and all(less_equal(f, g) for g in ef)
        hf = convert(basis_element(ALG, f, "H"), "F")
        assert hf[f] == 1 and all(less_equal(g, f) for g in hf)


def test_bases_need_free_positive_operad():
    for op in (AssociativeOperad(), MasOperad(Signature.parse("a:2"))):
        alg = NaturalHopfAlgebra(op)
        with pytest.raises(UnsupportedError):
            convert(alg.E(alg.basis_words(1)[0]), "F")


def test_basis_mismatch():
    x = basis_element(ALG, P("a[*]"), "F")
    y = basis_element(ALG, P("a[*]"), "H")
    with pytest.raises(ValueError):
        product_in_basis(x, y)


# --- alternative readings of the under operation ----------------------------
# The product formulas only agree with the E-basis oracle for one reading:
# extremal leaves of the original last term, leftover terms appended.

def _under_recomputed(f, g):
    # recompute extremal leaves after each graft
    f, g = Forest(f), Forest(g)
    if not f or not g:
        return f + g
    last, rest = f[-1], list(g)
    while rest:
        slots = extremal_leaves(last)
        args = [LEAF] * last.arity
        args[slots[0] - 1] = rest.pop(0)
        last = full_compose(last, args)
    return f[:-1] + (last,)


def _under_all_leaves(f, g):
    # graft onto the leftmost leaves regardless of position
    f, g = Forest(f), Forest(g)
    if not f or not g:
        return f + g
    last = f[-1]
    m = min(last.arity, len(g))
    args = list(g[:m]) + [LEAF] * (last.arity - m)
    return f[:-1] + (full_compose(last, args),) + g[m:]


def _h_product_mismatches(under_fn):
    forests = forests_up_to(S_E, 2)
    bad = 0
    for f, g in product(forests, repeat=2):
        x, y = basis_element(ALG, f, "H"), basis_element(ALG, g, "H")
        oracle = convert(convert(x, "E") * convert(y, "E"), "H")
        if dict(oracle.items()) != {under_fn(f, g): 1}:
            bad += 1
    return bad


def test_alternative_under_readings_are_rejected():
    assert _h_product_mismatches(under) == 0
    assert _h_product_mismatches(_under_recomputed) > 0
    assert _h_product_mismatches(_under_all_leaves) > 0


@given(forests_strategy(S_E, 2, max_degree=3), forests_strategy(S_E, 2, max_degree=3))
def test_over_below_under(f, g):
    assert less_equal(over(f, g), under(f, g)) or not (f and g)
    assert under(f, g).degree == f.degree + g.degree


@given(*[forests_strategy(S_E, 1, max_degree=2)] * 3)
def test_f_product_associative(f, g, h):
    x, y, z = (basis_element(ALG, k, "F") for k in (f, g, h))
    assert (x * y) * z == x * (y * z)
