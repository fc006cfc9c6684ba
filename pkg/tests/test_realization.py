import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from nhopf.core import Signature, edges, forests_up_to, nodes, parse_forest
from nhopf.hopf import NaturalHopfAlgebra
from nhopf.operad import AssociativeOperad, FreeOperad
from nhopf.realization import (
    NCPolynomial,
    RelatedAlphabet,
    canonical_alphabet,
    canonical_letter,
    compatible,
    compatible_words,
    disjoint_sum,
    doubling_holds,
    parse_canonical_letter,
    random_alphabet,
    realize,
    realize_forest,
    tag,
    theta_split,
)
from nhopf.special import levels_alphabet

from conftest import FIG_FOREST, S_E

P = parse_forest
ALG = NaturalHopfAlgebra(FreeOperad(S_E))


def test_levels_alphabet_compatibility():
    f = P(FIG_FOREST)
    A = levels_alphabet(S_E, 7)
    assert compatible((1, 2, 2, 3, 1, 2, 3), f, A)
    assert not compatible((2, 2, 2, 3, 1, 2, 3), f, A)
    assert not compatible((1, 2, 2), f, A)
    words = compatible_words(f, A)
    assert (1, 2, 2, 3, 1, 2, 3) in words
    assert all(compatible(w, f, A) for w in words)


def test_canonical_letters():
    assert canonical_letter("g", (0, 1, 0)) == "g:0.1.0"
    assert parse_canonical_letter("g:0.1.0") == ("g", (0, 1, 0))
    assert parse_canonical_letter("g:") == ("g", ())


def test_canonical_realization_of_a_chain():
    sig = Signature.parse("a:1")
    alg = NaturalHopfAlgebra(FreeOperad(sig))
    C = canonical_alphabet(sig, 1, 3)
    p = realize(alg.parse("a[a[*]]"), C)
    zeros = lambda n: (0,) * n
    expected = {
        (canonical_letter("a", zeros(l1)), canonical_letter("a", zeros(l1) + (1,) + zeros(l2)))
        for l1 in range(4) for l2 in range(4) if l1 + 1 + l2 <= 3
    }
    assert set(p) == expected and len(expected) == 6


def _canonical_oracle(f, max_len):
    # each root gets 0^l, each child its parent's address, its slot, then 0^l
    info = nodes(f)
    parent_slot = {k: (i, j) for i, j, k in edges(f)}
    out = set()
    for lengths in product(range(max_len + 1), repeat=len(info)):
        addr, ok = {}, True
        for n in info:
            base = () if n.id not in parent_slot else addr[parent_slot[n.id][0]] + (parent_slot[n.id][1],)
            addr[n.id] = base + (0,) * lengths[n.id - 1]
            if len(addr[n.id]) > max_len:
                ok = False
                break
        if ok:
            out.add(tuple(canonical_letter(n.label, addr[n.id]) for n in info))
    return out


@pytest.mark.parametrize("forest", ["c[a[*],*,b[*,*]]", "b[*,a[*]] a[*]", "a[b[*,*]] c[*,*,*]"])
def test_canonical_realization_matches_address_oracle(forest):
    f = P(forest)
    C = canonical_alphabet(S_E, 3, 3)
    assert set(realize_forest(f, C)) == _canonical_oracle(f, 3)


def test_canonical_alphabet_separates_degree_two():
    C = canonical_alphabet(S_E, 3, 2)
    polys = [realize_forest(f, C) for f in forests_up_to(S_E, 2)]
    assert len(set(polys)) == len(polys)


def test_disjoint_sum_structure():
    A = tag(levels_alphabet(S_E, 2), "L")
    B = tag(levels_alphabet(S_E, 2), "R")
    S = disjoint_sum(A, B)
    assert len(S) == 4
    assert S.related(2, ("L", 2), ("R", 1))
    assert not S.related(2, ("R", 2), ("L", 1))
    assert disjoint_sum(A, RelatedAlphabet([])).letters == A.letters
    with pytest.raises(ValueError):
        disjoint_sum(A, A)


def test_theta_split():
    A = RelatedAlphabet(["x"], ["x"])
    B = RelatedAlphabet(["y"], ["y"])
    p = NCPolynomial({("x", "y", "x"): 2, ("y",): 1})
    assert dict(theta_split(p, A, B).items()) == {(("x", "x"), ("y",)): 2, ((), ("y",)): 1}
    with pytest.raises(ValueError):
        theta_split(NCPolynomial({("z",): 1}), A, B)


def test_alphabet_json_roundtrip(tmp_path):
    rng = random.Random(3)
    A = random_alphabet(rng, S_E, 4)
    B = RelatedAlphabet.from_json(A.to_json())
    for f in forests_up_to(S_E, 2):
        assert realize_forest(f, A) == realize_forest(f, B)
    L = levels_alphabet(S_E, 3)
    path = tmp_path / "levels.json"
    L.save(path)
    L2 = RelatedAlphabet.load(path)
    assert L2.letters == L.letters
    assert realize_forest(P(FIG_FOREST), L2) == realize_forest(P(FIG_FOREST), L)


def test_alphabet_rejects_unknown_letters():
    with pytest.raises(ValueError):
        RelatedAlphabet(["x"], ["y"])


def test_realize_requires_free_operad_and_e_basis():
    As = NaturalHopfAlgebra(AssociativeOperad())
    with pytest.raises(ValueError):
        realize(As.parse("alpha_2"), levels_alphabet(S_E, 2))
    with pytest.raises(ValueError):
        realize(ALG.parse("a[*]", "F"), levels_alphabet(S_E, 2))


def test_realize_unit_and_grading():
    A = levels_alphabet(S_E, 3)
    assert realize(ALG.one(), A) == NCPolynomial({(): 1})
    p = realize(ALG.parse("b[*,a[*]] a[*]"), A)
    assert p.degrees() == {3}


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_doubling_on_random_pairs(seed):
    rng = random.Random(seed)
    A = random_alphabet(rng, S_E, rng.randint(1, 3), "p")
    B = random_alphabet(rng, S_E, rng.randint(1, 3), "q")
    for f in forests_up_to(S_E, 2):
        assert doubling_holds(ALG, f, A, B)


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_realization_is_multiplicative(seed):
    rng = random.Random(seed)
    A = random_alphabet(rng, S_E, 3)
    fs = forests_up_to(S_E, 2)
    f, g = rng.choice(fs), rng.choice(fs)
    assert realize(ALG.E(f) * ALG.E(g), A) == realize(ALG.E(f), A) * realize(ALG.E(g), A)
