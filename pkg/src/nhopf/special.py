"""Specializations: word quasi-symmetric functions, decorated Connes-Kreimer
forests and the Faà di Bruno family ``FdB_{r,s}``.
"""
from __future__ import annotations

import string
from itertools import combinations, product
from typing import NamedTuple, Sequence

from .core import (
    LEAF,
    Forest,
    ParseError,
    Signature,
    Term,
    edges,
)
from .hopf import HopfElement, NaturalHopfAlgebra, Tensor, format_combination
from .linear import LinComb
from .operad import FreeOperad, MasOperad
from .quotient import MasCongruence, class_elements, e_class
from .realization import NCPolynomial, RelatedAlphabet, realize, realize_forest

# ---------------------------------------------------------------------------
# WQSym
# ---------------------------------------------------------------------------


def pack(w: Sequence) -> tuple[int, ...]:
    """Replace each letter by the number of distinct letters not exceeding it."""
    rank = {x: i + 1 for i, x in enumerate(sorted(set(w)))}
    return tuple(rank[x] for x in w)


def is_packed(u: Sequence[int]) -> bool:
    return set(u) == set(range(1, len(set(u)) + 1))


def format_packed(u: Sequence[int]) -> str:
    if all(x <= 9 for x in u):
        return "".join(map(str, u))
    return ",".join(map(str, u))


def parse_packed(text: str) -> tuple[int, ...]:
    text = text.strip()
    try:
        if "," in text:
            u = tuple(int(x) for x in text.split(","))
        else:
            u = tuple(int(c) for c in text)
    except ValueError:
        raise ParseError(f"expected a word of positive integers, got {text!r}", text, 0) from None
    if any(x < 1 for x in u):
        raise ParseError("letters must be positive", text, 0)
    return u


class WQSymElement(LinComb):
    """Linear combination of ``M_u`` indexed by packed words."""

    __slots__ = ()

    def sort_key(self, key):
        return (len(key), key)

    def __str__(self):
        return format_combination([(c, f"M_{{{format_packed(u)}}}") for u, c in self.sorted_items()])

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "terms": [{"packed_word": format_packed(u), "coeff": str(c)} for u, c in self.sorted_items()],
        }


def wqsym_compatible(u: Sequence[int], f: Sequence[Term]) -> bool:
    """``u ⊢ f``: right length and strictly increasing along every edge."""
    if not is_packed(u):
        raise ValueError(f"{format_packed(u)} is not a packed word")
    if len(u) != Forest(f).degree:
        return False
    return all(u[i - 1] < u[k - 1] for i, _, k in edges(f))


def _increasing_words(f: Sequence[Term], top: int) -> list[tuple[int, ...]]:
    n = Forest(f).degree
    parent = {k: i for i, _, k in edges(f)}
    out, w = [], [0] * n

    def fill(i: int):
        if i == n:
            out.append(tuple(w))
            return
        lo = w[parent[i + 1] - 1] + 1 if i + 1 in parent else 1
        for x in range(lo, top + 1):
            w[i] = x
            fill(i + 1)

    fill(0)
    return out


def wqsym_expansion(f: Sequence[Term]) -> WQSymElement:
    """``E_f = Σ_{u ⊢ f} M_u``."""
    n = Forest(f).degree
    return WQSymElement({u: 1 for u in _increasing_words(f, n) if is_packed(u)})


def wqsym_realize(u: Sequence[int], alphabet: Sequence) -> NCPolynomial:
    """``Σ w`` over words on the ordered ``alphabet`` whose packing is ``u``."""
    u = tuple(u)
    if not is_packed(u):
        raise ValueError(f"{format_packed(u)} is not a packed word")
    k = max(u, default=0)
    return NCPolynomial({tuple(sub[x - 1] for x in u): 1 for sub in combinations(alphabet, k)})


def wqsym_realize_element(x: WQSymElement, alphabet: Sequence) -> NCPolynomial:
    out: dict = {}
    for u, c in x.items():
        for w, m in wqsym_realize(u, alphabet).items():
            out[w] = out.get(w, 0) + c * m
    return NCPolynomial(out)


def levels_alphabet(sig: Signature, bound: int) -> RelatedAlphabet:
    """``A_N`` truncated to ``1 < ... < bound``: all roots, every decoration, edges on strict increase."""
    letters = list(range(1, bound + 1))
    adj = {None: {i: [k for k in letters if k > i] for i in letters}}
    return RelatedAlphabet(letters, letters, {g: letters for g in sig.names}, adj)


# ---------------------------------------------------------------------------
# Noncommutative Connes-Kreimer on decorated forests
# ---------------------------------------------------------------------------


class DTree(NamedTuple):
    """Planar rooted tree with decorated vertices and no leaves."""

    label: str
    children: tuple = ()

    def __str__(self):
        if not self.children:
            return self.label
        return f"{self.label}({','.join(map(str, self.children))})"

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)


def format_dforest(F: Sequence[DTree]) -> str:
    return " ".join(map(str, F)) if F else "ε"


def sd_name(d: str, n: int) -> str:
    return f"{d}_{n}"


def sd_split(name: str) -> tuple[str, int]:
    d, _, n = name.rpartition("_")
    if not d or not n.isdigit():
        raise ValueError(f"{name!r} is not a generator d_n")
    return d, int(n)


def sd_signature(D: Sequence[str], max_arity: int) -> Signature:
    """``S_D`` truncated to generators ``d_n`` with ``n <= max_arity``."""
    return Signature(tuple((sd_name(d, n), n) for d in D for n in range(max_arity + 1)))


def _to_dtree(t: Term, strict: bool) -> DTree:
    if t.is_leaf:
        raise ValueError("leaves have no decorated counterpart")
    d, n = sd_split(t.label)
    if n != len(t.children):
        raise ValueError(f"node {t.label} has {len(t.children)} children")
    kids = []
    for c in t.children:
        if c.is_leaf:
            if strict:
                raise ValueError(f"term {t} has a leaf; it is not leafless")
            continue
        kids.append(_to_dtree(c, strict))
    return DTree(d, tuple(kids))


def nck_bijection(f: Sequence[Term]) -> tuple[DTree, ...]:
    """Leafless ``S_D``-forest to decorated forest (``d_n`` node ↦ ``d`` vertex)."""
    return tuple(_to_dtree(t, True) for t in f)


def nck_forget(f: Sequence[Term]) -> tuple[DTree, ...]:
    """Like :func:`nck_bijection` but dropping leaves instead of refusing them."""
    return tuple(_to_dtree(t, False) for t in f)


def _from_dtree(t: DTree) -> Term:
    return Term(sd_name(t.label, len(t.children)), [_from_dtree(c) for c in t.children])


def nck_inverse(F: Sequence[DTree]) -> Forest:
    return Forest(_from_dtree(t) for t in F)


def decorated_forests(D: Sequence[str], vertices: int) -> list[tuple[DTree, ...]]:
    """All decorated forests with exactly ``vertices`` vertices."""
    trees: dict[int, list[DTree]] = {}

    def seqs(n: int) -> list[tuple[DTree, ...]]:
        if n == 0:
            return [()]
        return [(t,) + rest for k in range(1, n + 1) for t in trees_of(k) for rest in seqs(n - k)]

    def trees_of(n: int) -> list[DTree]:
        if n not in trees:
            trees[n] = [DTree(d, kids) for d in D for kids in seqs(n - 1)]
        return trees[n]

    return seqs(vertices)


class NCKTensor(LinComb):
    __slots__ = ()

    def sort_key(self, key):
        return tuple(tuple(str(t) for t in leg) for leg in key)

    def __str__(self):
        return format_combination(
            [(c, " ⊗ ".join(f"[{format_dforest(leg)}]" for leg in k)) for k, c in self.sorted_items()])


def _tree_cuts(t: DTree) -> list[tuple[DTree | None, tuple[DTree, ...]]]:
    # (trunk, crown): the trunk is a root-containing subtree or None
    out: list = [(None, (t,))]
    for choice in product(*(_tree_cuts(c) for c in t.children)):
        trunk = DTree(t.label, tuple(tr for tr, _ in choice if tr is not None))
        crown = tuple(x for _, cr in choice for x in cr)
        out.append((trunk, crown))
    return out


def nck_coproduct(F: Sequence[DTree]) -> NCKTensor:
    """Admissible-cut coproduct: trunks on the left, crowns on the right."""
    acc = {((), ()): 1}
    for t in F:
        nxt: dict = {}
        for (l, r), c in acc.items():
            for trunk, crown in _tree_cuts(t):
                k = (l + ((trunk,) if trunk else ()), r + crown)
                nxt[k] = nxt.get(k, 0) + c
        acc = nxt
    return NCKTensor(acc)


def nck_transported_coproduct(F: Sequence[DTree]) -> NCKTensor:
    """``Δ E_f`` in the free natural Hopf algebra, carried back to decorated forests."""
    D = sorted({t.label for t in _vertices(F)})
    arity = max((len(t.children) for t in _vertices(F)), default=0)
    alg = NaturalHopfAlgebra(FreeOperad(sd_signature(D, arity)))
    t = alg.coproduct(alg.E(nck_inverse(F)))
    out: dict = {}
    for (u, v), c in t.items():
        k = (nck_forget(u), nck_bijection(v))
        out[k] = out.get(k, 0) + c
    return NCKTensor(out)


def _vertices(F: Sequence[DTree]):
    for t in F:
        yield t
        yield from _vertices(t.children)


def decorated_alphabet(D: Sequence[str], bound: int) -> RelatedAlphabet:
    """``A_{D,N}`` truncated at index ``bound``: letters ``d:i``, all roots, strict index increase."""
    letters = [f"{d}:{i}" for i in range(1, bound + 1) for d in D]
    level = {f"{d}:{i}": i for i in range(1, bound + 1) for d in D}
    adj = {None: {a: [b for b in letters if level[b] > level[a]] for a in letters}}
    decorations = {d: [f"{d}:{i}" for i in range(1, bound + 1)] for d in D}
    return RelatedAlphabet(letters, letters, decorations, adj,
                           decoration_key=lambda g: sd_split(g)[0])


# ---------------------------------------------------------------------------
# Faà di Bruno family
# ---------------------------------------------------------------------------


class FdB:
    """``FdB_{r,s}``: class sums of the multiset congruence on ``s`` generators of arity ``r + 1``."""

    def __init__(self, r: int, s: int):
        if r < 0 or s < 0:
            raise ValueError("FdB_{r,s} needs r >= 0 and s >= 0")
        if s > len(string.ascii_lowercase):
            raise ValueError("at most 26 generators are supported")
        self.r, self.s = r, s
        self.signature = Signature(tuple((g, r + 1) for g in string.ascii_lowercase[:s]))
        self.congruence = MasCongruence(self.signature)
        self.free = NaturalHopfAlgebra(FreeOperad(self.signature))
        self.operad = MasOperad(self.signature)
        self.quotient = NaturalHopfAlgebra(self.operad)

    def __repr__(self):
        return f"FdB(r={self.r}, s={self.s})"

    def parse(self, text: str) -> tuple:
        return self.operad.parse_word(text)

    def representative(self, word: Sequence) -> Forest:
        """A forest in the class of a word of multisets (each multiset as a left comb)."""
        terms = []
        for x in word:
            letters = list(x.letters)
            t = Term(letters[-1], [LEAF] * (self.r + 1))
            for g in reversed(letters[:-1]):
                t = Term(g, [t] + [LEAF] * self.r)
            terms.append(t)
        return Forest(terms)

    def expand(self, word: Sequence) -> HopfElement:
        """The class sum ``E_[f]`` in the free natural Hopf algebra."""
        return e_class(self.free, self.representative(word), self.congruence)

    def level_alphabet(self, bound: int) -> RelatedAlphabet:
        """``A_{S,N}`` truncated at ``bound``: letters ``g:i``, all roots, strict index increase."""
        names = self.signature.names
        letters = [f"{g}:{i}" for i in range(1, bound + 1) for g in names]
        level = {a: int(a.rpartition(":")[2]) for a in letters}
        adj = {None: {a: [b for b in letters if level[b] > level[a]] for a in letters}}
        return RelatedAlphabet(letters, letters,
                               {g: [f"{g}:{i}" for i in range(1, bound + 1)] for g in names}, adj)

    def realize(self, word: Sequence, bound: int) -> NCPolynomial:
        return realize(self.expand(word), self.level_alphabet(bound))

    def regroup(self, word: Sequence, bound: int) -> list[tuple[int, Forest, NCPolynomial]]:
        """Group class members by equal realization: ``(count, representative, polynomial)``."""
        A = self.level_alphabet(bound)
        groups: dict[NCPolynomial, list[Forest]] = {}
        for f in class_elements(self.representative(word), self.congruence):
            groups.setdefault(realize_forest(f, A), []).append(f)
        out = [(len(fs), fs[0], p) for p, fs in groups.items()]
        out.sort(key=lambda x: (-x[0], x[1].sort_key))
        return out

    def coproduct(self, word: Sequence) -> Tensor:
        return self.quotient.word_coproduct(tuple(word))

    def basis_words(self, degree: int) -> list[tuple]:
        return self.quotient.basis_words(degree)


def fdb_construct(r: int, s: int) -> FdB:
    return FdB(r, s)
