"""Polynomial realizations over forest-like related alphabets.

A related alphabet carries a root set ``R``, a decoration set ``D_g`` for
every generator and a binary relation ``⇢_j`` for every slot index ``j``.
A word ``w`` is compatible with a forest ``f`` when ``w_i`` satisfies the
root, decoration and edge constraints of node ``i``; ``E_f`` realizes to the
sum of its compatible words.

Edge relations are stored as adjacency maps keyed by ``j``; the key ``None``
(``"*"`` in JSON) holds pairs related for every ``j``.
"""
from __future__ import annotations

import json
import random
from itertools import product as iproduct
from pathlib import Path
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .core import Forest, Signature, Term, edges, nodes
from .hopf import HopfElement, NaturalHopfAlgebra, Tensor
from .linear import LinComb
from .operad import FreeOperad

Letter = Hashable


def letter_sort_key(x: Letter):
    if isinstance(x, int):
        return (0, x, "")
    if isinstance(x, tuple):
        return (1, 0, repr(tuple(letter_sort_key(y) for y in x)))
    return (2, 0, str(x))


class NCPolynomial(LinComb):
    """Noncommutative polynomial; keys are tuples of letters."""

    __slots__ = ()

    def sort_key(self, key):
        return (len(key), tuple(letter_sort_key(x) for x in key))

    def __mul__(self, other: "NCPolynomial") -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.items():
            for w2, c2 in other.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return NCPolynomial(out)

    def degrees(self) -> set[int]:
        return {len(w) for w in self}

    def __str__(self) -> str:
        from .hopf import format_combination
        return format_combination(
            [(c, " ".join(map(str, w)) if w else "1") for w, c in self.sorted_items()])

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "monomials": [{"word": [str(x) for x in w], "coeff": str(c)}
                          for w, c in self.sorted_items()],
        }


class PolyTensor(LinComb):
    """Tensor of polynomials; keys are pairs of words."""

    __slots__ = ()

    def sort_key(self, key):
        return tuple((len(w), tuple(letter_sort_key(x) for x in w)) for w in key)


class RelatedAlphabet:
    """Letters with root set, decoration sets and slot-indexed edge relations."""

    def __init__(
        self,
        letters: Iterable[Letter],
        roots: Iterable[Letter] = (),
        decorations: Mapping[str, Iterable[Letter]] | None = None,
        edges: Mapping[int | None, Mapping[Letter, Iterable[Letter]]] | None = None,
        decoration_key: Callable[[str], str] | None = None,
    ):
        self.letters: tuple = tuple(dict.fromkeys(letters))
        letter_set = set(self.letters)
        self.roots = frozenset(roots)
        self.decorations = {g: frozenset(v) for g, v in (decorations or {}).items()}
        self.edges: dict = {}
        for j, adj in (edges or {}).items():
            self.edges[j] = {a: frozenset(bs) for a, bs in adj.items() if bs}
        self.decoration_key = decoration_key
        used = set(self.roots).union(*self.decorations.values())
        for adj in self.edges.values():
            for a, bs in adj.items():
                used.add(a)
                used |= bs
        stray = used - letter_set
        if stray:
            raise ValueError(f"relations mention unknown letters: {sorted(map(str, stray))}")

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return f"RelatedAlphabet({len(self.letters)} letters)"

    def allowed(self, g: str) -> frozenset:
        key = self.decoration_key(g) if self.decoration_key else g
        return self.decorations.get(key, frozenset())

    def successors(self, j: int, a: Letter) -> frozenset:
        out = self.edges.get(j, {}).get(a, frozenset())
        anyj = self.edges.get(None)
        if anyj:
            out = out | anyj.get(a, frozenset())
        return out

    def related(self, j: int, a: Letter, b: Letter) -> bool:
        return b in self.successors(j, a)

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, (str, int)):
                return x
            raise TypeError(f"letter {x!r} is not JSON-serializable")

        ordered = lambda s: sorted(s, key=letter_sort_key)
        return {
            "format_version": 1,
            "letters": [enc(x) for x in self.letters],
            "roots": [enc(x) for x in ordered(self.roots)],
            "decorations": {g: [enc(x) for x in ordered(v)] for g, v in sorted(self.decorations.items())},
            "edges": {
                ("*" if j is None else str(j)): [[enc(a), enc(b)] for a in ordered(adj) for b in ordered(adj[a])]
                for j, adj in sorted(self.edges.items(), key=lambda kv: -1 if kv[0] is None else kv[0])
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "RelatedAlphabet":
        try:
            letters = data["letters"]
            adj: dict = {}
            for j, pairs in data.get("edges", {}).items():
                key = None if j == "*" else int(j)
                for a, b in pairs:
                    adj.setdefault(key, {}).setdefault(a, set()).add(b)
            return cls(letters, data.get("roots", []), data.get("decorations", {}), adj)
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed alphabet description: {e}") from None

    @classmethod
    def load(cls, path: str | Path) -> "RelatedAlphabet":
        return cls.from_json(json.loads(Path(path).read_text()))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")


# ---------------------------------------------------------------------------
# Compatibility and realization
# ---------------------------------------------------------------------------

def compatible(w: Sequence[Letter], f: Sequence[Term], A: RelatedAlphabet) -> bool:
    info = nodes(f)
    if len(w) != len(info):
        return False
    for n in info:
        x = w[n.id - 1]
        if n.parent == 0 and x not in A.roots:
            return False
        if x not in A.allowed(n.label):
            return False
    return all(A.related(j, w[i - 1], w[k - 1]) for i, j, k in edges(f))


def compatible_words(f: Sequence[Term], A: RelatedAlphabet) -> list[tuple]:
    """All ``f``-compatible words, built node by node in preorder."""
    info = nodes(f)
    out: list[tuple] = []
    order = {x: i for i, x in enumerate(A.letters)}
    cands = []
    for n in info:
        base = A.allowed(n.label)
        if n.parent == 0:
            base = base & A.roots
        cands.append(sorted(base, key=order.__getitem__))
    w: list = [None] * len(info)

    def fill(i: int):
        if i == len(info):
            out.append(tuple(w))
            return
        n = info[i]
        if n.parent == 0:
            options = cands[i]
        else:
            succ = A.successors(n.slot, w[n.parent - 1])
            options = [x for x in cands[i] if x in succ]
        for x in options:
            w[i] = x
            fill(i + 1)
        w[i] = None

    fill(0)
    return out


def realize_forest(f: Sequence[Term], A: RelatedAlphabet) -> NCPolynomial:
    return NCPolynomial({w: 1 for w in compatible_words(f, A)})


def realize(x: HopfElement, A: RelatedAlphabet) -> NCPolynomial:
    """``r_A`` applied to an ``E``-basis element of a free natural Hopf algebra."""
    if x.basis != "E":
        raise ValueError("realize needs an E-basis element")
    if not isinstance(x.algebra.operad, FreeOperad):
        raise ValueError("realize needs the free operad instance")
    out: dict = {}
    for f, c in x.items():
        for w in compatible_words(f, A):
            out[w] = out.get(w, 0) + c
    return NCPolynomial(out)


# ---------------------------------------------------------------------------
# Disjoint sums and the theta split
# ---------------------------------------------------------------------------

def relabel(A: RelatedAlphabet, fn: Callable[[Letter], Letter]) -> RelatedAlphabet:
    m = {x: fn(x) for x in A.letters}
    if len(set(m.values())) != len(m):
        raise ValueError("relabeling is not injective")
    return RelatedAlphabet(
        [m[x] for x in A.letters],
        [m[x] for x in A.roots],
        {g: [m[x] for x in v] for g, v in A.decorations.items()},
        {j: {m[a]: [m[b] for b in bs] for a, bs in adj.items()} for j, adj in A.edges.items()},
        A.decoration_key,
    )


def tag(A: RelatedAlphabet, t) -> RelatedAlphabet:
    """Rename every letter ``x`` to ``(t, x)`` so that sums become disjoint."""
    return relabel(A, lambda x: (t, x))


def disjoint_sum(A: RelatedAlphabet, B: RelatedAlphabet) -> RelatedAlphabet:
    """``A ⧺ B``: the union, plus ``a ⇢_j r`` for every letter ``a`` of ``A`` and root ``r`` of ``B``."""
    common = set(A.letters) & set(B.letters)
    if common:
        raise ValueError(f"alphabets share letters {sorted(map(str, common))}; use tag()")
    if A.decoration_key is not B.decoration_key and A.letters and B.letters:
        raise ValueError("alphabets use different decoration keys")
    decorations = {g: set(v) for g, v in A.decorations.items()}
    for g, v in B.decorations.items():
        decorations.setdefault(g, set()).update(v)
    adj: dict = {}
    for src in (A.edges, B.edges):
        for j, m in src.items():
            for a, bs in m.items():
                adj.setdefault(j, {}).setdefault(a, set()).update(bs)
    if B.roots:
        for a in A.letters:
            adj.setdefault(None, {}).setdefault(a, set()).update(B.roots)
    return RelatedAlphabet(A.letters + B.letters, A.roots | B.roots, decorations, adj,
                           A.decoration_key or B.decoration_key)


def theta_split(p: NCPolynomial, A: RelatedAlphabet, B: RelatedAlphabet) -> PolyTensor:
    """``w ↦ w|A ⊗ w|B`` extended linearly."""
    in_a, in_b = set(A.letters), set(B.letters)
    out: dict = {}
    for w, c in p.items():
        left = tuple(x for x in w if x in in_a)
        right = tuple(x for x in w if x in in_b)
        if len(left) + len(right) != len(w):
            raise ValueError(f"word {w} uses letters outside both alphabets")
        out[(left, right)] = out.get((left, right), 0) + c
    return PolyTensor(out)


def realize_tensor(t: Tensor, A: RelatedAlphabet, B: RelatedAlphabet) -> PolyTensor:
    """``(r_A ⊗ r_B)`` applied to a two-leg tensor of ``E``-words."""
    out: dict = {}
    for (u, v), c in t.items():
        for wu in compatible_words(u, A):
            for wv in compatible_words(v, B):
                out[(wu, wv)] = out.get((wu, wv), 0) + c
    return PolyTensor(out)


def doubling_holds(alg: NaturalHopfAlgebra, f: Sequence[Term], A: RelatedAlphabet,
                   B: RelatedAlphabet) -> bool:
    """Check ``θ ∘ r_{A⧺B} = (r_A ⊗ r_B) ∘ Δ`` on ``E_f``."""
    x = HopfElement({Forest(f): 1}, alg)
    lhs = theta_split(realize(x, disjoint_sum(A, B)), A, B)
    return lhs == realize_tensor(alg.coproduct(x), A, B)


# ---------------------------------------------------------------------------
# Canonical alphabet and random alphabets
# ---------------------------------------------------------------------------

def canonical_letter(g: str, address: Sequence[int]) -> str:
    return f"{g}:{'.'.join(map(str, address))}"


def parse_canonical_letter(text: str) -> tuple[str, tuple[int, ...]]:
    g, _, addr = text.partition(":")
    return g, tuple(int(x) for x in addr.split(".")) if addr else ()


def canonical_alphabet(sig: Signature, max_label: int, max_len: int) -> RelatedAlphabet:
    """Truncation of the canonical alphabet: letters ``g:u`` with entries ``<= max(L, max arity)`` and ``|u| <= M``."""
    if max_label < 0 or max_len < 0:
        raise ValueError("truncation bounds must be nonnegative")
    K = max(max_label, sig.max_arity)
    addresses = [u for m in range(max_len + 1) for u in iproduct(range(K + 1), repeat=m)]
    letters = [canonical_letter(g, u) for g in sig.names for u in addresses]
    roots = [canonical_letter(g, (0,) * m) for g in sig.names for m in range(max_len + 1)]
    decorations = {g: [canonical_letter(g, u) for u in addresses] for g in sig.names}
    adj: dict = {}
    for g in sig.names:
        for u in addresses:
            for j in range(1, K + 1):
                for ell in range(max_len - len(u)):
                    v = u + (j,) + (0,) * ell
                    for h in sig.names:
                        adj.setdefault(j, {}).setdefault(canonical_letter(g, u), set()).add(
                            canonical_letter(h, v))
    return RelatedAlphabet(letters, roots, decorations, adj)


def random_alphabet(rng: random.Random, sig: Signature, size: int, prefix: str = "x",
                    density: float = 0.5) -> RelatedAlphabet:
    """A random finite related alphabet with relations for slots ``1..max arity``."""
    letters = [f"{prefix}{i}" for i in range(size)]
    pick = lambda: [x for x in letters if rng.random() < density]
    adj = {j: {a: pick() for a in letters} for j in range(1, sig.max_arity + 1)}
    return RelatedAlphabet(letters, pick(), {g: pick() for g in sig.names}, adj)
