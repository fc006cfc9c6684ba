"""The easterly wind order on reduced forests.

A cover move detaches the subterm rooted at some internal node and grafts it
onto the rightmost leaf of its immediate left brother: the previous child of
the same parent (possibly a bare leaf) or, for a term root, the previous term
of the forest.  Moves keep the preorder decoration word, so the order splits
into finite word classes; each class is materialized once as a
:class:`WordPoset` with bitset up/down sets.
"""
from __future__ import annotations

import json
from functools import lru_cache
from graphlib import TopologicalSorter
from typing import Iterator, Sequence

from .core import (
    LEAF,
    Forest,
    NHopfError,
    Signature,
    Term,
    UnsupportedError,
    _forests_with_word,
    generator_term,
    partial_compose,
)


class LatticeError(NHopfError):
    pass


def _graft_rightmost(t: Term, s: Term) -> Term:
    if t.is_leaf:
        return s
    if not t.children:
        raise UnsupportedError(f"node {t.label!r} of arity 0 has no rightmost leaf")
    kids = list(t.children)
    kids[-1] = _graft_rightmost(kids[-1], s)
    return Term(t.label, kids)


def _term_moves(t: Term) -> Iterator[Term]:
    if t.is_leaf:
        return
    kids = t.children
    for j in range(1, len(kids)):
        if not kids[j].is_leaf:
            new = list(kids)
            new[j - 1] = _graft_rightmost(kids[j - 1], kids[j])
            new[j] = LEAF
            yield Term(t.label, new)
    for j, c in enumerate(kids):
        for c2 in _term_moves(c):
            new = list(kids)
            new[j] = c2
            yield Term(t.label, new)


def covers(f: Sequence[Term]) -> list[Forest]:
    """All forests covering ``f`` (one easterly move away), sorted."""
    f = Forest(f)
    if not f.reduced:
        raise ValueError("covers needs a reduced forest")
    out = set()
    for k, t in enumerate(f):
        for t2 in _term_moves(t):
            out.add(f[:k] + (t2,) + f[k + 1:])
        if k:
            out.add(f[:k - 1] + (_graft_rightmost(f[k - 1], t),) + f[k + 1:])
    return sorted(out, key=lambda g: g.sort_key)


def arity_word(f: Sequence[Term]) -> tuple[tuple[str, int], ...]:
    """Preorder word of ``(label, arity)`` pairs; forests are comparable only within one."""
    return tuple(p for t in f for p in t.labels_with_arity())


class WordPoset:
    """All reduced forests sharing one preorder word, ordered by ≼."""

    def __init__(self, word: tuple[tuple[str, int], ...]):
        if any(a == 0 for _, a in word):
            raise UnsupportedError("the easterly wind order needs a positive signature")
        self.word = word
        self.elements: list[Forest] = list(_forests_with_word(word))
        self.index = {f: i for i, f in enumerate(self.elements)}
        self.cover_lists: list[list[int]] = []
        for f in self.elements:
            ids = []
            for g in covers(f):
                if g not in self.index:
                    raise AssertionError(f"cover {g} left the word class of {f}")
                ids.append(self.index[g])
            self.cover_lists.append(ids)
        ts = TopologicalSorter({i: [] for i in range(len(self.elements))})
        for i, cs in enumerate(self.cover_lists):
            for j in cs:
                ts.add(j, i)
        self.topo = list(ts.static_order())  # lower elements first
        self.up = [0] * len(self.elements)
        for i in reversed(self.topo):
            bits = 1 << i
            for j in self.cover_lists[i]:
                bits |= self.up[j]
            self.up[i] = bits
        self.down = [0] * len(self.elements)
        for i, bits in enumerate(self.up):
            for j in _bits(bits):
                self.down[j] |= 1 << i
        self._mobius_rows: dict[int, dict[int, int]] = {}

    def __len__(self):
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def mobius_row(self, i: int) -> dict[int, int]:
        """``{j: mu(i, j)}`` for every ``j`` above ``i``."""
        if i in self._mobius_rows:
            return self._mobius_rows[i]
        row: dict[int, int] = {}
        upset = self.up[i]
        for j in self.topo:
            if not upset >> j & 1:
                continue
            if j == i:
                row[j] = 1
            else:
                row[j] = -sum(row[h] for h in _bits(self.down[j] & upset) if h != j)
        self._mobius_rows[i] = row
        return row

    def members(self, bits: int) -> list[Forest]:
        return [self.elements[i] for i in _bits(bits)]


def _bits(x: int) -> Iterator[int]:
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


@lru_cache(maxsize=None)
def word_poset(word: tuple[tuple[str, int], ...]) -> WordPoset:
    return WordPoset(word)


def poset_of(f: Sequence[Term]) -> WordPoset:
    return word_poset(arity_word(f))


def less_equal(f: Sequence[Term], g: Sequence[Term]) -> bool:
    f, g = Forest(f), Forest(g)
    if arity_word(f) != arity_word(g):
        return False
    P = poset_of(f)
    return P.leq(P.index[f], P.index[g])


def upper_set(f: Sequence[Term]) -> list[Forest]:
    P = poset_of(f)
    return P.members(P.up[P.index[Forest(f)]])


def lower_set(f: Sequence[Term]) -> list[Forest]:
    P = poset_of(f)
    return P.members(P.down[P.index[Forest(f)]])


def between(f: Sequence[Term], g: Sequence[Term]) -> list[Forest]:
    """``{h : f ≼ h ≼ g}`` (empty when ``f`` is not below ``g``)."""
    f, g = Forest(f), Forest(g)
    if arity_word(f) != arity_word(g):
        return []
    P = poset_of(f)
    return P.members(P.up[P.index[f]] & P.down[P.index[g]])


def moebius(f: Sequence[Term], g: Sequence[Term]) -> int:
    """Möbius function of the easterly wind poset; requires ``f ≼ g``."""
    f, g = Forest(f), Forest(g)
    if not less_equal(f, g):
        raise LatticeError(f"{f} is not below {g}")
    P = poset_of(f)
    return P.mobius_row(P.index[f])[P.index[g]]


def mobius_upward(f: Sequence[Term]) -> dict[Forest, int]:
    """``{g: mu(f, g)}`` over the upper set of ``f`` (zero values dropped)."""
    P = poset_of(f)
    row = P.mobius_row(P.index[Forest(f)])
    return {P.elements[j]: m for j, m in row.items() if m}


def mobius_downward(f: Sequence[Term]) -> dict[Forest, int]:
    """``{g: mu(g, f)}`` over the lower set of ``f`` (zero values dropped)."""
    P = poset_of(f)
    i = P.index[Forest(f)]
    out = {}
    for j in _bits(P.down[i]):
        m = P.mobius_row(j)[i]
        if m:
            out[P.elements[j]] = m
    return out


# ---------------------------------------------------------------------------
# Intervals W·w
# ---------------------------------------------------------------------------

def bottom_forest(sig: Signature, word: Sequence[str]) -> Forest:
    return Forest(generator_term(g, sig.arity(g)) for g in word)


def top_forest(sig: Signature, word: Sequence[str]) -> Forest:
    terms = [generator_term(g, sig.arity(g)) for g in word]
    # (g1 ∘_1 g2) ∘_1 ... : each new generator lands on the leftmost leaf
    acc = terms[0]
    for t in terms[1:]:
        acc = partial_compose(acc, 1, t)
    return Forest((acc,))


class Interval:
    """The interval between the bottom and top forests of a generator word."""

    def __init__(self, sig: Signature, word: Sequence[str]):
        word = tuple(word)
        if not word:
            raise ValueError("interval needs a nonempty word")
        if not sig.positive:
            raise UnsupportedError("the easterly wind order needs a positive signature")
        for g in word:
            if g not in sig:
                raise ValueError(f"generator {g!r} not in signature")
        self.signature = sig
        self.word = word
        self.bottom = bottom_forest(sig, word)
        self.top = top_forest(sig, word)
        self.poset = poset_of(self.bottom)
        P = self.poset
        self._bits = P.up[P.index[self.bottom]] & P.down[P.index[self.top]]
        self.elements = P.members(self._bits)
        self._set = set(self.elements)
        self.cover_pairs = [
            (P.elements[i], P.elements[j])
            for i in _bits(self._bits) for j in P.cover_lists[i] if self._bits >> j & 1
        ]

    @property
    def word_class_size(self) -> int:
        return len(self.poset)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, f) -> bool:
        return Forest(f) in self._set

    def _idx(self, f) -> int:
        f = Forest(f)
        if f not in self._set:
            raise LatticeError(f"{f} is outside the interval")
        return self.poset.index[f]

    def leq(self, f, g) -> bool:
        return self.poset.leq(self._idx(f), self._idx(g))

    def _extremum(self, bits: int, upward: bool) -> Forest:
        P = self.poset
        cands = list(_bits(bits))
        # the least element of an up-closed candidate set lies below all others
        for i in cands:
            if upward and (P.up[i] & bits) == bits or not upward and (P.down[i] & bits) == bits:
                return P.elements[i]
        raise LatticeError("no unique bound; the interval is not a lattice here")

    def join(self, f, g) -> Forest:
        P = self.poset
        bits = P.up[self._idx(f)] & P.up[self._idx(g)] & self._bits
        return self._extremum(bits, upward=True)

    def meet(self, f, g) -> Forest:
        P = self.poset
        bits = P.down[self._idx(f)] & P.down[self._idx(g)] & self._bits
        return self._extremum(bits, upward=False)

    def moebius(self, f, g) -> int:
        i, j = self._idx(f), self._idx(g)
        if not self.poset.leq(i, j):
            raise LatticeError(f"{f} is not below {g}")
        return self.poset.mobius_row(i)[j]

    def to_dot(self) -> str:
        lines = ["// format_version 1", f'digraph "W({" ".join(self.word)})" {{', "  rankdir=TB;"]
        for f in self.elements:
            lines.append(f'  "{f.key}";')
        for a, b in sorted(self.cover_pairs, key=lambda p: (p[0].sort_key, p[1].sort_key)):
            lines.append(f'  "{a.key}" -> "{b.key}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "word": list(self.word),
            "bottom": self.bottom.key,
            "top": self.top.key,
            "word_class_size": self.word_class_size,
            "nodes": [f.key for f in self.elements],
            "edges": [[a.key, b.key] for a, b in
                      sorted(self.cover_pairs, key=lambda p: (p[0].sort_key, p[1].sort_key))],
        }


def interval(sig: Signature, word: Sequence[str]) -> Interval:
    return Interval(sig, word)


def hasse_export(iv: Interval, fmt: str = "dot") -> str:
    if fmt == "dot":
        return iv.to_dot()
    if fmt == "json":
        return json.dumps(iv.to_json(), indent=2) + "\n"
    raise ValueError(f"unknown Hasse export format {fmt!r}")
