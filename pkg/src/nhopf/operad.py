"""Finitely factorizable graded operads: free, associative, multiset (MAs).

Each operad exposes ``compose``, ``unit``, ``factorizations`` and, for the
brute-force checks, ``elements(degree)``.  Elements of all three instances share
a tiny protocol: ``arity``, ``degree``, ``is_unit``, ``key`` and ``sort_key``.
"""
from __future__ import annotations

import re
from collections import Counter
from itertools import combinations_with_replacement, product
from typing import Iterator, NamedTuple, Sequence

from .core import (
    LEAF,
    ArityError,
    Forest,
    ParseError,
    Signature,
    Term,
    UnsupportedError,
    enumerate_terms,
    full_compose,
    parse_forest,
    parse_term,
    NAME_RE,
)


class Factorization(NamedTuple):
    outer: object
    inner: tuple


class Operad:
    """Common machinery; subclasses implement the instance-specific parts."""

    name = "operad"

    def __init__(self):
        self._factorizations: dict = {}

    @property
    def unit(self):
        raise NotImplementedError

    def compose(self, y, w: Sequence):
        raise NotImplementedError

    def _factorize(self, x) -> list[Factorization]:
        raise NotImplementedError

    def elements(self, degree: int) -> list:
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError

    def owns(self, x) -> bool:
        raise NotImplementedError

    def factorizations(self, x) -> list[Factorization]:
        """Every pair ``(y, w)`` with ``compose(y, w) == x``, each once."""
        self._check(x)
        try:
            return self._factorizations[x]
        except KeyError:
            res = self._factorizations[x] = self._factorize(x)
            return res

    def _check(self, x) -> None:
        if not self.owns(x):
            raise TypeError(f"{x!r} is not an element of {self.name}")

    def _check_args(self, y, w: Sequence) -> None:
        self._check(y)
        for z in w:
            self._check(z)
        if len(w) != y.arity:
            raise ArityError(f"element of arity {y.arity} composed with {len(w)} arguments")

    def parse_word(self, text: str) -> tuple:
        """Whitespace-separated elements; ``ε`` or blank is the empty word."""
        text = text.strip()
        if text in ("", "ε"):
            return ()
        out = []
        for m in re.finditer(r"\S+", text):
            try:
                out.append(self.parse_element(m.group()))
            except ParseError as e:
                raise ParseError(str(e).rsplit(" (line", 1)[0], text, m.start() + e.pos) from None
        return tuple(out)

    def format_word(self, w: Sequence) -> str:
        return " ".join(x.key for x in w) if w else "ε"


# ---------------------------------------------------------------------------
# Free operad
# ---------------------------------------------------------------------------

class FreeOperad(Operad):
    """The free operad on a signature; elements are :class:`~nhopf.core.Term`."""

    name = "free"

    def __init__(self, sig: Signature):
        super().__init__()
        self.signature = sig

    def __eq__(self, other):
        return isinstance(other, FreeOperad) and other.signature == self.signature

    def __hash__(self):
        return hash(("free", self.signature))

    def __repr__(self):
        return f"FreeOperad({self.signature})"

    @property
    def unit(self) -> Term:
        return LEAF

    def owns(self, x) -> bool:
        return isinstance(x, Term)

    def compose(self, y: Term, w: Sequence[Term]) -> Term:
        self._check_args(y, w)
        return full_compose(y, w)

    def _factorize(self, x: Term) -> list[Factorization]:
        return [Factorization(y, tuple(w)) for y, w in _prefix_factorizations(x)]

    def elements(self, degree: int) -> list[Term]:
        return enumerate_terms(self.signature, degree)

    def parse_element(self, text: str) -> Term:
        return parse_term(text, self.signature)

    def parse_word(self, text: str) -> Forest:
        return parse_forest(text, self.signature)


def _prefix_factorizations(t: Term) -> list[tuple[Term, tuple[Term, ...]]]:
    # One entry per set of internal nodes closed under taking parents.
    if t.is_leaf:
        return [(LEAF, (LEAF,))]
    out = [(LEAF, (t,))]
    per_child = [_prefix_factorizations(c) for c in t.children]
    for choice in product(*per_child):
        y = Term(t.label, [c[0] for c in choice])
        w = tuple(z for c in choice for z in c[1])
        out.append((y, w))
    return out


# ---------------------------------------------------------------------------
# Associative operad
# ---------------------------------------------------------------------------

class AsElement:
    """``alpha_n``, of arity ``n`` and degree ``n - 1``."""

    __slots__ = ("n",)

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("alpha_n needs n >= 1")
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("AsElement is immutable")

    arity = property(lambda self: self.n)
    degree = property(lambda self: self.n - 1)
    is_unit = property(lambda self: self.n == 1)
    key = property(lambda self: f"alpha_{self.n}")
    sort_key = property(lambda self: (self.n,))

    def __eq__(self, other):
        return isinstance(other, AsElement) and other.n == self.n

    def __hash__(self):
        return hash(("alpha", self.n))

    def __lt__(self, other):
        return self.n < other.n

    def __repr__(self):
        return f"AsElement({self.n})"

    __str__ = lambda self: self.key


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``n`` into ``k`` positive parts."""
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


class AssociativeOperad(Operad):
    name = "As"

    def __eq__(self, other):
        return isinstance(other, AssociativeOperad)

    def __hash__(self):
        return hash("As")

    def __repr__(self):
        return "AssociativeOperad()"

    @property
    def unit(self) -> AsElement:
        return AsElement(1)

    def owns(self, x) -> bool:
        return isinstance(x, AsElement)

    def compose(self, y: AsElement, w: Sequence[AsElement]) -> AsElement:
        self._check_args(y, w)
        return AsElement(sum(z.n for z in w))

    def _factorize(self, x: AsElement) -> list[Factorization]:
        return [
            Factorization(AsElement(k), tuple(AsElement(m) for m in parts))
            for k in range(1, x.n + 1)
            for parts in _compositions(x.n, k)
        ]

    def elements(self, degree: int) -> list[AsElement]:
        return [AsElement(degree + 1)]

    def parse_element(self, text: str) -> AsElement:
        m = re.fullmatch(r"\s*(?:alpha_|α_?)(\d+)\s*", text)
        if not m or int(m.group(1)) < 1:
            raise ParseError(f"expected alpha_<n> with n >= 1, got {text!r}", text, 0)
        return AsElement(int(m.group(1)))


# ---------------------------------------------------------------------------
# Multiset realization of MAs_S
# ---------------------------------------------------------------------------

class MasElement:
    """A multiset of generator names, printed ``{a,a,b}``.

    Its arity is ``sum(ar g) - len + 1``; the empty multiset is the unit.
    """

    __slots__ = ("letters", "arity")

    def __init__(self, letters: Sequence[str], arity: int):
        object.__setattr__(self, "letters", tuple(sorted(letters)))
        object.__setattr__(self, "arity", arity)

    def __setattr__(self, name, value):
        raise AttributeError("MasElement is immutable")

    degree = property(lambda self: len(self.letters))
    is_unit = property(lambda self: not self.letters)
    key = property(lambda self: "{" + ",".join(self.letters) + "}")
    sort_key = property(lambda self: self.key)

    def counts(self) -> Counter:
        return Counter(self.letters)

    def __eq__(self, other):
        return isinstance(other, MasElement) and other.letters == self.letters

    def __hash__(self):
        return hash(("mas", self.letters))

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"MasElement({self.key})"

    __str__ = lambda self: self.key


class MasOperad(Operad):
    """Multi-multiassociative operad, realized on multisets with union as composition."""

    name = "MAs"

    def __init__(self, sig: Signature):
        super().__init__()
        self.signature = sig

    def __eq__(self, other):
        return isinstance(other, MasOperad) and other.signature == self.signature

    def __hash__(self):
        return hash(("mas", self.signature))

    def __repr__(self):
        return f"MasOperad({self.signature})"

    def element(self, letters: Sequence[str]) -> MasElement:
        for g in letters:
            if g not in self.signature:
                raise ArityError(f"generator {g!r} not in signature")
        arity = sum(self.signature.arity(g) for g in letters) - len(letters) + 1
        if arity < 0:
            raise ArityError(f"multiset {sorted(letters)} has negative arity {arity}")
        return MasElement(letters, arity)

    @property
    def unit(self) -> MasElement:
        return MasElement((), 1)

    def owns(self, x) -> bool:
        return isinstance(x, MasElement)

    def compose(self, y: MasElement, w: Sequence[MasElement]) -> MasElement:
        self._check_args(y, w)
        return self.element(y.letters + tuple(g for z in w for g in z.letters))

    def _factorize(self, x: MasElement) -> list[Factorization]:
        if not self.signature.positive:
            raise UnsupportedError("MAs factorizations are only supported for positive signatures")
        counts = sorted(x.counts().items())
        out = []
        for taken in product(*(range(c + 1) for _, c in counts)):
            y = self.element([g for (g, _), k in zip(counts, taken) for _ in range(k)])
            rest = [(g, c - k) for (g, c), k in zip(counts, taken) if c - k]
            slots = y.arity
            per_name = [
                [(g, split) for split in _weak(c, slots)] for g, c in rest
            ]
            for choice in product(*per_name):
                inner = tuple(
                    self.element([g for g, split in choice for _ in range(split[s])])
                    for s in range(slots)
                )
                out.append(Factorization(y, inner))
        return out

    def elements(self, degree: int) -> list[MasElement]:
        if not self.signature.positive:
            raise UnsupportedError("MAs enumeration needs a positive signature")
        return sorted(self.element(c) for c in combinations_with_replacement(self.signature.names, degree))

    def parse_element(self, text: str) -> MasElement:
        m = re.fullmatch(r"\s*\{([^{}]*)\}\s*", text)
        if not m:
            raise ParseError(f"expected a multiset like {{a,b}}, got {text!r}", text, 0)
        body = m.group(1).replace(",", " ").split()
        for g in body:
            if not NAME_RE.fullmatch(g) or g not in self.signature:
                raise ParseError(f"unknown generator {g!r}", text, text.find(g))
        return self.element(body)

    def parse_word(self, text: str) -> tuple:
        # multisets may contain spaces after commas, so split on closing braces
        text = text.strip()
        if text in ("", "ε"):
            return ()
        out = []
        for m in re.finditer(r"\{[^{}]*\}", text):
            out.append(self.parse_element(m.group()))
        leftover = re.sub(r"\{[^{}]*\}", "", text).strip()
        if leftover:
            raise ParseError(f"unexpected text {leftover!r}", text, text.find(leftover))
        return tuple(out)


def _weak(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak(total - first, parts - 1):
            yield (first,) + rest
