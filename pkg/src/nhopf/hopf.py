"""The natural Hopf algebra of a finitely factorizable graded operad.

Basis elements ``E_w`` are indexed by reduced words ``w`` over the operad
(tuples of non-unit elements).  The product concatenates words; the coproduct
of a single letter sums over its factorizations and is extended to words
multiplicatively.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

from .linear import LinComb
from .operad import Operad

BASES = ("E", "F", "H")


def reduce_word(w: Iterable) -> tuple:
    """Drop unit letters."""
    return tuple(x for x in w if not x.is_unit)


def word_degree(w: Sequence) -> int:
    return sum(x.degree for x in w)


def word_sort_key(w: Sequence) -> tuple:
    return tuple(x.sort_key for x in w)


class HopfElement(LinComb):
    """A linear combination of basis elements ``E_w``, ``F_w`` or ``H_w``."""

    __slots__ = ("algebra", "basis")

    def __init__(self, terms=(), algebra: "NaturalHopfAlgebra" = None, basis: str = "E"):
        super().__init__(terms)
        if algebra is None:
            raise ValueError("HopfElement needs an algebra")
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        for w in self._terms:
            if any(x.is_unit for x in w):
                raise ValueError(f"basis words must be reduced, got {w!r}")
        self.algebra = algebra
        self.basis = basis

    def _new(self, terms):
        return HopfElement(terms, self.algebra, self.basis)

    def _check_compatible(self, other):
        if not isinstance(other, HopfElement):
            raise TypeError(f"cannot combine HopfElement with {type(other).__name__}")
        if other.algebra != self.algebra:
            raise TypeError("elements of different Hopf algebras")
        if other.basis != self.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def sort_key(self, key):
        return word_sort_key(key)

    def __eq__(self, other):
        if isinstance(other, HopfElement):
            return (self.basis == other.basis and self.algebra == other.algebra
                    and self._terms == other._terms)
        return super().__eq__(other)

    __hash__ = LinComb.__hash__

    def __mul__(self, other):
        if isinstance(other, HopfElement):
            if self.basis == "E":
                return self.algebra.product(self, other)
            from .bases import product_in_basis
            return product_in_basis(self, other, self.basis)
        return NotImplemented

    def __str__(self) -> str:
        return format_combination(
            [(c, f"{self.basis}({self.algebra.operad.format_word(w)})") for w, c in self.sorted_items()])

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "basis": self.basis,
            "terms": [
                {"word": [x.key for x in w], "coeff": str(c)} for w, c in self.sorted_items()
            ],
        }


class Tensor(LinComb):
    """Element of a tensor power; keys are tuples of reduced words."""

    __slots__ = ("algebra",)

    def __init__(self, terms=(), algebra: "NaturalHopfAlgebra" = None):
        super().__init__(terms)
        self.algebra = algebra

    def _new(self, terms):
        return Tensor(terms, self.algebra)

    def _check_compatible(self, other):
        if not isinstance(other, Tensor):
            raise TypeError(f"cannot combine Tensor with {type(other).__name__}")

    def sort_key(self, key):
        return tuple(word_sort_key(w) for w in key)

    def __mul__(self, other: "Tensor") -> "Tensor":
        """Componentwise product (concatenation in each leg)."""
        out: dict = {}
        for k1, c1 in self.items():
            for k2, c2 in other.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return self._new(out)

    def __str__(self) -> str:
        fmt = self.algebra.operad.format_word
        return format_combination(
            [(c, " ⊗ ".join(f"E({fmt(w)})" for w in k)) for k, c in self.sorted_items()])

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "terms": [
                {"words": [[x.key for x in w] for w in k], "coeff": str(c)}
                for k, c in self.sorted_items()
            ],
        }


def format_combination(items: list[tuple[int, str]]) -> str:
    if not items:
        return "0"
    parts = []
    for i, (c, label) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = label if mag == 1 else f"{mag} {label}"
        if i == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


class NaturalHopfAlgebra:
    """``N·O`` for an operad instance ``O``."""

    def __init__(self, operad: Operad):
        self.operad = operad
        self._letter_coproducts: dict = {}
        self._antipodes: dict = {}

    def __eq__(self, other):
        return isinstance(other, NaturalHopfAlgebra) and other.operad == self.operad

    def __hash__(self):
        return hash(("N", self.operad))

    def __repr__(self):
        return f"NaturalHopfAlgebra({self.operad!r})"

    # construction -------------------------------------------------------

    def E(self, word: Iterable = (), coeff: int = 1) -> HopfElement:
        return HopfElement({tuple(word): coeff}, self)

    def element(self, terms, basis: str = "E") -> HopfElement:
        return HopfElement(terms, self, basis)

    def zero(self, basis: str = "E") -> HopfElement:
        return HopfElement({}, self, basis)

    def one(self) -> HopfElement:
        return self.E(())

    def parse(self, text: str, basis: str = "E") -> HopfElement:
        return HopfElement({self.operad.parse_word(text): 1}, self, basis)

    def basis_words(self, degree: int) -> list[tuple]:
        """All reduced words of exactly the given degree."""
        by_degree = {d: [x for x in self.operad.elements(d)] for d in range(1, degree + 1)}
        memo: dict[int, list[tuple]] = {0: [()]}

        def words(d: int) -> list[tuple]:
            if d not in memo:
                memo[d] = [(x,) + rest for k in range(1, d + 1)
                           for x in by_degree[k] for rest in words(d - k)]
            return memo[d]

        return sorted(words(degree), key=word_sort_key)

    def basis_up_to(self, max_degree: int) -> list[tuple]:
        return [w for d in range(max_degree + 1) for w in self.basis_words(d)]

    # structure maps -----------------------------------------------------

    def _require_E(self, *xs: HopfElement) -> None:
        for x in xs:
            if x.basis != "E":
                raise ValueError(f"operation needs the E basis, got {x.basis}")

    def product(self, x: HopfElement, y: HopfElement) -> HopfElement:
        self._require_E(x, y)
        out: dict = {}
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return HopfElement(out, self)

    def letter_coproduct(self, x) -> Tensor:
        try:
            return self._letter_coproducts[x]
        except KeyError:
            pass
        out: dict = {}
        for y, w in self.operad.factorizations(x):
            k = (reduce_word((y,)), reduce_word(w))
            out[k] = out.get(k, 0) + 1
        res = self._letter_coproducts[x] = Tensor(out, self)
        return res

    def word_coproduct(self, w: Sequence) -> Tensor:
        res = Tensor({((), ()): 1}, self)
        for x in w:
            res = res * self.letter_coproduct(x)
        return res

    def coproduct(self, x: HopfElement) -> Tensor:
        self._require_E(x)
        out = Tensor({}, self)
        for w, c in x.items():
            out = out + self.word_coproduct(w).scale(c)
        return out

    def counit(self, x: HopfElement) -> int:
        self._require_E(x)
        return x[()]

    def word_antipode(self, w: tuple) -> HopfElement:
        if w in self._antipodes:
            return self._antipodes[w]
        if not w:
            res = self.one()
        else:
            res = -self.E(w)
            for (u, v), c in self.word_coproduct(w).items():
                if not u or not v:
                    continue
                res = res - self.product(self.word_antipode(u), self.E(v)).scale(c)
        self._antipodes[w] = res
        return res

    def antipode(self, x: HopfElement) -> HopfElement:
        self._require_E(x)
        out = self.zero()
        for w, c in x.items():
            out = out + self.word_antipode(w).scale(c)
        return out

    def degree_components(self, x: HopfElement) -> dict[int, HopfElement]:
        parts: dict[int, dict] = {}
        for w, c in x.items():
            parts.setdefault(word_degree(w), {})[w] = c
        return {d: x._new(terms) for d, terms in sorted(parts.items())}

    # tensor helpers used by the verification suites ---------------------

    def apply_to_leg(self, t: Tensor, leg: int, fn) -> Tensor:
        """Apply a linear map ``word -> Tensor`` to one leg, splicing the result in."""
        out: dict = {}
        for k, c in t.items():
            for k2, c2 in fn(k[leg]).items():
                key = k[:leg] + tuple(k2) + k[leg + 1:]
                out[key] = out.get(key, 0) + c * c2
        return Tensor(out, self)


def dumps(x: HopfElement | Tensor) -> str:
    return json.dumps(x.to_json(), indent=2, ensure_ascii=False)
