"""Finite linear combinations with exact integer coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)

Coeff = int | Fraction


def _normal(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LinComb(Mapping):
    """Immutable map from basis keys to nonzero coefficients.

    Subclasses fix what a key is; arithmetic returns an instance of the same
    class via :meth:`_new`, which copies any extra structure (operad, basis
    tag, ...) from ``self``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        self._terms = {k: _normal(c) for k, c in acc.items() if c != 0}

    def _new(self, terms) -> "LinComb":
        return type(self)(terms)

    def _check_compatible(self, other: "LinComb") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    # Mapping protocol
    def __getitem__(self, key):
        return self._terms.get(key, 0)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, key) -> bool:
        return key in self._terms

    def items(self):
        return self._terms.items()

    def sort_key(self, key):
        return key

    def sorted_items(self) -> list[tuple]:
        return sorted(self._terms.items(), key=lambda kc: self.sort_key(kc[0]))

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check_compatible(other)
        acc = dict(self._terms)
        for k, c in other.items():
            acc[k] = acc.get(k, 0) + c
        return self._new(acc)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Coeff):
        return self._new({k: c * v for k, v in self.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def map_keys(self, fn: Callable, cls=None):
        """Apply ``fn`` to every key, summing coefficients that collide."""
        out: dict = {}
        for k, c in self.items():
            k2 = fn(k)
            out[k2] = out.get(k2, 0) + c
        return cls(out) if cls else self._new(out)

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {c}" for k, c in self.sorted_items())
        return f"{type(self).__name__}({{{body}}})"
