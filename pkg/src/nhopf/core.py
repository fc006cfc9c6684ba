"""Signatures, planar decorated terms and forests, free-operad composition.

Terms are immutable planar rooted trees whose internal nodes carry generator
names.  Every term has a canonical text form,

    c[a[*],*,b[*,*]]

with ``*`` standing for the leaf.  Forests are words of terms, written as
whitespace-separated terms.  The canonical text is also the hash/sort key.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence


class NHopfError(Exception):
    """Base class for domain errors raised by this package."""


class ArityError(NHopfError, ValueError):
    pass


class UnsupportedError(NHopfError):
    pass


class ParseError(NHopfError, ValueError):
    """Malformed text input; carries the 0-based offset of the problem."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column = line, col
        super().__init__(f"{message} (line {line}, column {col})")


NAME_RE = re.compile(r"[A-Za-z0-9_]+")


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """A finite graded set of generators, given as ``(name, arity)`` pairs."""

    generators: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for g, n in self.generators:
            if not NAME_RE.fullmatch(g):
                raise ValueError(f"invalid generator name {g!r}")
            if n < 0:
                raise ValueError(f"negative arity for {g!r}")

    @classmethod
    def of(cls, **arities: int) -> "Signature":
        return cls(tuple(arities.items()))

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse ``a:1,b:2,c:3`` or the file format (one ``name arity`` per line)."""
        gens = []
        if ":" in text:
            for part in text.split(","):
                part = part.strip()
                if not part:
                    continue
                name, _, arity = part.partition(":")
                gens.append(cls._entry(name.strip(), arity.strip(), text))
        else:
            for line in text.splitlines():
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                fields = line.split()
                if len(fields) != 2:
                    raise ParseError(f"expected 'name arity', got {line!r}", text, text.find(line))
                gens.append(cls._entry(fields[0], fields[1], text))
        return cls(tuple(gens))

    @staticmethod
    def _entry(name: str, arity: str, text: str) -> tuple[str, int]:
        if not NAME_RE.fullmatch(name) or not arity.isdigit():
            raise ParseError(f"bad generator entry {name!r}:{arity!r}", text, max(text.find(name), 0))
        return name, int(arity)

    @classmethod
    def load(cls, source: str) -> "Signature":
        """Read an inline signature, or a file if ``source`` names one."""
        path = Path(source)
        if ":" not in source and path.is_file():
            return cls.parse(path.read_text())
        return cls.parse(source)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.generators)

    def arity(self, name: str) -> int:
        for g, n in self.generators:
            if g == name:
                return n
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(g == name for g, _ in self.generators)

    @property
    def positive(self) -> bool:
        return all(n > 0 for _, n in self.generators)

    @property
    def max_arity(self) -> int:
        return max((n for _, n in self.generators), default=0)

    def profile(self, i: int) -> int:
        """Number of generators of arity ``i - 1`` (``i >= 1``)."""
        if i < 1:
            raise ValueError("profile index starts at 1")
        return sum(1 for _, n in self.generators if n == i - 1)

    def check_term(self, t: "Term") -> None:
        for label, arity in t.labels_with_arity():
            if label not in self:
                raise ArityError(f"generator {label!r} not in signature")
            if self.arity(label) != arity:
                raise ArityError(
                    f"generator {label!r} has arity {self.arity(label)}, used with {arity} children")

    def __str__(self) -> str:
        return ",".join(f"{g}:{n}" for g, n in self.generators)


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

class Term:
    """A planar rooted tree with decorated internal nodes, or the leaf.

    Build nodes with :func:`node` and use :data:`LEAF` for the leaf.  Equality,
    hashing and ordering go through the canonical serialization ``key``.
    """

    __slots__ = ("label", "children", "arity", "degree", "key", "_hash")

    def __init__(self, label: str | None, children: Sequence["Term"] = ()):
        children = tuple(children)
        if label is None:
            if children:
                raise ValueError("the leaf has no children")
            arity, degree, key = 1, 0, "*"
        else:
            arity = sum(c.arity for c in children)
            degree = 1 + sum(c.degree for c in children)
            key = f"{label}[{','.join(c.key for c in children)}]"
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name, value):
        raise AttributeError("Term is immutable")

    @property
    def is_leaf(self) -> bool:
        return self.label is None

    # operad-element protocol
    is_unit = is_leaf

    @property
    def sort_key(self) -> str:
        return self.key

    def __eq__(self, other) -> bool:
        return isinstance(other, Term) and self.key == other.key

    def __lt__(self, other: "Term") -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Term({self.key!r})"

    def __str__(self) -> str:
        return self.key

    def labels_with_arity(self) -> Iterator[tuple[str, int]]:
        """Yield ``(label, child count)`` for internal nodes in preorder."""
        if self.label is None:
            return
        yield self.label, len(self.children)
        for c in self.children:
            yield from c.labels_with_arity()

    def leaves_count(self) -> int:
        return self.arity


LEAF = Term(None)


def node(label: str, *children: Term) -> Term:
    return Term(label, children)


def generator_term(label: str, arity: int) -> Term:
    """The degree-one term whose root is decorated by ``label``."""
    return Term(label, (LEAF,) * arity)


# ---------------------------------------------------------------------------
# Forests
# ---------------------------------------------------------------------------

class Forest(tuple):
    """A word of terms.  Concatenation with ``+`` stays a forest."""

    def __new__(cls, terms: Iterable[Term] = ()):
        return super().__new__(cls, terms)

    def __add__(self, other):
        return Forest(tuple.__add__(self, tuple(other)))

    def __getitem__(self, item):
        res = tuple.__getitem__(self, item)
        return Forest(res) if isinstance(item, slice) else res

    @property
    def degree(self) -> int:
        return sum(t.degree for t in self)

    @property
    def reduced(self) -> bool:
        return all(not t.is_leaf for t in self)

    @property
    def key(self) -> str:
        return " ".join(t.key for t in self)

    @property
    def sort_key(self) -> tuple[str, ...]:
        return tuple(t.key for t in self)

    def __repr__(self) -> str:
        return f"Forest({self.key!r})"

    def __str__(self) -> str:
        return self.key if self else "ε"


EMPTY = Forest()


def reduce_forest(f: Sequence[Term]) -> Forest:
    """Remove every bare leaf term (the ``rd`` map)."""
    return Forest(t for t in f if not t.is_leaf)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def term(self) -> Term:
        if self.peek() == "*":
            self.pos += 1
            return LEAF
        m = NAME_RE.match(self.text, self.pos)
        if not m:
            raise self.error("expected a generator name or '*'")
        self.pos = m.end()
        label = m.group()
        if self.peek() != "[":
            raise self.error(f"expected '[' after {label!r}")
        self.pos += 1
        children = []
        if self.peek() == "]":
            self.pos += 1
            return Term(label, ())
        while True:
            children.append(self.term())
            c = self.peek()
            if c == ",":
                self.pos += 1
            elif c == "]":
                self.pos += 1
                return Term(label, children)
            else:
                raise self.error("expected ',' or ']'")


def parse_term(text: str, sig: Signature | None = None) -> Term:
    p = _Parser(text)
    p.skip_ws()
    t = p.term()
    p.skip_ws()
    if p.pos != len(text):
        raise p.error("trailing characters after term")
    if sig is not None:
        sig.check_term(t)
    return t


def parse_forest(text: str, sig: Signature | None = None) -> Forest:
    """Parse whitespace-separated terms; ``ε`` or an empty string is the empty forest."""
    if text.strip() in ("", "ε"):
        return EMPTY
    p = _Parser(text)
    terms = []
    p.skip_ws()
    while p.pos < len(text):
        start = p.pos
        terms.append(p.term())
        if p.pos < len(text) and not text[p.pos].isspace():
            raise p.error("terms must be separated by whitespace")
        if p.pos == start:
            raise p.error("empty term")
        p.skip_ws()
    f = Forest(terms)
    if sig is not None:
        for t in f:
            sig.check_term(t)
    return f


# ---------------------------------------------------------------------------
# Composition
# ---------------------------------------------------------------------------

def full_compose(t: Term, args: Sequence[Term]) -> Term:
    """Graft ``args[k]`` onto the k-th leaf of ``t``."""
    if len(args) != t.arity:
        raise ArityError(f"term of arity {t.arity} composed with {len(args)} arguments")
    it = iter(args)

    def graft(s: Term) -> Term:
        if s.is_leaf:
            return next(it)
        return Term(s.label, [graft(c) for c in s.children])

    return graft(t)


def partial_compose(t: Term, i: int, s: Term) -> Term:
    """Graft ``s`` onto the i-th leaf (1-based) of ``t``."""
    if not 1 <= i <= t.arity:
        raise ArityError(f"leaf index {i} out of range for arity {t.arity}")
    args = [LEAF] * t.arity
    args[i - 1] = s
    return full_compose(t, args)


# ---------------------------------------------------------------------------
# Internal nodes, preorder identification
# ---------------------------------------------------------------------------

class NodeInfo(NamedTuple):
    id: int            # 1-based preorder position in the forest
    label: str
    arity: int
    parent: int        # 0 for roots
    slot: int          # child slot under the parent; term index (1-based) for roots
    path: tuple[int, ...]


def nodes(f: Sequence[Term]) -> list[NodeInfo]:
    """Internal nodes of a forest in left-to-right preorder."""
    out: list[NodeInfo] = []

    def visit(t: Term, parent: int, slot: int, path: tuple[int, ...]):
        if t.is_leaf:
            return
        me = len(out) + 1
        out.append(NodeInfo(me, t.label, len(t.children), parent, slot, path))
        for j, c in enumerate(t.children, 1):
            visit(c, me, j, path + (j,))

    for k, t in enumerate(f, 1):
        visit(t, 0, k, (k,))
    return out


def preorder_decorations(f: Sequence[Term]) -> tuple[str, ...]:
    return tuple(n.label for n in nodes(f))


def edges(f: Sequence[Term]) -> set[tuple[int, int, int]]:
    """Triples ``(parent, j, child)`` meaning the child is the j-th child of the parent."""
    return {(n.parent, n.slot, n.id) for n in nodes(f) if n.parent}


def roots(f: Sequence[Term]) -> list[int]:
    return [n.id for n in nodes(f) if not n.parent]


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _require_positive(sig: Signature) -> None:
    if not sig.positive:
        raise UnsupportedError("enumeration needs a positive signature (no arity-0 generators)")


@lru_cache(maxsize=None)
def _terms(sig: Signature, d: int) -> tuple[Term, ...]:
    if d == 0:
        return (LEAF,)
    out = []
    for g, n in sig.generators:
        for split in _weak_compositions(d - 1, n):
            for kids in product(*(_terms(sig, k) for k in split)):
                out.append(Term(g, kids))
    return tuple(sorted(out))


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_terms(sig: Signature, degree: int) -> list[Term]:
    """All terms of exactly the given degree, sorted by canonical text."""
    _require_positive(sig)
    return list(_terms(sig, degree))


@lru_cache(maxsize=None)
def _forests(sig: Signature, d: int) -> tuple[Forest, ...]:
    if d == 0:
        return (EMPTY,)
    out = []
    for k in range(1, d + 1):
        for t in _terms(sig, k):
            for rest in _forests(sig, d - k):
                out.append(Forest((t,) + rest))
    return tuple(sorted(out, key=lambda f: f.sort_key))


def enumerate_reduced_forests(sig: Signature, degree: int) -> list[Forest]:
    """All reduced forests of exactly the given degree, sorted by canonical text."""
    _require_positive(sig)
    return list(_forests(sig, degree))


def forests_up_to(sig: Signature, max_degree: int) -> list[Forest]:
    return [f for d in range(max_degree + 1) for f in enumerate_reduced_forests(sig, d)]


def forests_with_word(sig: Signature, word: Sequence[str]) -> list[Forest]:
    """All reduced forests whose preorder decoration word is ``word``."""
    arities = tuple((g, sig.arity(g)) for g in word)
    return list(_forests_with_word(arities))


@lru_cache(maxsize=None)
def _forests_with_word(word: tuple[tuple[str, int], ...]) -> tuple[Forest, ...]:
    n = len(word)

    @lru_cache(maxsize=None)
    def seqs(start: int, count: int) -> tuple[tuple[tuple[Term, ...], int], ...]:
        # sequences of `count` subterms (leaves allowed) starting at word[start];
        # returns (subterms, next position)
        if count == 0:
            return (((), start),)
        out = [((LEAF,) + rest, end) for rest, end in seqs(start, count - 1)]
        for t, mid in terms_at(start):
            for rest, end in seqs(mid, count - 1):
                out.append(((t,) + rest, end))
        return tuple(out)

    @lru_cache(maxsize=None)
    def terms_at(start: int) -> tuple[tuple[Term, int], ...]:
        if start >= n:
            return ()
        g, a = word[start]
        return tuple((Term(g, kids), end) for kids, end in seqs(start + 1, a))

    @lru_cache(maxsize=None)
    def forests_from(start: int) -> tuple[Forest, ...]:
        if start == n:
            return (EMPTY,)
        out = []
        for t, mid in terms_at(start):
            out.extend(Forest((t,)) + rest for rest in forests_from(mid))
        return tuple(out)

    return tuple(sorted(set(forests_from(0)), key=lambda f: f.sort_key))
