"""Operad congruences on free operads and the class-sum elements ``E_[f]``.

A congruence is described by two functions on terms: a canonical form
(constant on classes) and a set of elementary rewrites generating the
classes.  Classes are computed by closing under the rewrites; the canonical
form is then used as a cross-check.  Forest classes are taken componentwise.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Sequence

from .core import (
    Forest,
    NHopfError,
    Signature,
    Term,
    UnsupportedError,
    forests_up_to,
)
from .hopf import HopfElement, NaturalHopfAlgebra, Tensor
from .operad import FreeOperad, MasOperad

DEFAULT_CLOSURE_BOUND = 10 ** 5


class FiniteTypeError(NHopfError):
    """A class closure grew past the configured bound."""


class Congruence:
    """Base class; subclasses give ``canonical_form`` and ``generating_moves``."""

    name = "congruence"

    def __init__(self, closure_bound: int = DEFAULT_CLOSURE_BOUND):
        self.closure_bound = closure_bound
        self._classes: dict[Term, frozenset] = {}

    def canonical_form(self, t: Term) -> Hashable:
        raise NotImplementedError

    def generating_moves(self, t: Term) -> list[Term]:
        raise NotImplementedError

    def forest_canonical_form(self, f: Sequence[Term]) -> tuple:
        return tuple(self.canonical_form(t) for t in f)

    def term_class(self, t: Term) -> frozenset:
        if t in self._classes:
            return self._classes[t]
        seen = {t}
        queue = deque([t])
        while queue:
            s = queue.popleft()
            for s2 in self.generating_moves(s):
                if s2 not in seen:
                    seen.add(s2)
                    if len(seen) > self.closure_bound:
                        raise FiniteTypeError(
                            f"class of {t} exceeds {self.closure_bound} elements")
                    queue.append(s2)
        key = self.canonical_form(t)
        for s in seen:
            if s.degree != t.degree:
                raise AssertionError(f"move changed the degree: {t} -> {s}")
            if self.canonical_form(s) != key:
                raise AssertionError(f"canonical form not constant on the class of {t}")
        cls = frozenset(seen)
        for s in cls:
            self._classes[s] = cls
        return cls


class TrivialCongruence(Congruence):
    """Equality; every class is a singleton."""

    name = "trivial"

    def canonical_form(self, t: Term) -> str:
        return t.key

    def generating_moves(self, t: Term) -> list[Term]:
        return []


class MasCongruence(Congruence):
    """The congruence ``g o_i g' == g' o_i' g`` whose quotient is ``MAs``.

    Classes are the terms with a given multiset of node decorations.  A
    rewrite swaps a parent/child pair along one internal edge, re-hanging
    the surrounding subtrees left to right.
    """

    name = "MAs"

    def __init__(self, sig: Signature, closure_bound: int = DEFAULT_CLOSURE_BOUND):
        super().__init__(closure_bound)
        self.signature = sig

    def canonical_form(self, t: Term) -> tuple[str, ...]:
        return tuple(sorted(g for g, _ in t.labels_with_arity()))

    def generating_moves(self, t: Term) -> list[Term]:
        out = []
        if t.is_leaf:
            return out
        kids = t.children
        for i, child in enumerate(kids):
            if child.is_leaf:
                continue
            hanging = list(kids[:i]) + list(child.children) + list(kids[i + 1:])
            m, n = len(child.children), len(kids)
            for j in range(m):
                # child becomes the parent; t's node goes into slot j
                left, mid, right = hanging[:j], hanging[j:j + n], hanging[j + n:]
                out.append(Term(child.label, left + [Term(t.label, mid)] + right))
        for i, child in enumerate(kids):
            for c2 in self.generating_moves(child):
                new = list(kids)
                new[i] = c2
                out.append(Term(t.label, new))
        return out

    def quotient_operad(self) -> MasOperad:
        return MasOperad(self.signature)

    def to_quotient(self, f: Sequence[Term]) -> tuple:
        """The word of multisets representing the class of ``f``."""
        op = self.quotient_operad()
        return tuple(op.element(self.canonical_form(t)) for t in f)


def class_elements(f: Sequence[Term], cong: Congruence) -> list[Forest]:
    """The class of ``f``, componentwise, sorted."""
    per_term = [sorted(cong.term_class(t)) for t in f]
    total = 1
    for c in per_term:
        total *= len(c)
        if total > cong.closure_bound:
            raise FiniteTypeError(f"class of {Forest(f)} exceeds {cong.closure_bound} elements")
    return sorted((Forest(p) for p in product(*per_term)), key=lambda g: g.sort_key)


def e_class(alg: NaturalHopfAlgebra, f: Sequence[Term], cong: Congruence) -> HopfElement:
    """``E_[f]``: the sum of ``E_f'`` over the class of ``f``."""
    return HopfElement({g: 1 for g in class_elements(f, cong)}, alg)


# ---------------------------------------------------------------------------
# Hopf subalgebra check
# ---------------------------------------------------------------------------

@dataclass
class SubalgebraReport:
    ok: bool
    congruence: str
    max_degree: int
    classes: int = 0
    products_checked: int = 0
    coproducts_checked: int = 0
    quotient_checked: int = 0
    failure: str | None = None
    coproducts: dict = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "ok": self.ok,
            "congruence": self.congruence,
            "max_degree": self.max_degree,
            "classes": self.classes,
            "products_checked": self.products_checked,
            "coproducts_checked": self.coproducts_checked,
            "quotient_checked": self.quotient_checked,
            "failure": self.failure,
        }


def _constant_on_classes(x: HopfElement, cong: Congruence) -> str | None:
    for w, c in x.items():
        for g in class_elements(w, cong):
            if x[g] != c:
                return f"coefficient of {Forest(w)} is {c} but of {g} is {x[g]}"
    return None


def _tensor_constant_on_classes(t: Tensor, cong: Congruence) -> str | None:
    for (u, v), c in t.items():
        for u2 in class_elements(u, cong):
            for v2 in class_elements(v, cong):
                if t[(u2, v2)] != c:
                    return (f"coefficient of {Forest(u)} ⊗ {Forest(v)} is {c} "
                            f"but of {u2} ⊗ {v2} is {t[(u2, v2)]}")
    return None


def _class_coefficients(t: Tensor, cong: Congruence) -> dict:
    out = {}
    for (u, v), c in t.items():
        out[(cong.forest_canonical_form(u), cong.forest_canonical_form(v))] = c
    return out


def subalgebra_check(cong: Congruence, sig: Signature, max_degree: int) -> SubalgebraReport:
    """Check that class sums span a Hopf subalgebra up to ``max_degree``.

    Products and coproducts of class sums must have coefficients constant on
    classes (on each tensor leg for coproducts).  When the congruence exposes
    a quotient operad, the induced coproduct coefficients are also compared
    with the natural Hopf algebra of that operad.
    """
    if not sig.positive:
        raise UnsupportedError("subalgebra_check needs a positive signature")
    alg = NaturalHopfAlgebra(FreeOperad(sig))
    report = SubalgebraReport(ok=True, congruence=cong.name, max_degree=max_degree)
    reps: dict[tuple, Forest] = {}
    for f in forests_up_to(sig, max_degree):
        reps.setdefault(cong.forest_canonical_form(f), f)
    reps_list = sorted(reps.values(), key=lambda f: (f.degree, f.sort_key))
    report.classes = len(reps_list)
    sums = {f: e_class(alg, f, cong) for f in reps_list}

    def fail(msg: str) -> SubalgebraReport:
        report.ok = False
        report.failure = msg
        return report

    for f in reps_list:
        for g in reps_list:
            if f.degree + g.degree > max_degree:
                continue
            x = sums[f] * sums[g]
            report.products_checked += 1
            msg = _constant_on_classes(x, cong)
            if msg:
                return fail(f"product E_[{f}]·E_[{g}]: {msg}")

    quotient = None
    if hasattr(cong, "quotient_operad"):
        quotient = NaturalHopfAlgebra(cong.quotient_operad())
    for f in reps_list:
        t = alg.coproduct(sums[f])
        report.coproducts_checked += 1
        msg = _tensor_constant_on_classes(t, cong)
        if msg:
            return fail(f"coproduct of E_[{f}]: {msg}")
        induced = _class_coefficients(t, cong)
        report.coproducts[cong.forest_canonical_form(f)] = induced
        if quotient is not None:
            expected = quotient.word_coproduct(cong.to_quotient(f))
            got = {(tuple(x.letters for x in u), tuple(x.letters for x in v)): c
                   for (u, v), c in expected.items()}
            report.quotient_checked += 1
            if got != induced:
                return fail(f"coproduct of E_[{f}] differs from the quotient operad")
    return report
