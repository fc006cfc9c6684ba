"""Fundamental (F) and homogeneous (H) bases of the free natural Hopf algebra.

Both are defined through the easterly wind order:

    F_f = sum_{f <= f'} mu(f, f') E_f'        H_f = sum_{f' <= f} F_f'

Their products are computed without going back to ``E``: ``H`` multiplies
through :func:`under`, ``F`` through the interval between :func:`over` and
:func:`under`.
"""
from __future__ import annotations

from typing import Sequence

from .core import LEAF, Forest, Term, UnsupportedError, full_compose
from .hopf import BASES, HopfElement, NaturalHopfAlgebra
from .lattice import between, lower_set, mobius_downward, mobius_upward, upper_set
from .operad import FreeOperad


def _free(alg: NaturalHopfAlgebra) -> None:
    if not isinstance(alg.operad, FreeOperad):
        raise UnsupportedError("F and H bases exist only over a free operad")
    if not alg.operad.signature.positive:
        raise UnsupportedError("F and H bases need a positive signature")


def _linear(x: HopfElement, source: str, target: str, on_basis) -> HopfElement:
    if x.basis != source:
        raise ValueError(f"expected a {source}-basis element, got {x.basis}")
    _free(x.algebra)
    out: dict = {}
    for f, c in x.items():
        for g, m in on_basis(Forest(f)).items():
            out[g] = out.get(g, 0) + c * m
    return HopfElement(out, x.algebra, target)


def _f_to_e(f: Forest) -> dict:
    return mobius_upward(f) if f else {f: 1}


def _e_to_f(f: Forest) -> dict:
    return dict.fromkeys(upper_set(f), 1) if f else {f: 1}


def _h_to_f(f: Forest) -> dict:
    return dict.fromkeys(lower_set(f), 1) if f else {f: 1}


def _f_to_h(f: Forest) -> dict:
    return mobius_downward(f) if f else {f: 1}


def f_to_e(x: HopfElement) -> HopfElement:
    return _linear(x, "F", "E", _f_to_e)


def e_to_f(x: HopfElement) -> HopfElement:
    return _linear(x, "E", "F", _e_to_f)


def h_to_f(x: HopfElement) -> HopfElement:
    return _linear(x, "H", "F", _h_to_f)


def f_to_h(x: HopfElement) -> HopfElement:
    return _linear(x, "F", "H", _f_to_h)


def convert(x: HopfElement, target: str) -> HopfElement:
    """Re-express ``x`` in basis ``target`` (one of ``E``, ``F``, ``H``)."""
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if x.basis == target:
        return x
    if x.basis == "E":
        x = e_to_f(x)
    elif x.basis == "H":
        x = h_to_f(x)
    if target == "E":
        return f_to_e(x)
    if target == "H":
        return f_to_h(x)
    return x


def basis_element(alg: NaturalHopfAlgebra, f: Sequence[Term], basis: str) -> HopfElement:
    return HopfElement({Forest(f): 1}, alg, basis)


# ---------------------------------------------------------------------------
# over / under
# ---------------------------------------------------------------------------

def extremal_leaves(t: Term) -> list[int]:
    """1-based indices of the leaves of ``t`` after which no internal node occurs in preorder."""
    if t.is_leaf:
        raise ValueError("a bare leaf has no extremal leaves")
    tokens: list[bool] = []  # True for a leaf

    def walk(s: Term):
        if s.is_leaf:
            tokens.append(True)
            return
        tokens.append(False)
        for c in s.children:
            walk(c)

    walk(t)
    last_node = max(i for i, leaf in enumerate(tokens) if not leaf)
    out, k = [], 0
    for i, leaf in enumerate(tokens):
        if leaf:
            k += 1
            if i > last_node:
                out.append(k)
    return out


def over(f: Sequence[Term], g: Sequence[Term]) -> Forest:
    return Forest(f) + Forest(g)


def under(f: Sequence[Term], g: Sequence[Term]) -> Forest:
    """Graft the terms of ``g`` in order onto the extremal leaves of the last term of ``f``.

    The extremal leaves are taken in the original last term; terms of ``g``
    beyond their number stay as trailing terms.
    """
    f, g = Forest(f), Forest(g)
    if not f:
        return g
    if not g:
        return f
    last = f[-1]
    slots = extremal_leaves(last)
    m = min(len(slots), len(g))
    args = [LEAF] * last.arity
    for k in range(m):
        args[slots[k] - 1] = g[k]
    return f[:-1] + (full_compose(last, args),) + g[m:]


def product_in_basis(x: HopfElement, y: HopfElement, tag: str | None = None) -> HopfElement:
    """Product computed natively in the ``E``, ``F`` or ``H`` basis."""
    tag = tag or x.basis
    if x.basis != tag or y.basis != tag:
        raise ValueError(f"basis mismatch: {x.basis} * {y.basis} in {tag}")
    if x.algebra != y.algebra:
        raise TypeError("elements of different Hopf algebras")
    alg = x.algebra
    if tag == "E":
        return alg.product(x, y)
    _free(alg)
    out: dict = {}
    for f1, c1 in x.items():
        for f2, c2 in y.items():
            c = c1 * c2
            if tag == "H":
                keys = [under(f1, f2)]
            else:
                lo, hi = over(f1, f2), under(f1, f2)
                keys = between(lo, hi) if lo else [lo]
            for k in keys:
                out[k] = out.get(k, 0) + c
    return HopfElement(out, alg, tag)
