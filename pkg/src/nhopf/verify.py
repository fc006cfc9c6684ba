"""Bounded verification suites for the algebraic identities.

Each suite returns a list of :class:`Check` results; a check records how many
cases it examined and the first few failures.  The CLI ``verify`` command and
the test-suite share these routines.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable

from .bases import basis_element, convert, over, product_in_basis, under
from .core import Forest, Signature, enumerate_terms, forests_up_to, preorder_decorations
from .hopf import NaturalHopfAlgebra
from .lattice import Interval, LatticeError, covers, less_equal
from .operad import AssociativeOperad, FreeOperad, MasOperad
from .quotient import MasCongruence, subalgebra_check
from .realization import (
    canonical_alphabet,
    doubling_holds,
    random_alphabet,
    realize,
)
from .special import (
    decorated_forests,
    fdb_construct,
    levels_alphabet,
    nck_coproduct,
    nck_transported_coproduct,
    wqsym_expansion,
    wqsym_realize_element,
)

S_E = Signature.parse("a:1,b:2,c:3")
MAX_REPORTED = 5


@dataclass
class Check:
    name: str
    checked: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, passed: bool, describe: Callable[[], str]) -> None:
        """Count one case; ``describe`` is only called for the first few failures."""
        self.checked += 1
        if not passed:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(describe())

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checked": self.checked,
                "failed": self.failed, "failures": self.failures}


# ---------------------------------------------------------------------------
# Hopf identities
# ---------------------------------------------------------------------------

def _coassociative(alg: NaturalHopfAlgebra, w) -> bool:
    d = alg.word_coproduct(w)
    left = alg.apply_to_leg(d, 0, alg.word_coproduct)
    right = alg.apply_to_leg(d, 1, alg.word_coproduct)
    return left == right


def _counit_laws(alg: NaturalHopfAlgebra, w) -> bool:
    d = alg.word_coproduct(w)
    left = {v: c for (u, v), c in d.items() if not u}
    right = {u: c for (u, v), c in d.items() if not v}
    return left == {w: 1} == right


def _antipode_law(alg: NaturalHopfAlgebra, w) -> bool:
    for side in (0, 1):
        acc = alg.zero()
        for (u, v), c in alg.word_coproduct(w).items():
            if side == 0:
                acc = acc + alg.product(alg.word_antipode(u), alg.E(v)).scale(c)
            else:
                acc = acc + alg.product(alg.E(u), alg.word_antipode(v)).scale(c)
        expected = alg.one() if not w else alg.zero()
        if acc != expected:
            return False
    return True


def hopf_checks(alg: NaturalHopfAlgebra, words: list, label: str, pair_degree: int) -> list[Check]:
    fmt = alg.operad.format_word
    coassoc, counit, antipode, bialg = (Check(f"{label}: {n}") for n in
                                        ("coassociativity", "counit", "antipode", "bialgebra"))
    for w in words:
        coassoc.record(_coassociative(alg, w), lambda: fmt(w))
        counit.record(_counit_laws(alg, w), lambda: fmt(w))
        antipode.record(_antipode_law(alg, w), lambda: fmt(w))
    small = [w for w in words if sum(x.degree for x in w) <= pair_degree]
    for u, v in product(small, repeat=2):
        lhs = alg.word_coproduct(u + v)
        rhs = alg.word_coproduct(u) * alg.word_coproduct(v)
        bialg.record(lhs == rhs, lambda: f"{fmt(u)} | {fmt(v)}")
    return [coassoc, counit, antipode, bialg]


def suite_hopf(max_degree: int = 3) -> list[Check]:
    out = []
    free = NaturalHopfAlgebra(FreeOperad(S_E))
    out += hopf_checks(free, free.basis_up_to(max_degree), "free S_e", 2)
    As = NaturalHopfAlgebra(AssociativeOperad())
    out += hopf_checks(As, As.basis_up_to(max_degree + 1), "As", 2)
    for sig in (Signature.parse("a:2"), Signature.parse("a:2,b:2"), Signature.parse("a:1,b:3")):
        mas = NaturalHopfAlgebra(MasOperad(sig))
        out += hopf_checks(mas, mas.basis_up_to(max_degree), f"MAs {sig}", 2)
    return out


# ---------------------------------------------------------------------------
# Lattice
# ---------------------------------------------------------------------------

_REACH: dict[Forest, frozenset] = {}


def _reachable(f: Forest) -> frozenset:
    # plain BFS over cover moves, independent of the bitset posets
    if f in _REACH:
        return _REACH[f]
    seen, queue = {f}, deque([f])
    while queue:
        g = queue.popleft()
        for h in covers(g):
            if h not in seen:
                seen.add(h)
                queue.append(h)
    res = _REACH[f] = frozenset(seen)
    return res


def _unique_extremum(candidates: set, below: Callable) -> Forest | None:
    # the candidate lying below (resp. above) every other one, if any
    for c in candidates:
        if all(below(c, d) for d in candidates):
            return c
    return None


def suite_lattice(max_degree: int = 3) -> list[Check]:
    order = Check("lattice: less_equal matches cover reachability")
    antisym = Check("lattice: antisymmetry")
    trans = Check("lattice: transitivity")
    invariant = Check("lattice: covers preserve degree and decoration word")
    reduction = Check("lattice: covers are the transitive reduction")
    lattice = Check("lattice: meets and joins exist in every interval")
    mobius = Check("lattice: Möbius zero-sum")
    forests = [f for f in forests_up_to(S_E, max_degree) if f]
    reach = {f: _reachable(f) for f in forests}
    for f in forests:
        for g in forests:
            le = less_equal(f, g)
            order.record(le == (g in reach[f]), lambda: f"{f} vs {g}")
            if le and f != g:
                antisym.record(not less_equal(g, f), lambda: f"{f} vs {g}")
    for f in forests:
        for g in reach[f]:
            for h in reach[g]:
                trans.record(h in reach[f], lambda: f"{f} < {g} < {h}")
    for f in forests:
        cs = covers(f)
        for g in cs:
            invariant.record(g.degree == f.degree and preorder_decorations(g) == preorder_decorations(f),
                             lambda: f"{f} -> {g}")
        above = reach[f] - {f}
        minimal = {g for g in above if not any(h != g and g in _reachable(h) for h in above)}
        reduction.record(minimal == set(cs), lambda: str(f))
    le = lambda x, y: y in _reachable(x)
    for length in range(1, 4):
        for word in product(S_E.names, repeat=length):
            iv = Interval(S_E, word)
            for f in iv.elements:
                for g in iv.elements:
                    ups = {h for h in iv.elements if le(f, h) and le(g, h)}
                    downs = {h for h in iv.elements if le(h, f) and le(h, g)}
                    join = _unique_extremum(ups, le)
                    meet = _unique_extremum(downs, lambda x, y: le(y, x))
                    try:
                        ok = join is not None and meet is not None and \
                            iv.join(f, g) == join and iv.meet(f, g) == meet
                    except LatticeError:
                        ok = False
                    lattice.record(ok, lambda: f"{''.join(word)}: {f}, {g}")
                    if f != g and le(f, g):
                        total = sum(iv.moebius(f, h) for h in iv.elements if le(f, h) and le(h, g))
                        mobius.record(total == 0, lambda: f"{f} < {g}")
    return [order, antisym, trans, invariant, reduction, lattice, mobius]


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------

def suite_bases(max_degree: int = 3) -> list[Check]:
    alg = NaturalHopfAlgebra(FreeOperad(S_E))
    roundtrip = Check("bases: E -> F -> E and H -> F -> H round trips")
    products = Check("bases: F and H products match the E-basis oracle")
    endpoints = Check("bases: over <= under")
    triangular = Check("bases: E/F conversion is unitriangular")
    forests = forests_up_to(S_E, max_degree)
    for f in forests:
        e = basis_element(alg, f, "E")
        h = basis_element(alg, f, "H")
        roundtrip.record(convert(convert(e, "F"), "E") == e and convert(convert(h, "F"), "H") == h,
                         lambda: str(f))
        ef = convert(e, "F")
        triangular.record(ef[f] == 1 and all(less_equal(f, g) for g in ef), lambda: str(f))
    small = forests_up_to(S_E, min(max_degree, 2))
    for f, g in product(small, repeat=2):
        if f and g:
            endpoints.record(less_equal(over(f, g), under(f, g)), lambda: f"{f} | {g}")
        for tag in ("F", "H"):
            x, y = basis_element(alg, f, tag), basis_element(alg, g, tag)
            direct = product_in_basis(x, y, tag)
            oracle = convert(convert(x, "E") * convert(y, "E"), tag)
            products.record(direct == oracle, lambda: f"{tag}: {f} | {g}")
    return [roundtrip, products, endpoints, triangular]


# ---------------------------------------------------------------------------
# Realization
# ---------------------------------------------------------------------------

def suite_realization(max_degree: int = 3, pairs: int = 20, seed: int = 0) -> list[Check]:
    alg = NaturalHopfAlgebra(FreeOperad(S_E))
    rng = random.Random(seed)
    doubling = Check(f"realization: alphabet doubling ({pairs} random pairs)")
    morphism = Check("realization: realize is an algebra morphism")
    graded = Check("realization: realize is graded")
    injective = Check("realization: truncated canonical alphabet separates forests")
    forests = forests_up_to(S_E, max_degree)
    for k in range(pairs):
        A = random_alphabet(rng, S_E, rng.randint(1, 4), f"x{k}_")
        B = random_alphabet(rng, S_E, rng.randint(1, 4), f"y{k}_")
        for f in forests:
            doubling.record(doubling_holds(alg, f, A, B), lambda: f"pair {k}: {f}")
    small = forests_up_to(S_E, min(2, max_degree))
    for k in range(3):
        A = random_alphabet(rng, S_E, 4, f"z{k}_")
        for f, g in product(small, repeat=2):
            x, y = alg.E(f), alg.E(g)
            morphism.record(realize(x * y, A) == realize(x, A) * realize(y, A), lambda: f"{f} | {g}")
        for f in forests:
            graded.record(realize(alg.E(f), A).degrees() <= {f.degree}, lambda: str(f))
    C = canonical_alphabet(S_E, S_E.max_arity, max_degree)
    seen: dict = {}
    for f in forests:
        p = realize(alg.E(f), C)
        injective.record(p not in seen, lambda: f"{f} and {seen[p]}")
        seen.setdefault(p, f)
    return [doubling, morphism, graded, injective]


# ---------------------------------------------------------------------------
# Quotient
# ---------------------------------------------------------------------------

def suite_quotient(max_degree: int = 3) -> list[Check]:
    closure = Check("quotient: MAs classes are the decoration multisets")
    sub = Check("quotient: class sums span a Hopf subalgebra")
    as_match = Check("quotient: MAs on one binary generator matches As")
    for sig in (Signature.parse("a:2,b:2"), Signature.parse("a:1,b:2"), Signature.parse("a:3,b:1")):
        cong = MasCongruence(sig)
        for d in range(1, max_degree + 2):
            groups: dict = {}
            for t in enumerate_terms(sig, d):
                groups.setdefault(cong.canonical_form(t), set()).add(t)
            for key, members in groups.items():
                closure.record(cong.term_class(next(iter(members))) == members,
                               lambda: f"{sig}: {key}")
    for sig in (Signature.parse("a:2"), Signature.parse("a:2,b:2")):
        rep = subalgebra_check(MasCongruence(sig), sig, max_degree)
        sub.record(rep.ok, lambda: f"{sig}: {rep.failure}")
    sig = Signature.parse("a:2")
    mas = NaturalHopfAlgebra(MasOperad(sig))
    As = NaturalHopfAlgebra(AssociativeOperad())
    to_as = lambda w: tuple(As.operad.parse_element(f"alpha_{x.degree + 1}") for x in w)
    for w in mas.basis_up_to(max_degree):
        got = {(to_as(u), to_as(v)): c for (u, v), c in mas.word_coproduct(w).items()}
        as_match.record(got == dict(As.word_coproduct(to_as(w)).items()), lambda: mas.operad.format_word(w))
    return [closure, sub, as_match]


# ---------------------------------------------------------------------------
# Specializations
# ---------------------------------------------------------------------------

def suite_special(max_degree: int = 3) -> list[Check]:
    alg = NaturalHopfAlgebra(FreeOperad(S_E))
    wq = Check("special: WQSym expansion matches realization")
    nck = Check("special: admissible cuts match the transported coproduct")
    fdb = Check("special: FdB class sums realize to distinct polynomials")
    for n in range(1, 5):
        A = levels_alphabet(S_E, n)
        for f in forests_up_to(S_E, max_degree):
            lhs = realize(alg.E(f), A)
            rhs = wqsym_realize_element(wqsym_expansion(f), A.letters)
            wq.record(lhs == rhs, lambda: f"N={n}: {f}")
    for v in range(max_degree + 1):
        for F in decorated_forests(["1", "2"], v):
            nck.record(nck_coproduct(F) == nck_transported_coproduct(F),
                       lambda: " ".join(map(str, F)))
    for s in (1, 2):
        H = fdb_construct(1, s)
        seen: dict = {}
        for w in H.quotient.basis_up_to(min(2, max_degree)):
            p = H.realize(w, 3)
            fdb.record(p not in seen, lambda: f"s={s}: {H.operad.format_word(w)}")
            seen.setdefault(p, w)
    return [wq, nck, fdb]


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "hopf": suite_hopf,
    "lattice": suite_lattice,
    "bases": suite_bases,
    "realization": suite_realization,
    "quotient": suite_quotient,
    "special": suite_special,
}


def run_suites(names: Iterable[str], max_degree: int) -> list[Check]:
    out: list[Check] = []
    for name in names:
        out += SUITES[name](max_degree)
    return out
