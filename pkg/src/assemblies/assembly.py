"""Assembly axioms, local identities and inverses, Clifford decomposition.

A semigroup is an *assembly* when every element ``x`` has a local identity
``e(x)`` that is absorbed by every other element fixing ``x`` (A1), a local
inverse ``s(x)`` with ``x s(x) = s(x) x = e(x)`` and ``e(s(x)) = e(x)``
(A2), and ``e`` preserves products (A3).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .core import (
    SemigroupTable,
    Subset,
    as_group,
    idempotents,
    require_associative,
)
from .errors import CapExceeded, InconsistencyError, PreconditionError

DEFAULT_WITNESS_CAP = 8


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure.

    ``holds`` is ``None`` when the question does not apply (for instance A3
    on a table without local identities).  ``witness`` is the
    lexicographically first counterexample, when there is one.
    """

    holds: bool | None
    witness: tuple | None = None
    note: str = ""

    def __bool__(self):
        return bool(self.holds)


NOT_APPLICABLE = Verdict(None, note="not applicable")


@dataclass(frozen=True)
class OrderVerdict:
    """The relation ``f <= g  iff  fg = g`` on the idempotents."""

    holds: bool
    reflexive: Verdict
    antisymmetric: Verdict
    transitive: Verdict
    total: Verdict

    def __bool__(self):
        return self.holds

    @property
    def failures(self) -> dict[str, tuple]:
        return {
            name: v.witness
            for name, v in (
                ("reflexive", self.reflexive),
                ("antisymmetric", self.antisymmetric),
                ("transitive", self.transitive),
                ("total", self.total),
            )
            if not v.holds
        }


@dataclass(frozen=True)
class AssemblyAnalysis:
    subject: SemigroupTable
    a1: Verdict
    a2: Verdict
    a3: Verdict
    e_map: tuple[int, ...] | None
    s_map: tuple[int, ...] | None
    idempotent_set: Subset
    clifford: dict[int, Subset] | None
    strong: Verdict
    idempotents_commute: Verdict
    idempotents_central: Verdict
    idempotent_order: OrderVerdict
    # every pair (x, y) with e(xy) != e(x)e(y); empty when A3 holds or does not apply
    a3_failures: tuple[tuple[int, int], ...] = field(default=(), repr=False)
    # elements without a local identity, with the idempotents that fix them
    a1_candidates: dict[int, tuple[int, ...]] = field(default_factory=dict, repr=False)

    @property
    def is_union_of_groups(self) -> bool:
        return bool(self.a1) and bool(self.a2)

    @property
    def is_assembly(self) -> bool:
        return bool(self.a1) and bool(self.a2) and bool(self.a3)

    @property
    def is_strong(self) -> bool:
        return bool(self.strong)

    @property
    def is_semilattice_of_groups(self) -> bool:
        return self.is_assembly and bool(self.idempotents_commute)

    def e(self, x: int) -> int:
        if self.e_map is None:
            raise PreconditionError("A1 fails: no local identity map")
        return self.e_map[x]

    def s(self, x: int) -> int:
        if self.s_map is None:
            raise PreconditionError("A1/A2 fail: no local inverse map")
        return self.s_map[x]


def local_identity_candidates(t: SemigroupTable, x: int) -> list[int]:
    """All ``f`` with ``xf = fx = x`` (idempotent or not)."""
    row, tab = t.table[x], t.table
    return [f for f in t.elements if row[f] == x and tab[f][x] == x]


def _minimal_local_identity(t: SemigroupTable, x: int) -> tuple[int | None, list[int]]:
    fixing = local_identity_candidates(t, x)
    tab = t.table
    for e in fixing:
        if all(tab[e][f] == e and tab[f][e] == e for f in fixing):
            return e, fixing
    return None, fixing


def local_identity(t: SemigroupTable, x: int) -> int | None:
    """The local identity ``e(x)``: the ``e`` with ``xe = ex = x`` such that
    ``ef = fe = e`` for every other ``f`` with ``xf = fx = x``.

    Such an ``e`` is idempotent and unique when it exists.  It need not be
    the only idempotent fixing ``x``: in a chain every element above ``x``
    also fixes ``x``.
    """
    require_associative(t)
    return _minimal_local_identity(t, x)[0]


def _e_map(t: SemigroupTable) -> tuple[list[int | None], dict[int, tuple[int, ...]]]:
    """Local identities, plus the idempotents fixing each element that has none."""
    e_map: list[int | None] = []
    failures = {}
    tab = t.table
    for x in t.elements:
        e, fixing = _minimal_local_identity(t, x)
        e_map.append(e)
        if e is None:
            failures[x] = tuple(f for f in fixing if tab[f][f] == f)
    return e_map, failures


def unique_idempotent_identity(t: SemigroupTable) -> Verdict:
    """Every ``x`` is fixed on both sides by exactly one idempotent.

    Strictly stronger than A1: it fails on any chain of length two or more.
    """
    require_associative(t)
    tab = t.table
    idem = [f for f in t.elements if tab[f][f] == f]
    for x in t.elements:
        fixing = [f for f in idem if tab[x][f] == x and tab[f][x] == x]
        if len(fixing) != 1:
            return Verdict(False, (x,), note=f"candidates: {fixing}")
    return Verdict(True)


def _inverse_candidates(t: SemigroupTable, x: int, e: int, e_map: Sequence[int | None]) -> list[int]:
    tab = t.table
    return [s for s in t.elements if tab[x][s] == e and tab[s][x] == e and e_map[s] == e]


def local_inverse(t: SemigroupTable, x: int, e: int | None = None) -> int | None:
    """The ``s`` with ``xs = sx = e(x)`` and ``e(s) = e(x)``, or ``None``.

    Without the ``e(s) = e(x)`` condition the solution need not be unique:
    in a chain every ``s`` above ``x`` satisfies ``xs = sx = x``.
    """
    require_associative(t)
    if e is None:
        e = local_identity(t, x)
    elif local_identity(t, x) != e:
        raise PreconditionError(f"{t.names[e]} is not the local identity of {t.names[x]}")
    if e is None:
        return None
    e_map, _ = _e_map(t)
    cands = _inverse_candidates(t, x, e, e_map)
    if len(cands) > 1:
        raise InconsistencyError(
            f"local inverse of {t.names[x]} not unique: {[t.names[s] for s in cands]}"
        )
    return cands[0] if cands else None


def check_axioms(t: SemigroupTable) -> AssemblyAnalysis:
    require_associative(t)
    tab = t.table
    E = idempotents(t)
    idem = list(E)

    e_list, ambiguous = _e_map(t)
    if ambiguous:
        first = min(ambiguous)
        a1 = Verdict(False, (first,), note=f"candidates: {list(ambiguous[first])}")
        e_map = None
    else:
        a1 = Verdict(True)
        e_map = tuple(e_list)

    s_map = None
    a2 = NOT_APPLICABLE
    a3 = NOT_APPLICABLE
    a3_failures: list[tuple[int, int]] = []
    clifford = None
    if e_map is not None:
        s_list = []
        for x in t.elements:
            cands = _inverse_candidates(t, x, e_map[x], e_map)
            if len(cands) > 1:
                raise InconsistencyError(
                    f"local inverse of {t.names[x]} not unique: {[t.names[s] for s in cands]}"
                )
            s_list.append(cands[0] if cands else None)
        missing = [x for x, s in enumerate(s_list) if s is None]
        if missing:
            a2 = Verdict(False, (missing[0],))
        else:
            a2 = Verdict(True)
            s_map = tuple(s_list)

        for x in t.elements:
            for y in t.elements:
                if e_map[tab[x][y]] != tab[e_map[x]][e_map[y]]:
                    a3_failures.append((x, y))
        a3 = Verdict(False, a3_failures[0]) if a3_failures else Verdict(True)

        if s_map is not None:
            clifford = {e: t.subset(x for x in t.elements if e_map[x] == e) for e in idem}
            for e, block in clifford.items():
                g = as_group(t, block)
                if g is None or g.base.names[g.identity] != t.names[e]:
                    raise InconsistencyError(
                        f"Clifford block of {t.names[e]} is not a group with identity {t.names[e]}"
                    )

    if a1 and a2 and a3:
        strong = _first_pair(
            t.elements,
            lambda x, y: e_map[tab[x][y]] in (e_map[x], e_map[y]),
        )
    else:
        strong = NOT_APPLICABLE

    commute = _first_pair(idem, lambda f, g: tab[f][g] == tab[g][f])
    central = _first_pair(idem, lambda f, a: tab[f][a] == tab[a][f], second=t.elements)

    return AssemblyAnalysis(
        subject=t,
        a1=a1,
        a2=a2,
        a3=a3,
        e_map=e_map,
        s_map=s_map,
        idempotent_set=E,
        clifford=clifford,
        strong=strong,
        idempotents_commute=commute,
        idempotents_central=central,
        idempotent_order=_idempotent_order(t, idem),
        a3_failures=tuple(a3_failures),
        a1_candidates=ambiguous,
    )


def _first_pair(first, pred, second=None) -> Verdict:
    for x in first:
        for y in (first if second is None else second):
            if not pred(x, y):
                return Verdict(False, (x, y))
    return Verdict(True)


def _idempotent_order(t: SemigroupTable, idem: Sequence[int]) -> OrderVerdict:
    tab = t.table

    def le(f, g):
        return tab[f][g] == g

    reflexive = _first_pair(idem, lambda f, _g: le(f, f))
    antisym = _first_pair(idem, lambda f, g: not (le(f, g) and le(g, f)) or f == g)
    transitive = Verdict(True)
    for f, g, h in itertools.product(idem, repeat=3):
        if le(f, g) and le(g, h) and not le(f, h):
            transitive = Verdict(False, (f, g, h))
            break
    total = _first_pair(idem, lambda f, g: le(f, g) or le(g, f))
    holds = all(v.holds for v in (reflexive, antisym, transitive, total))
    return OrderVerdict(holds, reflexive, antisym, transitive, total)


def _require_assembly(a: AssemblyAnalysis):
    if not a.is_assembly:
        raise PreconditionError("table is not an assembly")


def clifford_decomposition(a: AssemblyAnalysis) -> dict[int, Subset]:
    """Blocks ``S_e = {x : e(x) = e}``, each a group with identity ``e``."""
    if a.clifford is None:
        raise PreconditionError("A1 and A2 must hold for a Clifford decomposition")
    return dict(a.clifford)


def is_strong(a: AssemblyAnalysis) -> Verdict:
    """``e(xy)`` is one of ``e(x)``, ``e(y)`` for all ``x, y``."""
    _require_assembly(a)
    return a.strong


def idempotents_commute(a: AssemblyAnalysis) -> Verdict:
    return a.idempotents_commute


def idempotents_central(a: AssemblyAnalysis) -> Verdict:
    return a.idempotents_central


def idempotent_order_total(a: AssemblyAnalysis) -> OrderVerdict:
    return a.idempotent_order


def idempotent_products_in_pair(a: AssemblyAnalysis) -> Verdict:
    """``fg`` is one of ``f``, ``g`` for all idempotents ``f, g``.

    On an assembly this is equivalent to being strong, computed without ``e``.
    """
    tab = a.subject.table
    return _first_pair(list(a.idempotent_set), lambda f, g: tab[f][g] in (f, g))


def is_semilattice_of_groups(a: AssemblyAnalysis) -> Verdict:
    if not a.is_assembly:
        return Verdict(False, note="not an assembly")
    return a.idempotents_commute


@lru_cache(maxsize=4096)
def analyze(t: SemigroupTable) -> AssemblyAnalysis:
    """Memoized :func:`check_axioms`; tables are immutable and hashable."""
    return check_axioms(t)


# -- band of groups search ------------------------------------------------


@dataclass(frozen=True)
class BandOfGroupsWitness:
    """A product-preserving surjection onto a band whose fibers are groups."""

    subject: SemigroupTable
    band: SemigroupTable
    hom: tuple[int, ...]
    fibers: tuple[Subset, ...]

    @property
    def band_is_commutative(self) -> bool:
        return self.band.is_commutative


def _set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings: block labels for elements 0..n-1."""
    labels = [0] * n

    def rec(i: int, used: int):
        if i == n:
            yield list(labels)
            return
        for b in range(used + 1):
            labels[i] = b
            yield from rec(i + 1, max(used, b + 1))

    if n:
        yield from rec(1, 1)


def _witness_from_labels(t: SemigroupTable, labels: list[int]) -> BandOfGroupsWitness | None:
    tab = t.table
    k = max(labels) + 1
    blocks = [[x for x in t.elements if labels[x] == b] for b in range(k)]
    # block products must land in a single block
    quotient = [[-1] * k for _ in range(k)]
    for x in t.elements:
        for y in t.elements:
            b = labels[tab[x][y]]
            q = quotient[labels[x]][labels[y]]
            if q == -1:
                quotient[labels[x]][labels[y]] = b
            elif q != b:
                return None
    if any(quotient[b][b] != b for b in range(k)):
        return None
    for block in blocks:
        if as_group(t, block) is None:
            return None
    names = [f"[{t.names[block[0]]}]" for block in blocks]
    band = SemigroupTable.from_rows(quotient, names)
    if not band.is_associative:
        raise InconsistencyError("quotient of an associative table is not associative")
    return BandOfGroupsWitness(t, band, tuple(labels), tuple(t.subset(b) for b in blocks))


def band_of_groups_witnesses(t: SemigroupTable, *, cap: int = DEFAULT_WITNESS_CAP) -> Iterator[BandOfGroupsWitness]:
    """Every partition of ``t`` into subgroups that is compatible with the
    product, as a surjection onto the quotient band.

    Never consults local identities or the assembly axioms.
    """
    require_associative(t)
    if t.order > cap:
        raise CapExceeded(f"band-of-groups search on order {t.order} exceeds cap {cap}")
    for labels in _set_partitions(t.order):
        w = _witness_from_labels(t, labels)
        if w is not None:
            yield w


def band_of_groups_witness(t: SemigroupTable, *, cap: int = DEFAULT_WITNESS_CAP) -> BandOfGroupsWitness | None:
    return next(band_of_groups_witnesses(t, cap=cap), None)


def semilattice_of_groups_witness(t: SemigroupTable, *, cap: int = DEFAULT_WITNESS_CAP) -> BandOfGroupsWitness | None:
    return next((w for w in band_of_groups_witnesses(t, cap=cap) if w.band_is_commutative), None)


def band_hom_witness(t: SemigroupTable, bands: Sequence[SemigroupTable], *, commutative: bool = False) -> BandOfGroupsWitness | None:
    """Search surjective homomorphisms from ``t`` onto each of ``bands`` whose
    fibers are groups.  Bands of order above ``|t|`` are skipped."""
    require_associative(t)
    n = t.order
    tab = t.table
    for band in bands:
        k = band.order
        if k > n or (commutative and not band.is_commutative):
            continue
        if any(band.table[b][b] != b for b in band.elements):
            raise PreconditionError("target is not a band")
        btab = band.table
        for images in itertools.product(range(k), repeat=n):
            if len(set(images)) != k:
                continue
            if any(images[tab[x][y]] != btab[images[x]][images[y]] for x in range(n) for y in range(n)):
                continue
            fibers = [[x for x in range(n) if images[x] == b] for b in range(k)]
            if all(as_group(t, f) is not None for f in fibers):
                return BandOfGroupsWitness(t, band, tuple(images), tuple(t.subset(f) for f in fibers))
    return None
