"""Subassemblies, intersections, setwise products, and the centre."""

from __future__ import annotations

from typing import Iterable

from .assembly import AssemblyAnalysis, Verdict, analyze
from .core import SemigroupTable, Subset, require_associative, restrict, setwise_product
from .errors import InconsistencyError, PreconditionError


def _members(a: AssemblyAnalysis, b) -> list[int]:
    members = sorted(set(b))
    if not members:
        raise PreconditionError("subset must be non-empty")
    return members


def is_closed(a: AssemblyAnalysis, b: Iterable[int]) -> Verdict:
    """``b`` is closed under the product, ``e`` and ``s``."""
    if not a.is_assembly:
        raise PreconditionError("ambient table is not an assembly")
    members = _members(a, b)
    mset = set(members)
    tab = a.subject.table
    for x in members:
        if a.e_map[x] not in mset:
            return Verdict(False, ("e", x))
        if a.s_map[x] not in mset:
            return Verdict(False, ("s", x))
    for x in members:
        for y in members:
            if tab[x][y] not in mset:
                return Verdict(False, ("product", x, y))
    return Verdict(True)


def is_subassembly(a: AssemblyAnalysis, b: Iterable[int]) -> Verdict:
    """``x s(y)`` lies in ``b`` for all ``x, y`` in ``b``.

    On success the closure of ``b`` under product, ``e`` and ``s`` is
    re-checked and the restricted table is re-analyzed as an assembly.
    """
    if not a.is_assembly:
        raise PreconditionError("ambient table is not an assembly")
    members = _members(a, b)
    mset = set(members)
    tab, s = a.subject.table, a.s_map
    for x in members:
        for y in members:
            if tab[x][s[y]] not in mset:
                return Verdict(False, (x, y))
    if not is_closed(a, members):
        raise InconsistencyError("subset meets the criterion but is not closed")
    if not analyze(restrict(a.subject, members)).is_assembly:
        raise InconsistencyError("subset meets the criterion but is not an assembly")
    return Verdict(True)


def intersect_subassemblies(a: AssemblyAnalysis, b1: Iterable[int], b2: Iterable[int]) -> Subset:
    """``b1 & b2``; re-certified as a subassembly when non-empty."""
    common = set(b1) & set(b2)
    result = a.subject.subset(common)
    if common and not is_subassembly(a, common):
        raise InconsistencyError("non-empty intersection of subassemblies is not a subassembly")
    return result


def setwise_product_subassemblies(a: AssemblyAnalysis, b1: Iterable[int], b2: Iterable[int]) -> Subset | None:
    """``{xy : x in b1, y in b2}`` in a commutative assembly.

    Returns ``None`` when the ambient table is not commutative.
    """
    t = a.subject
    if not t.is_commutative:
        return None
    prod = setwise_product(t, b1, b2)
    if not is_subassembly(a, prod):
        raise InconsistencyError("setwise product of subassemblies is not a subassembly")
    return t.subset(prod)


def centre(t: SemigroupTable) -> Subset:
    """Elements commuting with every element; may be empty.

    For a non-empty centre of an assembly, subassembly status is re-checked.
    """
    require_associative(t)
    tab = t.table
    z = [x for x in t.elements if all(tab[x][y] == tab[y][x] for y in t.elements)]
    if z:
        a = analyze(t)
        if a.is_assembly and not is_subassembly(a, z):
            raise InconsistencyError("centre of an assembly is not a subassembly")
    return t.subset(z)

