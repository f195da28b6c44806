"""Concrete families of semigroups: groups, bands, chains, Rees matrix
semigroups, semilattices of groups, and coset assemblies of finite groups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import (
    DEFAULT_PRODUCT_CAP,
    GroupTable,
    SemigroupTable,
    Subset,
    as_group,
    direct_product,
    require_associative,
    setwise_product,
)
from .errors import CapExceeded, PreconditionError

DEFAULT_GROUP_CAP = 128


def cyclic_group(n: int) -> GroupTable:
    """Additive integers mod ``n``; identity ``0``."""
    if n < 1:
        raise ValueError("n must be positive")
    t = SemigroupTable.from_rows([[(i + j) % n for j in range(n)] for i in range(n)])
    return GroupTable.certify(t)


def trivial_group() -> GroupTable:
    return GroupTable.certify(SemigroupTable.from_rows([[0]], ["1"]))


def sign_group() -> GroupTable:
    """The multiplicative group {1, -1}."""
    return GroupTable.certify(SemigroupTable.from_rows([[0, 1], [1, 0]], ["1", "-1"]))


def symmetric_group(k: int) -> GroupTable:
    """Permutations of ``k`` points in lexicographic order, composed as
    ``(p q)(i) = p(q(i))``, named by their one-line notation."""
    import itertools

    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    rows = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    names = ["".join(str(v + 1) for v in p) for p in perms]
    return GroupTable.certify(SemigroupTable.from_rows(rows, names))


def with_zero(g: SemigroupTable, zero: str = "z") -> SemigroupTable:
    """Adjoin a new element ``zero`` with ``zx = xz = z``."""
    if isinstance(g, GroupTable):
        g = g.base
    require_associative(g)
    n = g.order
    name = zero
    while name in g.index_of:
        name += "'"
    rows = [list(row) + [n] for row in g.table] + [[n] * (n + 1)]
    return SemigroupTable.from_rows(rows, list(g.names) + [name])


def _letters(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"x{i}" for i in range(n)]


def left_zero_band(n: int) -> SemigroupTable:
    """``xy = x`` for all ``x, y``."""
    if n < 1:
        raise ValueError("n must be positive")
    return SemigroupTable.from_rows([[i] * n for i in range(n)], _letters(n))


def right_zero_band(n: int) -> SemigroupTable:
    """``xy = y`` for all ``x, y``."""
    if n < 1:
        raise ValueError("n must be positive")
    return SemigroupTable.from_rows([list(range(n)) for _ in range(n)], _letters(n))


def chain_assembly(n: int) -> SemigroupTable:
    """The chain ``0 < 1 < ... < n-1`` with ``xy = min(x, y)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return SemigroupTable.from_rows([[min(i, j) for j in range(n)] for i in range(n)])


# -- Rees matrix semigroups ------------------------------------------------


@dataclass(frozen=True)
class ReesSpec:
    """``M(I, G, Lambda; P)`` with ``P`` a ``Lambda x I`` matrix over ``G``."""

    group: GroupTable
    rows: int
    cols: int
    sandwich: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "sandwich", tuple(tuple(r) for r in self.sandwich))
        if self.rows < 1 or self.cols < 1:
            raise ValueError("index sets must be non-empty")
        if len(self.sandwich) != self.cols or any(len(r) != self.rows for r in self.sandwich):
            raise ValueError(f"sandwich matrix must be {self.cols}x{self.rows} (Lambda x I)")
        for r in self.sandwich:
            for v in r:
                if not 0 <= v < self.group.order:
                    raise ValueError(f"sandwich entry {v} is not a group element")


def rees_elements(spec: ReesSpec) -> list[tuple[int, int, int]]:
    """Triples ``(i, g, lam)`` in lexicographic order; index order of :func:`rees_matrix`."""
    return [
        (i, g, lam)
        for i in range(spec.rows)
        for g in range(spec.group.order)
        for lam in range(spec.cols)
    ]


def rees_matrix(spec: ReesSpec, names: Sequence[str] | None = None) -> SemigroupTable:
    """``(i, g, lam)(j, h, mu) = (i, g P[lam][j] h, mu)``."""
    G = spec.group
    elems = rees_elements(spec)
    index = {e: k for k, e in enumerate(elems)}
    rows = []
    for i, g, lam in elems:
        row = []
        for j, h, mu in elems:
            row.append(index[(i, G.mul(G.mul(g, spec.sandwich[lam][j]), h), mu)])
        rows.append(row)
    if names is None:
        names = [f"({i + 1},{G.names[g]},{lam + 1})" for i, g, lam in elems]
    return SemigroupTable.from_rows(rows, names)


def rees_paper() -> SemigroupTable:
    """The 8-element union of groups ``M(2, {1,-1}, 2; P)`` with
    ``P = [[1, -1], [1, 1]]`` that fails A3.

    Elements are named after the matrix units they realize under
    ``X * Y = X P Y``: ``A = E11, B = E12, C = E21, D = E22`` and their
    negatives, listed as ``A, B, C, D, -A, -B, -C, -D``.
    """
    G = sign_group()
    spec = ReesSpec(G, 2, 2, ((0, 1), (0, 0)))
    unit = {(0, 0): "A", (0, 1): "B", (1, 0): "C", (1, 1): "D"}
    base = rees_matrix(spec)
    elems = rees_elements(spec)
    named = {}
    for k, (i, g, lam) in enumerate(elems):
        named[("-" if g else "") + unit[(i, lam)]] = k
    order = ["A", "B", "C", "D", "-A", "-B", "-C", "-D"]
    return permuted(base, [named[n] for n in order], order)


def permuted(t: SemigroupTable, order: Sequence[int], names: Sequence[str] | None = None) -> SemigroupTable:
    """Relist the elements of ``t``: new element ``k`` is old element ``order[k]``."""
    pos = {old: new for new, old in enumerate(order)}
    rows = [[pos[t.table[x][y]] for y in order] for x in order]
    if names is None:
        names = [t.names[x] for x in order]
    return SemigroupTable.from_rows(rows, names)


# -- subgroups and cosets --------------------------------------------------


def _subgroup_closure(g: GroupTable, seed) -> frozenset[int]:
    # In a finite group the generated subsemigroup is a subgroup.
    found = {g.identity} | set(seed)
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for x in frontier:
            for y in current:
                for p in (g.mul(x, y), g.mul(y, x)):
                    if p not in found:
                        found.add(p)
                        new.append(p)
        frontier = new
    return frozenset(found)


def _sorted_subgroups(subs) -> list[frozenset[int]]:
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def subgroups(g: GroupTable, *, cap: int = DEFAULT_GROUP_CAP) -> list[Subset]:
    """All subgroups, by adjoining one element at a time to subgroups already
    found, starting from the cyclic ones.  Sorted by size then members."""
    if g.order > cap:
        raise CapExceeded(f"subgroup enumeration on order {g.order} exceeds cap {cap}")
    cyclic = {_subgroup_closure(g, {x}) for x in range(g.order)}
    found = set(cyclic)
    queue = deque(cyclic)
    while queue:
        h = queue.popleft()
        for x in range(g.order):
            if x in h:
                continue
            k = _subgroup_closure(g, h | {x})
            if k not in found:
                found.add(k)
                queue.append(k)
    return [g.base.subset(s) for s in _sorted_subgroups(found)]


def is_normal(g: GroupTable, members) -> bool:
    members = set(members)
    for x in range(g.order):
        xi = g.inverse[x]
        if any(g.mul(g.mul(x, n), xi) not in members for n in members):
            return False
    return True


def normal_subgroups(g: GroupTable, *, cap: int = DEFAULT_GROUP_CAP) -> list[Subset]:
    return [h for h in subgroups(g, cap=cap) if is_normal(g, h)]


@dataclass(frozen=True)
class CosetElement:
    representative: int
    subgroup: int
    member_set: frozenset[int]


def cosets(g: GroupTable, *, cap: int = DEFAULT_GROUP_CAP) -> list[CosetElement]:
    """All distinct cosets ``xN`` over normal subgroups ``N``, grouped by
    subgroup (in :func:`normal_subgroups` order), then by minimal member."""
    out = []
    for k, n in enumerate(normal_subgroups(g, cap=cap)):
        seen = set()
        for x in range(g.order):
            c = frozenset(g.mul(x, m) for m in n)
            if c not in seen:
                seen.add(c)
                out.append(CosetElement(min(c), k, c))
    return out


def coset_assembly(g: GroupTable, *, cap: int = DEFAULT_GROUP_CAP) -> SemigroupTable:
    """All cosets of all normal subgroups under the setwise product.

    Each coset is named by its member set, e.g. ``{1,3}``.
    """
    cs = cosets(g, cap=cap)
    index = {c.member_set: i for i, c in enumerate(cs)}
    rows = []
    for a in cs:
        row = []
        for b in cs:
            p = setwise_product(g.base, a.member_set, b.member_set)
            try:
                row.append(index[p])
            except KeyError:
                raise PreconditionError("setwise product of cosets is not a coset") from None
        rows.append(row)
    names = ["{" + ",".join(g.names[m] for m in sorted(c.member_set)) + "}" for c in cs]
    return SemigroupTable.from_rows(rows, names)


def normal_subgroup_semilattice(g: GroupTable, *, cap: int = DEFAULT_GROUP_CAP) -> SemigroupTable:
    """``n(G)``: the normal subgroups under ``N1 N2``."""
    ns = [frozenset(n) for n in normal_subgroups(g, cap=cap)]
    index = {n: i for i, n in enumerate(ns)}
    rows = [[index[setwise_product(g.base, a, b)] for b in ns] for a in ns]
    names = ["{" + ",".join(g.names[m] for m in sorted(n)) + "}" for n in ns]
    return SemigroupTable.from_rows(rows, names)


def is_semilattice(t: SemigroupTable) -> bool:
    return (
        t.is_associative
        and t.is_commutative
        and all(t.table[x][x] == x for x in t.elements)
    )


def semilattice_times_group(l: SemigroupTable, g: GroupTable, *, cap: int = DEFAULT_PRODUCT_CAP) -> SemigroupTable:
    if not is_semilattice(l):
        raise PreconditionError("first factor is not a semilattice")
    return direct_product(l, g.base, cap=cap)


def group_from_table(t: SemigroupTable) -> GroupTable:
    g = as_group(t)
    if g is None:
        raise PreconditionError("table is not a group")
    return g
