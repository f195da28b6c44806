"""Finite semigroups as Cayley tables.

Elements are dense integer indices ``0..n-1``; names are for presentation
only.  ``table[i][j]`` is the product of element ``i`` by element ``j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapExceeded, NotAssociative, PreconditionError

Triple = tuple[int, int, int]

DEFAULT_PRODUCT_CAP = 4096
DEFAULT_POWER_CAP = 10
DEFAULT_ISO_CAP = 8


def _valid_name(name: str) -> bool:
    return bool(name) and "#" not in name and not any(c.isspace() for c in name)


@dataclass(frozen=True)
class SemigroupTable:
    """A finite magma given by its Cayley table.

    Associativity is not enforced at construction; it is checked lazily and
    cached (see :func:`validate_associativity`).
    """

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        names = tuple(self.names)
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "table", table)
        n = len(names)
        if n == 0:
            raise ValueError("a semigroup table needs at least one element")
        if len(set(names)) != n:
            raise ValueError("element names must be distinct")
        for name in names:
            if not _valid_name(name):
                raise ValueError(f"invalid element name {name!r}")
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError(f"table must be {n}x{n}")
        for row in table:
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"table entry {v} out of range [0, {n})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        if names is None:
            names = [str(i) for i in range(len(rows))]
        return cls(tuple(names), tuple(tuple(r) for r in rows))

    @property
    def order(self) -> int:
        return len(self.names)

    def __len__(self):
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def index_of(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self.index_of[name]
        except KeyError:
            raise KeyError(f"unknown element {name!r}") from None

    def name(self, x: int) -> str:
        return self.names[x]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    @cached_property
    def associativity_witness(self) -> Triple | None:
        return _find_associativity_failure(self.array)

    @property
    def is_associative(self) -> bool:
        return self.associativity_witness is None

    @cached_property
    def is_commutative(self) -> bool:
        a = self.array
        return bool(np.array_equal(a, a.T))

    def renamed(self, names: Sequence[str]) -> "SemigroupTable":
        return SemigroupTable(tuple(names), self.table)

    def subset(self, members: Iterable[int]) -> "Subset":
        return Subset(self, tuple(sorted(set(members))))

    def subset_by_names(self, names: Iterable[str]) -> "Subset":
        return self.subset(self.index(n) for n in names)

    def __repr__(self):
        return f"SemigroupTable(order={self.order}, names={list(self.names)})"


@dataclass(frozen=True)
class Subset:
    """A sorted, duplicate-free set of elements of ``owner``."""

    owner: SemigroupTable = field(repr=False, compare=False)
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        for m in members:
            if not 0 <= m < self.owner.order:
                raise ValueError(f"element {m} not in table of order {self.owner.order}")
        object.__setattr__(self, "members", members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.as_set

    @cached_property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def names(self) -> list[str]:
        return [self.owner.names[m] for m in self.members]

    def __repr__(self):
        return "{" + ", ".join(self.names()) + "}"


@dataclass(frozen=True)
class GroupTable:
    """A semigroup table certified to be a group."""

    base: SemigroupTable
    identity: int
    inverse: tuple[int, ...]

    @classmethod
    def certify(cls, t: SemigroupTable) -> "GroupTable":
        g = as_group(t)
        if g is None:
            raise PreconditionError("table is not a group")
        return g

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def names(self) -> tuple[str, ...]:
        return self.base.names

    def mul(self, x: int, y: int) -> int:
        return self.base.table[x][y]


def _find_associativity_failure(a: np.ndarray) -> Triple | None:
    n = a.shape[0]
    # Light's test: it suffices to check the middle argument over a generating set.
    gens = _greedy_generators(a.tolist())
    ok = True
    for g in gens:
        lhs = a[a[:, g], :]  # (x g) z
        rhs = a[:, a[g, :]]  # x (g z)
        if not np.array_equal(lhs, rhs):
            ok = False
            break
    if ok:
        return None
    for x in range(n):
        lhs = a[a[x, :], :]  # (x y) z, indexed [y, z]
        rhs = a[x, a]  # x (y z), indexed [y, z]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            y, z = bad[0]
            return (x, int(y), int(z))
    raise AssertionError("generator check failed but no failing triple found")


def _greedy_generators(rows: list[list[int]]) -> list[int]:
    n = len(rows)
    closure: set[int] = set()
    gens: list[int] = []
    for x in range(n):
        if x in closure:
            continue
        gens.append(x)
        closure = _magma_closure(rows, {x}, closed=closure)
        if len(closure) == n:
            break
    return gens


def _magma_closure(rows, seed: set[int], closed: set[int] = frozenset()) -> set[int]:
    # `closed` must already be product-closed; only pairs touching new elements are formed.
    found = set(closed) | set(seed)
    frontier = [x for x in seed if x not in closed]
    while frontier:
        new = []
        current = list(found)
        for x in frontier:
            for y in current:
                for p in (rows[x][y], rows[y][x]):
                    if p not in found:
                        found.add(p)
                        new.append(p)
        frontier = new
    return found


def validate_associativity(t: SemigroupTable) -> Triple | None:
    """Return ``None`` if ``t`` is associative, else the lexicographically
    first triple ``(x, y, z)`` with ``(xy)z != x(yz)``."""
    return t.associativity_witness


def require_associative(t: SemigroupTable) -> None:
    w = t.associativity_witness
    if w is not None:
        raise NotAssociative(t, w)


def idempotents(t: SemigroupTable) -> Subset:
    require_associative(t)
    return t.subset(x for x in t.elements if t.table[x][x] == x)


def direct_product(s: SemigroupTable, t: SemigroupTable, *, cap: int = DEFAULT_PRODUCT_CAP) -> SemigroupTable:
    """Componentwise product; element ``(i, j)`` has index ``i*|t| + j``."""
    require_associative(s)
    require_associative(t)
    n, m = s.order, t.order
    if n * m > cap:
        raise CapExceeded(f"direct product order {n * m} exceeds cap {cap}")
    names = [f"({a},{b})" for a in s.names for b in t.names]
    rows = []
    for i in range(n):
        for j in range(m):
            rows.append([s.table[i][k] * m + t.table[j][l] for k in range(n) for l in range(m)])
    return SemigroupTable.from_rows(rows, names)


def setwise_product(t: SemigroupTable, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
    ys = list(ys)
    return frozenset(t.table[x][y] for x in xs for y in ys)


def _set_name(t: SemigroupTable, members: Iterable[int]) -> str:
    return "{" + ",".join(t.names[m] for m in sorted(members)) + "}"


def power_semigroup(t: SemigroupTable, *, cap: int = DEFAULT_POWER_CAP) -> SemigroupTable:
    """Non-empty subsets of ``t`` under the setwise product.

    Subsets are ordered by size, then lexicographically, so the singletons
    come first in element order.
    """
    require_associative(t)
    if t.order > cap:
        raise CapExceeded(f"power semigroup of order-{t.order} table exceeds cap {cap}")
    subsets = [
        frozenset(c)
        for k in range(1, t.order + 1)
        for c in itertools.combinations(t.elements, k)
    ]
    index = {s: i for i, s in enumerate(subsets)}
    rows = [[index[setwise_product(t, x, y)] for y in subsets] for x in subsets]
    return SemigroupTable.from_rows(rows, [_set_name(t, s) for s in subsets])


def closure(t: SemigroupTable, seed: Iterable[int]) -> frozenset[int]:
    return frozenset(_magma_closure(t.table, set(seed)))


def generated_subsemigroup(t: SemigroupTable, seed: Subset | Iterable[int]) -> Subset:
    require_associative(t)
    seed = set(seed)
    if not seed:
        raise PreconditionError("seed must be non-empty")
    return t.subset(closure(t, seed))


def restrict(t: SemigroupTable, members: Iterable[int]) -> SemigroupTable:
    """The subtable on a product-closed subset, keeping element names."""
    members = sorted(set(members))
    pos = {m: i for i, m in enumerate(members)}
    try:
        rows = [[pos[t.table[x][y]] for y in members] for x in members]
    except KeyError:
        raise PreconditionError("subset is not closed under the product") from None
    return SemigroupTable.from_rows(rows, [t.names[m] for m in members])


def as_group(t: SemigroupTable, members: Iterable[int] | None = None) -> GroupTable | None:
    """Certify ``t`` (or the subset ``members`` of it) as a group.

    Returns the group on the restricted table, or ``None``.
    """
    if members is not None:
        members = sorted(set(members))
        mset = set(members)
        if not mset or any(t.table[x][y] not in mset for x in members for y in members):
            return None
        t = restrict(t, members)
    if not t.is_associative:
        return None
    n = t.order
    ident = None
    for e in range(n):
        if all(t.table[e][x] == x == t.table[x][e] for x in range(n)):
            ident = e
            break
    if ident is None:
        return None
    inverse = []
    for x in range(n):
        inv = next((y for y in range(n) if t.table[x][y] == ident == t.table[y][x]), None)
        if inv is None:
            return None
        inverse.append(inv)
    return GroupTable(t, ident, tuple(inverse))


def is_group(t: SemigroupTable, members: Iterable[int] | None = None) -> bool:
    return as_group(t, members) is not None


def _power_profile(t: SemigroupTable, x: int) -> tuple[int, int]:
    """(index, period) of the monogenic subsemigroup generated by ``x``."""
    seen = {}
    p, k = x, 1
    while p not in seen:
        seen[p] = k
        p = t.table[p][x]
        k += 1
    return seen[p], k - seen[p]


def element_invariants(t: SemigroupTable) -> list[tuple]:
    """Isomorphism-invariant signature of each element."""
    n = t.order
    idem = [t.table[x][x] == x for x in range(n)]
    sig = []
    for x in range(n):
        row = t.table[x]
        col = [t.table[y][x] for y in range(n)]
        sig.append((
            idem[x],
            _power_profile(t, x),
            len(set(row)),
            len(set(col)),
            sum(1 for y in range(n) if row[y] == col[y]),
            sum(1 for y in range(n) if row[y] == x),
            sum(1 for y in range(n) if col[y] == x),
            sum(1 for y in range(n) if row[y] == y),
            sum(1 for y in range(n) if col[y] == y),
        ))
    return sig


def are_isomorphic(s: SemigroupTable, t: SemigroupTable, *, cap: int = DEFAULT_ISO_CAP) -> tuple[int, ...] | None:
    """Return a product-preserving bijection ``s -> t`` (as a tuple of images),
    or ``None`` if the tables are not isomorphic."""
    require_associative(s)
    require_associative(t)
    if s.order != t.order:
        return None
    n = s.order
    if n > cap:
        raise CapExceeded(f"isomorphism search on order {n} exceeds cap {cap}")
    sig_s, sig_t = element_invariants(s), element_invariants(t)
    if sorted(sig_s) != sorted(sig_t):
        return None
    candidates = [[y for y in range(n) if sig_t[y] == sig_s[x]] for x in range(n)]
    order = sorted(range(n), key=lambda x: len(candidates[x]))
    image = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def consistent(x: int) -> bool:
        for a in assigned:
            for u, v in ((a, x), (x, a), (x, x)):
                p = s.table[u][v]
                if image[p] >= 0 and image[p] != t.table[image[u]][image[v]]:
                    return False
        return True

    def search(k: int) -> bool:
        if k == n:
            return all(
                image[s.table[u][v]] == t.table[image[u]][image[v]]
                for u in range(n) for v in range(n)
            )
        x = order[k]
        for y in candidates[x]:
            if used[y]:
                continue
            image[x] = y
            used[y] = True
            assigned.append(x)
            if consistent(x) and search(k + 1):
                return True
            assigned.pop()
            used[y] = False
            image[x] = -1
        return False

    return tuple(image) if search(0) else None


def matrix_semigroup(generators: dict[str, np.ndarray], *, zero_name: str = "0", cap: int = 64) -> SemigroupTable:
    """Close a set of square matrices under multiplication.

    Elements are named by the shortest generator word reaching them (breadth
    first), except the zero matrix, which is named ``zero_name``.
    """
    mats: list[np.ndarray] = []
    names: list[str] = []

    def find(m):
        for i, other in enumerate(mats):
            if np.array_equal(m, other):
                return i
        return None

    def add(m, word):
        if find(m) is None:
            if len(mats) >= cap:
                raise CapExceeded(f"matrix closure exceeds {cap} elements")
            mats.append(m)
            names.append(zero_name if not m.any() else word)

    for word, m in generators.items():
        add(np.asarray(m), word)
    i = 0
    while i < len(mats):
        for j in range(i + 1):
            for a, b in ((j, i), (i, j)):
                add(mats[a] @ mats[b], names[a] + names[b])
        i += 1
    rows = [[find(a @ b) for b in mats] for a in mats]
    return SemigroupTable.from_rows(rows, names)


def nonclosed_idempotents_example() -> SemigroupTable:
    """The semigroup {A, M, AM, 0} of 2x2 real matrices with MA = 0.

    Its idempotents A, M, 0 are not closed under the product.
    """
    a = np.array([[1, 0], [0, 0]])
    m = np.array([[0, 1], [0, 1]])
    return matrix_semigroup({"A": a, "M": m})
