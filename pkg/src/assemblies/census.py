"""Semigroups of small order up to isomorphism, classified."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .assembly import band_of_groups_witnesses, check_axioms
from .core import SemigroupTable
from .errors import CapExceeded, InconsistencyError

log = logging.getLogger(__name__)

MAX_DEFAULT_ORDER = 4
MAX_ORDER = 5


@lru_cache(maxsize=None)
def _perm_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    inverse = np.argsort(perms, axis=1)
    return perms, inverse


def _codes(tables: np.ndarray, n: int) -> np.ndarray:
    # row-major base-n encoding; lexicographic order of tables = numeric order
    weights = n ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return tables.reshape(len(tables), n * n) @ weights


def canonical_rows(rows) -> tuple[tuple[int, ...], ...]:
    """The lexicographically least relabelling of a table.

    Relabelling by ``p`` sends the table ``T`` to ``T'[p(i)][p(j)] = p(T[i][j])``.
    """
    a = np.asarray(rows, dtype=np.int64)
    n = a.shape[0]
    perms, inverse = _perm_arrays(n)
    # T'[i][j] = p(T[q(i)][q(j)]) with q = p^-1
    relabelled = np.take_along_axis(
        perms[:, None, :].repeat(n, axis=1),
        a[inverse[:, :, None], inverse[:, None, :]],
        axis=2,
    )
    best = relabelled[int(np.argmin(_codes(relabelled, n)))]
    return tuple(tuple(int(v) for v in r) for r in best)


def canonical_form(t: SemigroupTable) -> SemigroupTable:
    return SemigroupTable.from_rows(canonical_rows(t.table))


def _assoc_ok(T: list[list[int]], n: int, a: int, b: int) -> bool:
    """Check every associativity instance that reads cell (a, b) and is fully
    determined.  -1 marks an undetermined cell."""
    c = T[a][b]
    row_a = T[a]
    row_b = T[b]
    row_c = T[c]
    for z in range(n):
        # (a b) z = a (b z)
        l, bz = row_c[z], row_b[z]
        if l >= 0 and bz >= 0:
            r = row_a[bz]
            if r >= 0 and l != r:
                return False
    for x in range(n):
        # (x a) b = x (a b)
        xa = T[x][a]
        r = T[x][c]
        if xa >= 0 and r >= 0:
            l = T[xa][b]
            if l >= 0 and l != r:
                return False
        for y in range(n):
            # (x y) b with xy = a reads (a, b): (x y) b = x (y b)
            if T[x][y] == a:
                yb = T[y][b]
                if yb >= 0:
                    r = T[x][yb]
                    if r >= 0 and r != c:
                        return False
            # a (y z) with y z = b reads (a, b): (a y) z = a (y z)
            if T[x][y] == b:
                ay = row_a[x]
                if ay >= 0:
                    l = T[ay][y]
                    if l >= 0 and l != c:
                        return False
    return True


def _search(n: int, first_row: tuple[int, ...] | None) -> set[tuple]:
    """Canonical forms of all associative tables of order ``n`` (optionally
    with a fixed first row), by cell-wise backtracking."""
    T = [[-1] * n for _ in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n)]
    found: set[tuple] = set()
    start = 0
    if first_row is not None:
        for j, v in enumerate(first_row):
            T[0][j] = v
        for j in range(n):
            if not _assoc_ok(T, n, 0, j):
                return found
        start = n

    def rec(k: int):
        if k == len(cells):
            found.add(canonical_rows(T))
            return
        a, b = cells[k]
        for v in range(n):
            T[a][b] = v
            if _assoc_ok(T, n, a, b):
                rec(k + 1)
        T[a][b] = -1

    rec(start)
    return found


def _search_row(args) -> set[tuple]:
    n, row = args
    return _search(n, row)


def enumerate_canonical_tables(n: int, *, workers: int = 1, allow_long: bool = False) -> list[tuple]:
    """Canonical Cayley tables of all semigroups of order ``n`` up to
    isomorphism, sorted lexicographically."""
    if not 1 <= n <= MAX_ORDER:
        raise CapExceeded(f"census order {n} outside 1..{MAX_ORDER}")
    if n > MAX_DEFAULT_ORDER and not allow_long:
        raise CapExceeded(f"census order {n} needs allow_long (long-running)")
    rows = [(n, r) for r in itertools.product(range(n), repeat=n)]
    found: set[tuple] = set()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_search_row, rows, chunksize=max(1, len(rows) // (4 * workers))):
                found |= part
    else:
        for r in rows:
            found |= _search_row(r)
    return sorted(found)


def naive_canonical_tables(n: int) -> list[tuple]:
    """Scan all ``n^(n^2)`` tables; independent check on the backtracking
    search for ``n <= 3``."""
    if n > 3:
        raise CapExceeded("naive scan is limited to order 3")
    found = set()
    rng = range(n)
    for flat in itertools.product(rng, repeat=n * n):
        T = [flat[i * n:(i + 1) * n] for i in rng]
        if all(T[T[x][y]][z] == T[x][T[y][z]] for x in rng for y in rng for z in rng):
            found.add(canonical_rows(T))
    return sorted(found)


@dataclass(frozen=True)
class CensusRecord:
    order: int
    canonical_table: SemigroupTable
    is_band: bool
    is_semilattice: bool
    is_union_of_groups: bool
    is_assembly: bool
    is_strong: bool
    idempotents_commute: bool
    idempotents_central: bool
    is_semilattice_of_groups: bool
    has_band_of_groups_witness: bool
    has_semilattice_of_groups_witness: bool

    FLAGS = (
        "is_band",
        "is_semilattice",
        "is_union_of_groups",
        "is_assembly",
        "is_strong",
        "idempotents_commute",
        "idempotents_central",
        "is_semilattice_of_groups",
        "has_band_of_groups_witness",
        "has_semilattice_of_groups_witness",
    )

    def flags(self) -> dict[str, bool]:
        return {f: getattr(self, f) for f in self.FLAGS}


def classify(t: SemigroupTable) -> CensusRecord:
    a = check_axioms(t)
    band = all(t.table[x][x] == x for x in t.elements)
    witnesses = list(band_of_groups_witnesses(t, cap=max(8, t.order)))
    return CensusRecord(
        order=t.order,
        canonical_table=t,
        is_band=band,
        is_semilattice=band and t.is_commutative,
        is_union_of_groups=a.is_union_of_groups,
        is_assembly=a.is_assembly,
        is_strong=a.is_strong,
        idempotents_commute=bool(a.idempotents_commute),
        idempotents_central=bool(a.idempotents_central),
        is_semilattice_of_groups=a.is_semilattice_of_groups,
        has_band_of_groups_witness=bool(witnesses),
        has_semilattice_of_groups_witness=any(w.band_is_commutative for w in witnesses),
    )


@lru_cache(maxsize=None)
def _census_cached(n: int, allow_long: bool, workers: int) -> tuple[CensusRecord, ...]:
    tables = enumerate_canonical_tables(n, workers=workers, allow_long=allow_long)
    log.info("order %d: %d semigroups up to isomorphism", n, len(tables))
    return tuple(classify(SemigroupTable.from_rows(rows)) for rows in tables)


def enumerate_semigroups(n: int, *, allow_long: bool = False, workers: int = 1) -> list[CensusRecord]:
    return list(_census_cached(n, allow_long, workers))


def census_tables(max_order: int, *, allow_long: bool = False) -> list[SemigroupTable]:
    return [r.canonical_table for n in range(1, max_order + 1) for r in enumerate_semigroups(n, allow_long=allow_long)]


def census_bands(max_order: int) -> list[SemigroupTable]:
    return [t for t in census_tables(max_order) if all(t.table[x][x] == x for x in t.elements)]


@dataclass(frozen=True)
class Discrepancy:
    check: str
    table: SemigroupTable


@dataclass
class CensusSummary:
    order: int
    total: int
    counts: dict[str, int]
    discrepancies: list[Discrepancy]

    @property
    def ok(self) -> bool:
        return not self.discrepancies


EQUIVALENCES = {
    "assembly <=> band of groups": lambda r: r.is_assembly == r.has_band_of_groups_witness,
    "assembly & commuting idempotents <=> semilattice of groups": lambda r: (
        (r.is_assembly and r.idempotents_commute) == r.has_semilattice_of_groups_witness
    ),
    "assembly & commuting idempotents <=> assembly & central idempotents": lambda r: (
        (r.is_assembly and r.idempotents_commute) == (r.is_assembly and r.idempotents_central)
    ),
    "union of groups & commuting idempotents => assembly": lambda r: (
        not (r.is_union_of_groups and r.idempotents_commute) or r.is_assembly
    ),
}


def classify_census(n: int, *, strict: bool = True, allow_long: bool = False) -> CensusSummary:
    """Flag counts for order ``n`` and the population-level equivalences.

    With ``strict`` any violated equivalence raises :class:`InconsistencyError`
    carrying the offending canonical table.
    """
    records = enumerate_semigroups(n, allow_long=allow_long)
    counts = {f: sum(getattr(r, f) for r in records) for f in CensusRecord.FLAGS}
    bad = []
    for r in records:
        for name, check in EQUIVALENCES.items():
            if not check(r):
                bad.append(Discrepancy(name, r.canonical_table))
    if bad and strict:
        d = bad[0]
        raise InconsistencyError(f"order {n}: {d.check} fails on {list(d.table.table)}")
    return CensusSummary(n, len(records), counts, bad)
