"""Acceptance criteria 1-11.  Each check returns ``(passed, detail)``; the
pytest wrapper prints one PASS/FAIL line per criterion and then asserts.

Run standalone with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import itertools
import time
from functools import lru_cache
from pathlib import Path

import pytest

from assemblies.assembly import check_axioms, semilattice_of_groups_witness, band_of_groups_witness
from assemblies.census import (
    EQUIVALENCES,
    census_tables,
    enumerate_canonical_tables,
    enumerate_semigroups,
    naive_canonical_tables,
)
from assemblies.cli import run
from assemblies.constructions import (
    chain_assembly,
    coset_assembly,
    cyclic_group,
    left_zero_band,
    normal_subgroup_semilattice,
    rees_paper,
    symmetric_group,
)
from assemblies.core import direct_product, nonclosed_idempotents_example
from assemblies.errors import InconsistencyError
from assemblies.morphisms import components, enumerate_homomorphisms, image, injectivity_report, kernel
from assemblies.report import analysis_text
from assemblies.substructures import (
    centre,
    intersect_subassemblies,
    is_closed,
    is_subassembly,
    setwise_product_subassemblies,
)
from assemblies.textformat import parse_table, read_table, render_table

FIXTURES = Path(__file__).parent / "fixtures"


@lru_cache(maxsize=None)
def assemblies_up_to(n):
    return tuple(t for t in census_tables(n) if check_axioms(t).is_assembly)


def _nonempty_subsets(n):
    for r in range(1, n + 1):
        yield from itertools.combinations(range(n), r)


def criterion_1():
    start = time.perf_counter()
    t = rees_paper()
    a = check_axioms(t)
    n = t.index
    b, c = n("B"), n("C")
    bc = t.mul(b, c)
    e_bc = t.names[a.e(bc)]
    eb_ec = t.names[t.mul(a.e(b), a.e(c))]
    minus_a_sq = t.names[t.mul(n("-A"), n("-A"))]
    text = analysis_text(a)
    reported = "  (B,C): B·C = A, e(B·C) = A, e(B)·e(C) = -A\n" in text
    elapsed = time.perf_counter() - start
    ok = (
        a.a1.holds is True
        and a.a2.holds is True
        and a.a3.holds is False
        and (b, c) in a.a3_failures
        and reported
        and e_bc == "A"
        and eb_ec == "-A"
        and minus_a_sq == "A"
        and n("-A") not in a.idempotent_set
        and elapsed < 1.0
    )
    headline = ",".join(t.names[x] for x in a.a3.witness)
    return ok, (
        f"A1/A2/A3 = {a.a1.holds}/{a.a2.holds}/{a.a3.holds}; (B,C) reported: e(BC)={e_bc}, "
        f"e(B)e(C)={eb_ec}, (-A)^2={minus_a_sq}; headline witness ({headline}) of "
        f"{len(a.a3_failures)} failing pairs; {elapsed:.3f}s"
    )


def criterion_2():
    start = time.perf_counter()
    cases = [(2, 1, 3), (2, 2, 7), (2, 3, 15), (3, 1, 4), (3, 2, 13), (5, 1, 6)]
    details = []
    ok = True
    for p, k, size in cases:
        g = cyclic_group(p**k)
        t = coset_assembly(g)
        a = check_axioms(t)
        prod = direct_product(g.base, normal_subgroup_semilattice(g))
        good = (
            t.order == size == sum(p**i for i in range(k + 1))
            and prod.order == (k + 1) * p**k
            and a.is_assembly
            and bool(a.idempotents_commute)
        )
        ok &= good
        details.append(f"C{p}^{k}:{t.order}/{prod.order}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 5.0
    return ok, " ".join(details) + f"; {elapsed:.2f}s"


def _equivalence(name):
    bad = []
    for n in range(1, 5):
        for r in enumerate_semigroups(n):
            if not EQUIVALENCES[name](r):
                bad.append(r.canonical_table.table)
    return bad


def criterion_3():
    start = time.perf_counter()
    counts = [len(enumerate_canonical_tables(n)) for n in range(1, 5)]
    naive = [len(naive_canonical_tables(n)) for n in range(1, 4)]
    bad = _equivalence("assembly <=> band of groups")
    # recompute directly, without the census record
    direct_bad = 0
    for t in census_tables(4):
        if check_axioms(t).is_assembly != (band_of_groups_witness(t) is not None):
            direct_bad += 1
    elapsed = time.perf_counter() - start
    ok = counts == [1, 5, 24, 188] and naive == counts[:3] and not bad and not direct_bad and elapsed < 600
    return ok, f"counts {counts}, naive {naive}, discrepancies {len(bad)}/{direct_bad}; {elapsed:.1f}s"


def criterion_4():
    bad_central = _equivalence("assembly & commuting idempotents <=> assembly & central idempotents")
    bad_witness = _equivalence("assembly & commuting idempotents <=> semilattice of groups")
    direct_bad = 0
    for t in census_tables(4):
        a = check_axioms(t)
        lhs = a.is_assembly and bool(a.idempotents_commute)
        mid = a.is_assembly and bool(a.idempotents_central)
        rhs = semilattice_of_groups_witness(t) is not None
        direct_bad += not (lhs == mid == rhs)
    ok = not bad_central and not bad_witness and not direct_bad
    return ok, f"discrepancies central {len(bad_central)}, witness {len(bad_witness)}, direct {direct_bad}"


def criterion_5():
    bad = _equivalence("union of groups & commuting idempotents => assembly")
    checked = 0
    direct_bad = 0
    for t in census_tables(4):
        a = check_axioms(t)
        if a.is_union_of_groups and a.idempotents_commute:
            checked += 1
            direct_bad += a.a3.holds is not True
    return not bad and not direct_bad, f"{checked} tables checked, discrepancies {len(bad)}/{direct_bad}"


def criterion_6():
    bad = []
    checked = 0
    for t in assemblies_up_to(4):
        a = check_axioms(t)
        if a.idempotents_commute:
            checked += 1
            if a.is_strong != a.idempotent_order.holds:
                bad.append(t.table)
    lz = check_axioms(left_zero_band(2))
    edge = lz.is_strong and not lz.idempotent_order.holds and "total" in lz.idempotent_order.failures
    edge_note = "total fails at (a,b)" if lz.idempotent_order.failures.get("total") == (0, 1) else "?"
    return not bad and edge, (
        f"{checked} commuting-idempotent assemblies, discrepancies {len(bad)}; "
        f"left_zero_band(2): strong={lz.is_strong}, order total={lz.idempotent_order.holds} ({edge_note})"
    )


def criterion_7():
    t = direct_product(chain_assembly(2), chain_assembly(2))
    a = check_axioms(t)
    witness = tuple(t.names[x] for x in a.strong.witness) if a.strong.witness else None
    small = assemblies_up_to(3)
    failures = sum(
        not check_axioms(direct_product(s, u)).is_assembly for s, u in itertools.product(small, repeat=2)
    )
    ok = a.is_assembly and not a.is_strong and witness == ("(0,1)", "(1,0)") and failures == 0
    return ok, f"chain2^2 assembly={a.is_assembly} strong={a.is_strong} witness {witness}; " \
        f"{len(small) ** 2} census products, {failures} failures"


def criterion_8():
    t = nonclosed_idempotents_example()
    a = check_axioms(t)
    E = set(a.idempotent_set.names())
    am = t.names[t.mul(t.index("A"), t.index("M"))]
    witness = t.names[a.a1.witness[0]] if a.a1.witness else None
    ok = E == {"0", "A", "M"} and am == "AM" and am not in E and not a.is_assembly and witness == "AM"
    return ok, f"E={sorted(E)}, A·M={am}, assembly={a.is_assembly}, A1 fails at {witness}"


def criterion_9():
    small = assemblies_up_to(4)
    homs = [h for s, u in itertools.product(small, repeat=2) for h in enumerate_homomorphisms(s, u)]
    preserve = kernel_ok = image_ok = injective_ok = 0
    example = None
    for h in homs:
        a, b = h.source_analysis, h.target_analysis
        if all(h(a.e(x)) == b.e(h(x)) and h(a.s(x)) == b.s(h(x)) for x in h.source.elements):
            preserve += 1
        try:
            ker = set(kernel(h))
        except InconsistencyError:
            ker = None
        E = set(a.idempotent_set)
        pre = {x for x in h.source.elements if h(x) in {h(e) for e in E}}
        union = set()
        for c in components(h).values():
            union |= c.kernel
        if ker is not None and ker == pre == union and E <= ker:
            kernel_ok += 1
        if is_subassembly(b, image(h)):
            image_ok += 1
        r = injectivity_report(h)
        if r.agree:
            injective_ok += 1
        elif example is None:
            example = h
    g2 = cyclic_group(2).base
    constants = []
    for n in (2, 4):
        hs = enumerate_homomorphisms(coset_assembly(cyclic_group(n)), g2)
        constants.append(len(hs) == 1 and hs[0].is_constant)
    total = len(homs)
    ok = preserve == kernel_ok == image_ok == injective_ok == total and all(constants)
    detail = (
        f"{total} homomorphisms: e/s preserved {preserve}, kernel {kernel_ok}, image {image_ok}, "
        f"injective<=>Ker=E {injective_ok}; Hom(A(C2),C2), Hom(A(C4),C2) constant only: {constants}"
    )
    if example is not None:
        detail += (
            f"; first disagreement {h_desc(example)} has Ker=E but is not injective"
        )
    return ok, detail


def h_desc(h):
    return "{" + ", ".join(f"{x}->{y}" for x, y in h.pairs()) + "}"


def criterion_10():
    crit_ok = crit_total = inter = prods = 0
    for t in assemblies_up_to(4):
        a = check_axioms(t)
        subs = []
        for b in _nonempty_subsets(t.order):
            crit_total += 1
            c = bool(is_subassembly(a, b))
            crit_ok += c == bool(is_closed(a, b))
            if c:
                subs.append(b)
        for b1, b2 in itertools.combinations(subs, 2):
            intersect_subassemblies(a, b1, b2)
            inter += 1
        if t.is_commutative:
            for b1, b2 in itertools.product(subs, repeat=2):
                setwise_product_subassemblies(a, b1, b2)
                prods += 1
    s3 = coset_assembly(symmetric_group(3))
    a3 = [i for i, name in enumerate(s3.names) if set(name[1:-1].split(",")) <= {"123", "231", "312"}]
    a3_ok = len(a3) == 4 and bool(is_subassembly(check_axioms(s3), a3))
    centres = all(
        list(centre(t)) == list(t.elements) for t in assemblies_up_to(4) if t.is_commutative
    )
    lz_empty = len(centre(left_zero_band(2))) == 0
    ok = crit_ok == crit_total and a3_ok and centres and lz_empty
    return ok, (
        f"criterion<=>closure {crit_ok}/{crit_total} subsets; {inter} intersections and {prods} products "
        f"re-certified; A(A3) in A(S3): {a3_ok}; commutative centres whole: {centres}; "
        f"left_zero_band(2) centre empty: {lz_empty}"
    )


CORRUPTION = {
    "unknown-name.sgt": "unknown name",
    "wrong-arity.sgt": "wrong arity",
    "duplicate-name.sgt": "duplicate name",
    "missing-table.sgt": "missing section",
    "missing-kind.sgt": "missing section",
    "not-a-group.sgt": "not a group",
    "garbled.sgt": "not associative",
}


def criterion_11():
    shipped = sorted(FIXTURES.glob("*.sgt"))
    round_trips = sum(parse_table(render_table(read_table(p))) == read_table(p) for p in shipped)
    census = census_tables(3)
    census_trips = sum(parse_table(render_table(t)) == t for t in census)
    corrupt_ok = 0
    for name, category in CORRUPTION.items():
        err = io.StringIO()
        code = run(["validate", str(FIXTURES / "corrupt" / name)], io.StringIO(), err)
        corrupt_ok += code == 2 and category in err.getvalue()
    ok = round_trips == len(shipped) and census_trips == len(census) and corrupt_ok == len(CORRUPTION)
    return ok, (
        f"fixtures {round_trips}/{len(shipped)}, census {census_trips}/{len(census)}, "
        f"corruption {corrupt_ok}/{len(CORRUPTION)} with exit 2"
    )


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


def _line(k, ok, detail):
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + _line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k, check in enumerate(CRITERIA, start=1):
        ok, detail = check()
        results.append(ok)
        print(_line(k, ok, detail), flush=True)
    print(f"{sum(results)}/{len(results)} criteria pass")
