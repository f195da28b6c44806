"""Human-readable and JSON renderings of analyses.  Elements always appear
by name."""

from __future__ import annotations

import json

from .assembly import AssemblyAnalysis, Verdict
from .core import as_group

SCHEMA_VERSION = 1
MARK = {True: "✓", False: "✗", None: "-"}


def _witness_names(t, witness) -> list | None:
    if witness is None:
        return None
    return [t.names[x] if isinstance(x, int) else x for x in witness]


def _pair(t, pair) -> str:
    return "(" + ",".join(t.names[x] for x in pair) + ")"


def _verdict_dict(t, v: Verdict) -> dict:
    d = {"holds": v.holds}
    if v.witness is not None:
        d["witness"] = _witness_names(t, v.witness)
    return d


def analysis_dict(a: AssemblyAnalysis) -> dict:
    t = a.subject
    n = t.names
    axioms = {
        "A1": _verdict_dict(t, a.a1),
        "A2": _verdict_dict(t, a.a2),
        "A3": _verdict_dict(t, a.a3),
    }
    if a.a1_candidates:
        axioms["A1"]["idempotents_fixing"] = {
            n[x]: [n[f] for f in fs] for x, fs in sorted(a.a1_candidates.items())
        }
    if a.a3_failures:
        axioms["A3"]["failures"] = [[n[x], n[y]] for x, y in a.a3_failures]
    order = a.idempotent_order
    return {
        "schema": SCHEMA_VERSION,
        "kind": "group" if as_group(t) is not None else "semigroup",
        "order": t.order,
        "elements": list(n),
        "assembly": a.is_assembly,
        "axioms": axioms,
        "e_map": None if a.e_map is None else {n[x]: n[e] for x, e in enumerate(a.e_map)},
        "s_map": None if a.s_map is None else {n[x]: n[s] for x, s in enumerate(a.s_map)},
        "idempotents": a.idempotent_set.names(),
        "clifford_blocks": None if a.clifford is None else {n[e]: b.names() for e, b in a.clifford.items()},
        "strong": _verdict_dict(t, a.strong),
        "idempotents_commute": _verdict_dict(t, a.idempotents_commute),
        "idempotent_order_total": {
            "holds": order.holds,
            "failures": {k: _witness_names(t, w) for k, w in order.failures.items()},
        },
        "semilattice_of_groups": a.is_semilattice_of_groups,
    }


def analysis_json(a: AssemblyAnalysis) -> str:
    return json.dumps(analysis_dict(a), indent=2, ensure_ascii=False) + "\n"


def analysis_text(a: AssemblyAnalysis) -> str:
    t = a.subject
    n = t.names
    out = [f"order {t.order}: {' '.join(n)}"]
    line = f"A1 {MARK[a.a1.holds]} A2 {MARK[a.a2.holds]} A3 {MARK[a.a3.holds]}"
    if a.a1.holds is False:
        x = a.a1.witness[0]
        fixing = ", ".join(n[f] for f in a.a1_candidates.get(x, ())) or "none"
        line += f" witness {n[x]} (no local identity; idempotents fixing it: {fixing})"
    elif a.a2.holds is False:
        line += f" witness {n[a.a2.witness[0]]} (no local inverse)"
    elif a.a3.holds is False:
        line += f" witness {_pair(t, a.a3.witness)}"
    out.append(line)
    out.append("assembly: " + ("yes" if a.is_assembly else "no"))
    if a.a3_failures:
        out.append("A3 fails at:")
        tab = t.table
        for x, y in a.a3_failures:
            xy = tab[x][y]
            out.append(
                f"  {_pair(t, (x, y))}: {n[x]}·{n[y]} = {n[xy]}, e({n[x]}·{n[y]}) = {n[a.e_map[xy]]}, "
                f"e({n[x]})·e({n[y]}) = {n[tab[a.e_map[x]][a.e_map[y]]]}"
            )
    if a.e_map is not None:
        out.append("e: " + ", ".join(f"{n[x]}->{n[e]}" for x, e in enumerate(a.e_map)))
    if a.s_map is not None:
        out.append("s: " + ", ".join(f"{n[x]}->{n[s]}" for x, s in enumerate(a.s_map)))
    out.append("idempotents: {" + ", ".join(a.idempotent_set.names()) + "}")
    if a.clifford is not None:
        out.append("Clifford blocks:")
        for e, block in a.clifford.items():
            out.append(f"  S_{n[e]} = {{{', '.join(block.names())}}}")
    out.append(_verdict_line(t, "strong", a.strong))
    out.append(_verdict_line(t, "idempotents commute", a.idempotents_commute))
    order = a.idempotent_order
    line = f"idempotent order total: {MARK[order.holds]}"
    for k, w in order.failures.items():
        line += f" [{k} fails at {_pair(t, w)}]"
    out.append(line)
    out.append(f"semilattice of groups: {MARK[a.is_semilattice_of_groups]}")
    return "\n".join(out) + "\n"


def _verdict_line(t, label: str, v: Verdict) -> str:
    s = f"{label}: {MARK[v.holds]}"
    if v.witness is not None:
        s += f" witness {_pair(t, v.witness)}"
    return s
