"""Homomorphisms between finite semigroups, with the assembly-specific
kernel, image and per-component views."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .assembly import AssemblyAnalysis, Verdict, analyze
from .core import GroupTable, SemigroupTable, Subset, as_group, require_associative
from .errors import CapExceeded, InconsistencyError, PreconditionError
from .substructures import is_subassembly

DEFAULT_MAP_CAP = 10**7


@dataclass(frozen=True)
class HomMap:
    source: SemigroupTable
    target: SemigroupTable
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.order:
            raise PreconditionError("map must be total on the source")
        if any(not 0 <= y < self.target.order for y in self.images):
            raise PreconditionError("map image outside the target")

    @classmethod
    def from_names(cls, source: SemigroupTable, target: SemigroupTable, pairs: Mapping[str, str]) -> "HomMap":
        images = [None] * source.order
        for x, y in pairs.items():
            images[source.index(x)] = target.index(y)
        missing = [source.names[i] for i, y in enumerate(images) if y is None]
        if missing:
            raise PreconditionError(f"map undefined on {', '.join(missing)}")
        return cls(source, target, tuple(images))

    def __call__(self, x: int) -> int:
        return self.images[x]

    @cached_property
    def source_analysis(self) -> AssemblyAnalysis:
        return analyze(self.source)

    @cached_property
    def target_analysis(self) -> AssemblyAnalysis:
        return analyze(self.target)

    @cached_property
    def verdict(self) -> Verdict:
        return _product_preservation(self)

    @property
    def is_constant(self) -> bool:
        return len(set(self.images)) == 1

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.source.names[x], self.target.names[y]) for x, y in enumerate(self.images)]


def _product_preservation(h: HomMap) -> Verdict:
    s, t, phi = h.source.table, h.target.table, h.images
    for x in h.source.elements:
        for y in h.source.elements:
            if phi[s[x][y]] != t[phi[x]][phi[y]]:
                return Verdict(False, (x, y))
    return Verdict(True)


def is_homomorphism(h: HomMap) -> Verdict:
    """Exhaustive product-preservation check.

    When it holds between assemblies, also confirms ``phi(e(x)) = e(phi(x))``
    and ``phi(s(x)) = s(phi(x))`` for every ``x``.
    """
    require_associative(h.source)
    require_associative(h.target)
    v = h.verdict
    if v and h.source_analysis.is_assembly and h.target_analysis.is_assembly:
        a, b = h.source_analysis, h.target_analysis
        for x in h.source.elements:
            if h(a.e(x)) != b.e(h(x)):
                raise InconsistencyError(f"homomorphism does not preserve e at {h.source.names[x]}")
            if h(a.s(x)) != b.s(h(x)):
                raise InconsistencyError(f"homomorphism does not preserve s at {h.source.names[x]}")
    return v


def _generating_words(t: SemigroupTable) -> tuple[list[int], list[tuple[int, int, int]]]:
    """A generating set and a derivation of every other element.

    Returns ``(gens, steps)`` where each step ``(z, x, y)`` defines ``z = xy``
    using elements already reached.
    """
    tab = t.table
    reached: list[int] = []
    seen: set[int] = set()
    gens: list[int] = []
    steps: list[tuple[int, int, int]] = []

    def grow():
        i = 0
        while i < len(reached):
            for j in range(i + 1):
                for x, y in ((reached[j], reached[i]), (reached[i], reached[j])):
                    z = tab[x][y]
                    if z not in seen:
                        seen.add(z)
                        reached.append(z)
                        steps.append((z, x, y))
            i += 1

    for g in t.elements:
        if g in seen:
            continue
        gens.append(g)
        seen.add(g)
        reached.append(g)
        grow()
    return gens, steps


def iter_homomorphisms(s: SemigroupTable, t: SemigroupTable, *, cap: int = DEFAULT_MAP_CAP) -> Iterator[HomMap]:
    """Every homomorphism ``s -> t``, by choosing images of a generating set.

    Idempotent generators may only go to idempotents; the images of the
    remaining elements follow from their derivations, and each completed map
    is checked exhaustively.
    """
    require_associative(s)
    require_associative(t)
    gens, steps = _generating_words(s)
    stab, ttab = s.table, t.table
    t_idem = [y for y in t.elements if ttab[y][y] == y]
    choices = []
    for g in gens:
        choices.append(t_idem if stab[g][g] == g else list(t.elements))
    total = 1
    for c in choices:
        total *= len(c)
    if total > cap:
        raise CapExceeded(f"{total} candidate generator images exceed cap {cap}")

    images = [-1] * s.order

    def rec(k: int) -> Iterator[HomMap]:
        if k == len(gens):
            trial = list(images)
            for z, x, y in steps:
                trial[z] = ttab[trial[x]][trial[y]]
            h = HomMap(s, t, tuple(trial))
            if h.verdict:
                yield h
            return
        g = gens[k]
        for y in choices[k]:
            images[g] = y
            yield from rec(k + 1)
        images[g] = -1

    yield from rec(0)


def enumerate_homomorphisms(s: SemigroupTable, t: SemigroupTable, *, cap: int = DEFAULT_MAP_CAP) -> list[HomMap]:
    return list(iter_homomorphisms(s, t, cap=cap))


def brute_force_homomorphisms(s: SemigroupTable, t: SemigroupTable, *, cap: int = 10**6) -> list[HomMap]:
    """All ``|t|^|s|`` maps, filtered.  Reference for the pruned search."""
    import itertools

    if t.order ** s.order > cap:
        raise CapExceeded("too many maps for brute force")
    out = []
    for images in itertools.product(t.elements, repeat=s.order):
        h = HomMap(s, t, images)
        if h.verdict:
            out.append(h)
    return out


def _require_assembly_hom(h: HomMap, *, target: bool = False):
    if not h.verdict:
        raise PreconditionError("map is not a homomorphism")
    if not h.source_analysis.is_assembly:
        raise PreconditionError("source is not an assembly")
    if target and not h.target_analysis.is_assembly:
        raise PreconditionError("target is not an assembly")


def kernel(h: HomMap) -> Subset:
    """``phi^-1(phi(E))``, cross-checked against the union of the kernels of
    the components and certified a subassembly containing ``E``."""
    _require_assembly_hom(h)
    a = h.source_analysis
    E = list(a.idempotent_set)
    hit = {h(e) for e in E}
    ker = {x for x in h.source.elements if h(x) in hit}
    by_components = {x for x in h.source.elements if h(x) == h(a.e(x))}
    if ker != by_components:
        raise InconsistencyError("kernel differs from the union of component kernels")
    if not set(E) <= ker:
        raise InconsistencyError("kernel does not contain the idempotents")
    if not is_subassembly(a, ker):
        raise InconsistencyError("kernel is not a subassembly")
    return h.source.subset(ker)


@dataclass(frozen=True)
class InjectivityReport:
    injective: bool
    kernel_is_idempotents: bool
    collision: tuple[int, int] | None = field(default=None)

    @property
    def agree(self) -> bool:
        return self.injective == self.kernel_is_idempotents


def injectivity_report(h: HomMap) -> InjectivityReport:
    """Literal injectivity next to the kernel criterion ``Ker = E``."""
    ker = kernel(h)
    E = h.source_analysis.idempotent_set
    first_seen: dict[int, int] = {}
    collision = None
    for x, y in enumerate(h.images):
        if y in first_seen:
            collision = (first_seen[y], x)
            break
        first_seen[y] = x
    return InjectivityReport(collision is None, ker.members == E.members, collision)


def is_injective_hom(h: HomMap) -> bool:
    """Injective iff the kernel equals the idempotents.

    Both sides are computed; a disagreement raises
    :class:`InconsistencyError` naming the colliding pair.
    """
    r = injectivity_report(h)
    if not r.agree:
        names = h.source.names
        detail = f"; {names[r.collision[0]]} and {names[r.collision[1]]} share an image" if r.collision else ""
        raise InconsistencyError(
            f"kernel criterion says injective={r.kernel_is_idempotents}, "
            f"map is injective={r.injective}{detail}"
        )
    return r.injective


@dataclass(frozen=True)
class Component:
    source_identity: int
    target_identity: int
    domain: Subset
    codomain: Subset
    images: dict[int, int]

    @property
    def injective(self) -> bool:
        return len(set(self.images.values())) == len(self.images)

    @property
    def surjective(self) -> bool:
        return set(self.images.values()) == set(self.codomain)

    @property
    def kernel(self) -> frozenset[int]:
        return frozenset(x for x, y in self.images.items() if y == self.images[self.source_identity])


def components(h: HomMap) -> dict[int, Component]:
    """Restrictions ``S_e -> T_phi(e)`` for each idempotent ``e`` of the source,
    each certified a group homomorphism."""
    _require_assembly_hom(h, target=True)
    a, b = h.source_analysis, h.target_analysis
    out = {}
    for e, block in a.clifford.items():
        f = h(e)
        codomain = b.clifford[f]
        imgs = {x: h(x) for x in block}
        if not set(imgs.values()) <= set(codomain):
            raise InconsistencyError(f"component at {h.source.names[e]} leaves the target block")
        if as_group(h.source, block) is None or as_group(h.target, codomain) is None:
            raise InconsistencyError("Clifford block is not a group")
        out[e] = Component(e, f, block, codomain, imgs)
    return out


@dataclass(frozen=True)
class ComponentCriteria:
    """Whole-map injectivity/surjectivity against the component-wise versions."""

    injective: bool
    components_injective: bool
    surjective: bool
    components_cover: bool

    @property
    def injective_agrees(self) -> bool:
        return self.injective == self.components_injective

    @property
    def surjective_agrees(self) -> bool:
        return self.surjective == self.components_cover


def component_criteria(h: HomMap) -> ComponentCriteria:
    comps = components(h)
    b = h.target_analysis
    hit_blocks = {c.target_identity for c in comps.values()}
    covered = set()
    for c in comps.values():
        covered |= set(c.images.values())
    cover = hit_blocks == set(b.clifford) and all(covered >= set(b.clifford[f]) for f in hit_blocks)
    return ComponentCriteria(
        injective=len(set(h.images)) == h.source.order,
        components_injective=all(c.injective for c in comps.values()),
        surjective=set(h.images) == set(h.target.elements),
        components_cover=cover,
    )


def image(h: HomMap) -> Subset:
    """``phi(source)``, certified a subassembly of the target."""
    _require_assembly_hom(h, target=True)
    img = set(h.images)
    if not is_subassembly(h.target_analysis, img):
        raise InconsistencyError("image is not a subassembly")
    return h.target.subset(img)


@dataclass(frozen=True)
class ObstructionReport:
    """Homomorphisms from an assembly with a maximum idempotent to a group.

    ``status`` is one of ``holds`` (every homomorphism is constant),
    ``violated`` (a non-constant one exists, see ``counterexample``),
    ``no_maximum`` or ``not_applicable`` (the source is itself a group).
    """

    status: str
    maximum: int | None = None
    homomorphisms: int = 0
    counterexample: HomMap | None = None

    def __bool__(self):
        return self.status == "holds"


def maximum_idempotent(a: AssemblyAnalysis) -> int | None:
    """The ``m`` with ``fm = m`` for every idempotent ``f``, if any."""
    tab = a.subject.table
    E = list(a.idempotent_set)
    for m in E:
        if all(tab[f][m] == m for f in E):
            return m
    return None


def max_idempotent_obstruction(a: AssemblyAnalysis, g: GroupTable, *, cap: int = DEFAULT_MAP_CAP) -> ObstructionReport:
    if not a.is_assembly:
        raise PreconditionError("source is not an assembly")
    if len(a.idempotent_set) == 1:
        return ObstructionReport("not_applicable")
    m = maximum_idempotent(a)
    if m is None:
        return ObstructionReport("no_maximum")
    homs = enumerate_homomorphisms(a.subject, g.base, cap=cap)
    bad = next((h for h in homs if not h.is_constant), None)
    return ObstructionReport("violated" if bad else "holds", m, len(homs), bad)


def e_map_hom(a: AssemblyAnalysis) -> HomMap:
    """``x -> e(x)`` as a self-map."""
    if a.e_map is None:
        raise PreconditionError("A1 fails: no local identity map")
    return HomMap(a.subject, a.subject, a.e_map)


def identity_hom(t: SemigroupTable) -> HomMap:
    return HomMap(t, t, tuple(t.elements))


def parse_map(source: SemigroupTable, target: SemigroupTable, pairs: Sequence[tuple[str, str]]) -> HomMap:
    return HomMap.from_names(source, target, dict(pairs))
