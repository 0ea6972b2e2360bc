"""
Surface-indexed constructors for pure mapping class groups.

Gervais presentations of PMod(1,3,0) and PMod(1,2,0), boundary capping, the
genus-0 product groups, and the elimination plans that collapse each genus-1
presentation onto its braid or Artin model.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Union

from app.algebra.coxeter import B4_ATOMS, type_b4_handles, type_d4
from app.algebra.groups import (
    GroupExpr,
    artin_a,
    artin_d4,
    central_quotient,
    expr_presentation,
    free_abelian,
    full_twist_word,
    product,
    pure_braid,
    pure_braid_presentation,
)
from app.algebra.linrep import artin_relators
from app.algebra.presentation import (
    Presentation,
    eliminate_generator,
    normalize_relators,
    quotient_by_words,
)
from app.algebra.word import EMPTY, GeneratorMap, Word, commutator, invert
from app.core.config import settings
from app.core.exceptions import UnknownGeneratorError, UnsupportedRowError

__all__ = [
    "SurfaceTriple",
    "GervaisData",
    "StarRelation",
    "good_triples",
    "star_words",
    "gervais_presentation",
    "boundary_curves",
    "cap_boundary",
    "pure_braid_presentation",
    "full_twist_word",
    "genus_zero_expr",
    "genus_zero_split_expr",
    "CollapseStage",
    "RowPlan",
    "row_plan",
    "table_rows",
    "RowModel",
    "row_model",
    "row_presentation",
]


@dataclass(frozen=True)
class SurfaceTriple:
    """Genus, boundary components, punctures."""

    g: int
    b: int
    n: int

    def __post_init__(self):
        if min(self.g, self.b, self.n) < 0:
            raise UnsupportedRowError(f"negative entry in surface triple {self}")

    def __str__(self) -> str:
        return f"({self.g},{self.b},{self.n})"

    @property
    def label(self) -> str:
        return f"PMod{self}"

    @property
    def supported(self) -> bool:
        if self.g == 0:
            return self.b >= 1
        return self.g == 1 and self.b + self.n <= 3


@dataclass(frozen=True)
class StarRelation:
    """One star relation: boundary side c_ij c_jk c_ki against (a_i a_j a_k b)^3."""

    triple: tuple[int, int, int]
    boundary_word: Word
    raw_word: Word
    emitted_word: Word

    @property
    def relator(self) -> Word:
        return self.boundary_word * invert(self.emitted_word)


@dataclass(frozen=True)
class GervaisData:
    presentation: Presentation
    curve_roles: dict[str, str] = field(hash=False)
    triple: SurfaceTriple = SurfaceTriple(1, 3, 0)


def good_triples(k: int) -> list[tuple[int, int, int]]:
    """Good triples (i, j, k) with i <= j < k; only three boundary components are supported."""
    if k != 3:
        raise UnsupportedRowError(f"good triples are only tabulated for 3 boundary components (got {k})")
    return [(i, j, l) for l in range(1, k + 1) for j in range(1, l) for i in range(1, j + 1)]


def _handle(i: int) -> str:
    return f"a{i}"


def _boundary(i: int, j: int) -> str:
    return f"c{i}{j}"


def handle_delta(i: int, k: int) -> Word:
    """(a_i b a_k)^4, the center generator of the B4 spanned by a_i, b, a_k."""
    return Word.of(_handle(i), "b", _handle(k)) ** 4


def d4_delta() -> Word:
    return Word.of("a1", "a2", "a3", "b") ** 3


_SUPPORTED_GERVAIS = {SurfaceTriple(1, 3, 0): 3, SurfaceTriple(1, 2, 0): 2}

# Handle curve a_i meets exactly one boundary-adjacent curve on the three-holed torus.
_HANDLE_CROSSING = {"a1": "c32", "a2": "c13", "a3": "c21"}

# Boundary curves commuting with every other c.
_CENTRAL_BOUNDARY = ("c12", "c23", "c31")


def _boundary_count(t: SurfaceTriple) -> int:
    try:
        return _SUPPORTED_GERVAIS[t]
    except KeyError:
        raise UnsupportedRowError(f"no Gervais presentation tabulated for {t}") from None


def star_words(t: SurfaceTriple) -> list[StarRelation]:
    """Star relations of the presentation, with c_ll = 1 and degenerate sides rewritten."""
    count = _boundary_count(t)
    stars = []
    for i, j, k in good_triples(3):
        if k > count:
            continue
        boundary = Word.of(
            *(_boundary(x, y) for x, y in ((i, j), (j, k), (k, i)) if x != y)
        )
        raw = Word.of(_handle(i), _handle(j), _handle(k), "b") ** 3
        emitted = handle_delta(i, k) if i == j else d4_delta()
        stars.append(StarRelation((i, j, k), boundary, raw, emitted))
    return stars


def boundary_curves(t: SurfaceTriple) -> tuple[str, ...]:
    """The boundary twists capped in turn along the capping chains."""
    if t == SurfaceTriple(1, 3, 0):
        return ("c12", "c23", "c31")
    if t == SurfaceTriple(1, 2, 0):
        return ("c12", "c21")
    raise UnsupportedRowError(f"no boundary curves tabulated for {t}")


@functools.lru_cache(maxsize=None)
def gervais_presentation(t: SurfaceTriple) -> GervaisData:
    """
    Gervais presentation of PMod(1,3,0) (ten generators) or PMod(1,2,0) (five).

    Two twists commute when their curves are disjoint, braid when they meet
    once, and each good triple contributes a star relator.

    Raises:
        UnsupportedRowError: t is neither (1,3,0) nor (1,2,0)
    """
    count = _boundary_count(t)
    handles = tuple(_handle(i) for i in range(1, count + 1))
    boundary = tuple(
        _boundary(i, j) for i, j in ((1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)) if max(i, j) <= count
    )
    system = type_d4() if count == 3 else type_b4_handles()

    relators: list[Word] = list(artin_relators(system))
    for a in handles:
        for c in boundary:
            if _HANDLE_CROSSING.get(a) != c:
                relators.append(commutator(Word.letter(a), Word.letter(c)))
    for c in boundary:
        relators.append(commutator(Word.letter("b"), Word.letter(c)))
    for pos, c in enumerate(boundary):
        for d in boundary[pos + 1:]:
            if c in _CENTRAL_BOUNDARY or d in _CENTRAL_BOUNDARY:
                relators.append(commutator(Word.letter(c), Word.letter(d)))
    relators.extend(star.relator for star in star_words(t))

    generators = ("b",) + handles + boundary
    roles = {"b": "central_b"}
    roles.update({a: f"handle_a({a[1:]})" for a in handles})
    roles.update({c: f"boundary_c({c[1]},{c[2]})" for c in boundary})
    presentation = normalize_relators(Presentation.create(generators, relators))
    return GervaisData(presentation, roles, t)


def cap_boundary(gd: Union[GervaisData, Presentation], c: str) -> Presentation:
    """Kill the boundary twist c and drop it from the generators."""
    p = gd.presentation if isinstance(gd, GervaisData) else gd
    if c not in p.generators:
        raise UnknownGeneratorError(c)
    return eliminate_generator(quotient_by_words(p, [Word.letter(c)]), c, EMPTY)


def genus_zero_expr(m: int, n: int) -> GroupExpr:
    """Z^{m-1} × PB_{m+n-1} on generators d1..d{m-1} and A_ij."""
    if m < 2:
        raise UnsupportedRowError(f"genus-0 rows need m >= 2 (got m={m})")
    k = m + n - 1
    return product(free_abelian(tuple(f"d{i}" for i in range(1, m))), pure_braid(k))


def genus_zero_split_expr(m: int, n: int) -> GroupExpr:
    """Z^m × PB_{m+n-1}/Z(PB_{m+n-1}); defined only for m + n >= 3."""
    if m < 2 or m + n < 3:
        raise UnsupportedRowError(f"the split form needs m >= 2 and m + n >= 3 (got m={m}, n={n})")
    k = m + n - 1
    return product(
        free_abelian(tuple(f"d{i}" for i in range(1, m + 1))),
        central_quotient(pure_braid(k), full_twist_word(k)),
    )


@dataclass(frozen=True)
class CollapseStage:
    """Eliminations performed in order, then the expected target and relators kept beside it."""

    eliminations: tuple[tuple[str, Word], ...]
    target: GroupExpr
    kept_relators: tuple[Word, ...] = ()


@dataclass(frozen=True)
class RowPlan:
    triple: SurfaceTriple
    target_name: str
    source: SurfaceTriple
    caps: tuple[str, ...]
    stages: tuple[CollapseStage, ...]

    @property
    def claim(self) -> str:
        return f"{self.triple.label} ≅ {self.target_name}"


def _c(name: str) -> Word:
    return Word.letter(name)


def _b4() -> GroupExpr:
    return artin_a(4, B4_ATOMS)


def _d4_with(*names: str) -> GroupExpr:
    return product(artin_d4(), free_abelian(names)) if names else artin_d4()


def _b4_with(*names: str) -> GroupExpr:
    return product(_b4(), free_abelian(names)) if names else _b4()


@functools.lru_cache(maxsize=None)
def row_plan(t: SurfaceTriple) -> RowPlan:
    """
    Capping chain and eliminations for a genus-1 row.

    Raises:
        UnsupportedRowError: t is not one of the seven genus-1 rows
    """
    x12, x13, x23, delta = handle_delta(1, 2), handle_delta(1, 3), handle_delta(2, 3), d4_delta()
    inv = invert
    three, two = SurfaceTriple(1, 3, 0), SurfaceTriple(1, 2, 0)
    key = (t.g, t.b, t.n)

    if key == (1, 3, 0):
        return RowPlan(t, "A(D4)×Z^2", three, (), (
            CollapseStage(
                (("c21", inv(_c("c12")) * x12), ("c13", x13 * inv(_c("c31"))), ("c32", inv(_c("c23")) * x23)),
                _d4_with("c12", "c31", "c23"),
                (_c("c12") * _c("c23") * _c("c31") * inv(delta),),
            ),
            CollapseStage(
                (("c31", inv(_c("c23")) * inv(_c("c12")) * delta),),
                _d4_with("c12", "c23"),
            ),
        ))
    if key == (1, 2, 1):
        return RowPlan(t, "A(D4)×Z", three, ("c31",), (
            CollapseStage(
                (("c21", inv(_c("c12")) * x12), ("c13", x13), ("c32", inv(_c("c23")) * x23)),
                _d4_with("c12", "c23"),
                (_c("c12") * _c("c23") * inv(delta),),
            ),
            CollapseStage((("c23", inv(_c("c12")) * delta),), _d4_with("c12")),
        ))
    if key == (1, 1, 2):
        return RowPlan(t, "A(D4)", three, ("c31", "c23"), (
            CollapseStage(
                (("c21", inv(_c("c12")) * x12), ("c13", x13), ("c32", x23)),
                _d4_with("c12"),
                (_c("c12") * inv(delta),),
            ),
            CollapseStage((("c12", delta),), _d4_with()),
        ))
    if key == (1, 0, 3):
        return RowPlan(t, "A(D4)/Z(A(D4))", three, ("c31", "c23", "c12"), (
            CollapseStage(
                (("c21", x12), ("c13", x13), ("c32", x23)),
                central_quotient(artin_d4(), delta),
            ),
        ))
    if key == (1, 2, 0):
        return RowPlan(t, "B4×Z", two, (), (
            CollapseStage((), _b4_with("c12", "c21"), (_c("c12") * _c("c21") * inv(x12),)),
            CollapseStage((("c21", inv(_c("c12")) * x12),), _b4_with("c12")),
        ))
    if key == (1, 1, 1):
        return RowPlan(t, "B4", two, ("c21",), (
            CollapseStage((("c12", x12),), _b4()),
        ))
    if key == (1, 0, 2):
        return RowPlan(t, "B4/Z(B4)", two, ("c21", "c12"), (
            CollapseStage((), central_quotient(_b4(), x12)),
        ))
    raise UnsupportedRowError(f"{t} is not a genus-1 row of the table")


GENUS_ONE_ROWS = (
    SurfaceTriple(1, 3, 0),
    SurfaceTriple(1, 2, 1),
    SurfaceTriple(1, 1, 2),
    SurfaceTriple(1, 0, 3),
    SurfaceTriple(1, 2, 0),
    SurfaceTriple(1, 1, 1),
    SurfaceTriple(1, 0, 2),
)


def table_rows(bound: int | None = None) -> list[SurfaceTriple]:
    """Every genus-0 row with 2 <= m and m + n <= bound, then the genus-1 rows."""
    bound = settings.desk_scale_bound if bound is None else bound
    genus_zero = [
        SurfaceTriple(0, m, n) for m in range(2, bound + 1) for n in range(0, bound - m + 1)
    ]
    return genus_zero + list(GENUS_ONE_ROWS)


@dataclass(frozen=True)
class RowModel:
    """A row's group as a presentation, with the generator map onto its target expression."""

    triple: SurfaceTriple
    source: Presentation
    generator_map: GeneratorMap
    target: GroupExpr


@functools.lru_cache(maxsize=None)
def row_model(t: SurfaceTriple) -> RowModel:
    """
    Genus 0: the product expression itself under the identity map.
    Genus 1: the capped Gervais presentation, and the composite of the
    capping and elimination substitutions into the final target.
    """
    if t.g == 0:
        expr = genus_zero_expr(t.b, t.n)
        p = expr_presentation(expr)
        return RowModel(t, p, GeneratorMap.identity(p.generators), expr)

    plan = row_plan(t)
    original = gervais_presentation(plan.source).presentation
    p = original
    mapping = GeneratorMap.identity(original.generators)
    base = GeneratorMap.identity(original.generators)
    for c in plan.caps:
        p = cap_boundary(p, c)
        mapping = base.updated(**{c: EMPTY}).compose(mapping)
    for stage in plan.stages:
        for g, defining in stage.eliminations:
            mapping = base.updated(**{g: defining}).compose(mapping)
    restricted = GeneratorMap({g: mapping[g] for g in p.generators})
    return RowModel(t, p, restricted, plan.stages[-1].target)


def row_presentation(t: SurfaceTriple, stage: int = 0) -> Presentation:
    """The row's presentation after its caps and the first `stage` collapse stages."""
    if t.g == 0:
        return expr_presentation(genus_zero_expr(t.b, t.n))
    plan = row_plan(t)
    if not 0 <= stage <= len(plan.stages):
        raise UnsupportedRowError(f"{t} has stages 0..{len(plan.stages)} (got {stage})")
    p = gervais_presentation(plan.source).presentation
    for c in plan.caps:
        p = cap_boundary(p, c)
    for collapse in plan.stages[:stage]:
        for g, defining in collapse.eliminations:
            p = eliminate_generator(p, g, defining)
    return p
