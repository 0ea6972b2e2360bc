"""
Group expressions and their word-problem oracles.

A GroupExpr is a small tree: leaves ArtinA(n), ArtinD4, FreeAbelian(names),
PureBraid(k); nodes Product(children) and CentralQuotient(child, z). Every
expression has a labeled generator set, a presentation, and an oracle deciding
triviality of words in those generators.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Union

from app.algebra.coxeter import CoxeterSystem, type_a, type_d4
from app.algebra.garside import delta_power_of, is_trivial as garside_trivial
from app.algebra.linrep import artin_presentation
from app.algebra.presentation import (
    Presentation,
    direct_product,
    free_abelian_presentation,
    normalize_relators,
    quotient_by_words,
)
from app.algebra.word import (
    GeneratorMap,
    Word,
    apply_map,
    concat,
    exponent_sum,
    invert,
    parse_word,
    render_word,
)
from app.core.exceptions import GroupExprError, UnknownGeneratorError
from app.core.logging import logger

ARTIN_A = "ArtinA"
ARTIN_D4 = "ArtinD4"
FREE_ABELIAN = "FreeAbelian"
PURE_BRAID = "PureBraid"
PRODUCT = "Product"
CENTRAL_QUOTIENT = "CentralQuotient"

LEAF_KINDS = (ARTIN_A, ARTIN_D4, FREE_ABELIAN, PURE_BRAID)
KINDS = LEAF_KINDS + (PRODUCT, CENTRAL_QUOTIENT)


@dataclass(frozen=True)
class GroupExpr:
    kind: str
    children: tuple["GroupExpr", ...] = ()
    param: Union[int, str, None] = None
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GroupExprError(f"unknown group kind {self.kind!r}")
        if self.kind in LEAF_KINDS and self.children:
            raise GroupExprError(f"{self.kind} takes no children")
        if self.kind == CENTRAL_QUOTIENT and (len(self.children) != 1 or not isinstance(self.param, str)):
            raise GroupExprError("CentralQuotient needs one child and a center word")
        if self.kind == PRODUCT and not self.children:
            raise GroupExprError("Product needs at least one child")
        if self.kind in (ARTIN_A, PURE_BRAID) and (not isinstance(self.param, int) or self.param < 1):
            raise GroupExprError(f"{self.kind} needs a positive integer parameter")
        if self.kind == CENTRAL_QUOTIENT:
            # centrality and the power bound are checked when the oracle is built
            computable_group(self)

    def to_dict(self) -> dict:
        data: dict = {"kind": self.kind, "children": [c.to_dict() for c in self.children], "param": self.param}
        if self.names:
            data["names"] = list(self.names)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "GroupExpr":
        try:
            kind = data["kind"]
        except (KeyError, TypeError):
            raise GroupExprError(f"malformed group expression {data!r}") from None
        children = tuple(cls.from_dict(c) for c in data.get("children", []))
        names = tuple(data.get("names", ()))
        param = data.get("param")
        if kind == ARTIN_A:
            return artin_a(param, names or None)
        if kind == FREE_ABELIAN:
            return free_abelian(names or tuple(f"z{i}" for i in range(1, int(param or 0) + 1)))
        return cls(kind, children, param, names)

    def __str__(self) -> str:
        return describe(self)


def artin_a(n: int, names: Optional[tuple[str, ...]] = None) -> GroupExpr:
    """B_n on the given atom names (default s1..s{n-1})."""
    if not isinstance(n, int) or n < 1:
        raise GroupExprError(f"ArtinA needs n >= 1 (got {n!r})")
    names = tuple(names) if names else tuple(f"s{k}" for k in range(1, n))
    if len(names) != n - 1:
        raise GroupExprError(f"ArtinA({n}) needs {n - 1} atom names")
    return GroupExpr(ARTIN_A, (), n, names)


def artin_d4() -> GroupExpr:
    return GroupExpr(ARTIN_D4)


def free_abelian(names) -> GroupExpr:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise GroupExprError(f"duplicate free-abelian generators {names}")
    return GroupExpr(FREE_ABELIAN, (), len(names), names)


def pure_braid(k: int) -> GroupExpr:
    return GroupExpr(PURE_BRAID, (), k)


def product(*children: GroupExpr) -> GroupExpr:
    return GroupExpr(PRODUCT, tuple(children))


def central_quotient(child: GroupExpr, center: Union[Word, str]) -> GroupExpr:
    """G / <z>; raises GroupExprError when z is not central in G."""
    text = render_word(center) if isinstance(center, Word) else center
    return GroupExpr(CENTRAL_QUOTIENT, (child,), text)


def describe(e: GroupExpr) -> str:
    if e.kind == ARTIN_A:
        return f"B{e.param}"
    if e.kind == ARTIN_D4:
        return "A(D4)"
    if e.kind == FREE_ABELIAN:
        return f"Z^{e.param}" if e.param != 1 else "Z"
    if e.kind == PURE_BRAID:
        return f"PB{e.param}"
    if e.kind == PRODUCT:
        return "×".join(describe(c) for c in e.children)
    return f"{describe(e.children[0])}/<{e.param}>"


# Pure braid groups


def pure_braid_name(i: int, j: int) -> str:
    return f"A{i}{j}" if j < 10 else f"A{i}_{j}"


def pure_braid_generators(k: int) -> tuple[str, ...]:
    return tuple(pure_braid_name(i, j) for j in range(2, k + 1) for i in range(1, j))


def band_word(i: int, j: int) -> Word:
    """A_ij = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1 in the atoms of B_k."""
    outer = Word.of(*(f"s{m}" for m in range(j - 1, i, -1)))
    return outer * Word.of(f"s{i}", f"s{i}") * invert(outer)


def pure_braid_embedding(k: int) -> GeneratorMap:
    return GeneratorMap({pure_braid_name(i, j): band_word(i, j) for j in range(2, k + 1) for i in range(1, j)})


def pure_braid_relators(k: int) -> list[Word]:
    """
    Classical relators: for r < s, i < j with s < j,
        A_rs^-1 A_ij A_rs = A_ij                                   s < i or i < r
                          = A_rj A_ij A_rj^-1                       s = i
                          = A_rj A_sj A_ij A_sj^-1 A_rj^-1          r = i
                          = [A_rj, A_sj] A_ij [A_rj, A_sj]^-1       r < i < s
    """

    def a(x: int, y: int) -> Word:
        return Word.letter(pure_braid_name(x, y))

    relators = []
    pairs = [(i, j) for j in range(2, k + 1) for i in range(1, j)]
    for r, s in pairs:
        for i, j in pairs:
            if not s < j:
                continue
            conj = invert(a(r, s)) * a(i, j) * a(r, s)
            if s < i or i < r:
                rhs = a(i, j)
            elif s == i:
                rhs = a(r, j) * a(i, j) * invert(a(r, j))
            elif r == i:
                rhs = a(r, j) * a(s, j) * a(i, j) * invert(a(s, j)) * invert(a(r, j))
            else:
                c = a(r, j) * a(s, j) * invert(a(r, j)) * invert(a(s, j))
                rhs = c * a(i, j) * invert(c)
            relators.append(conj * invert(rhs))
    return relators


@functools.lru_cache(maxsize=None)
def pure_braid_presentation(k: int) -> tuple[Presentation, GeneratorMap]:
    """
    Presentation of PB_k on the A_ij with its embedding into the atoms s1..s{k-1} of B_k.

    Raises:
        GroupExprError: k < 1
    """
    if k < 1:
        raise GroupExprError(f"pure braid group needs k >= 1 (got {k})")
    p = normalize_relators(Presentation.create(pure_braid_generators(k), pure_braid_relators(k)))
    return p, pure_braid_embedding(k)


def full_twist_word(k: int) -> Word:
    """(A12)(A13 A23)(A14 A24 A34)..., the generator of the center of PB_k."""
    return Word.of(*(pure_braid_name(i, j) for j in range(2, k + 1) for i in range(1, j)))


def twist_exponent(name: str) -> int:
    """The homomorphism PB_k -> Z with A12 -> 1 and every other A_ij -> 0."""
    return 1 if name == pure_braid_name(1, 2) else 0


def is_pure(k: int, w: Word) -> bool:
    """The underlying permutation of the embedded braid is the identity."""
    system = type_a(k)
    image = apply_map(pure_braid_embedding(k), w)
    return system.from_word(name for name, _ in image.letters) == system.identity


# Generators, presentations, oracles


def generators(e: GroupExpr) -> tuple[str, ...]:
    if e.kind == ARTIN_A:
        return e.names
    if e.kind == ARTIN_D4:
        return type_d4().atoms
    if e.kind == FREE_ABELIAN:
        return e.names
    if e.kind == PURE_BRAID:
        return pure_braid_generators(e.param)
    if e.kind == PRODUCT:
        return tuple(g for c in e.children for g in generators(c))
    return generators(e.children[0])


@functools.lru_cache(maxsize=None)
def expr_presentation(e: GroupExpr) -> Presentation:
    """A presentation of the group an expression denotes."""
    if e.kind == ARTIN_A:
        return artin_presentation(type_a(e.param, e.names))
    if e.kind == ARTIN_D4:
        return artin_presentation(type_d4())
    if e.kind == FREE_ABELIAN:
        return free_abelian_presentation(e.names)
    if e.kind == PURE_BRAID:
        return pure_braid_presentation(e.param)[0]
    if e.kind == PRODUCT:
        return direct_product([expr_presentation(c) for c in e.children])
    child = e.children[0]
    return quotient_by_words(expr_presentation(child), [parse_word(e.param, generators(child))])


def artin_embedding(e: GroupExpr) -> Optional[tuple[CoxeterSystem, GeneratorMap]]:
    """Embedding of a leaf into an Artin group with a Garside structure, if it has one."""
    if e.kind == ARTIN_A:
        system = type_a(e.param, e.names)
        return system, GeneratorMap.identity(system.atoms)
    if e.kind == ARTIN_D4:
        system = type_d4()
        return system, GeneratorMap.identity(system.atoms)
    if e.kind == PURE_BRAID:
        return type_a(e.param), pure_braid_embedding(e.param)
    return None


class GroupOracle:
    """Decides the word problem for one group expression."""

    def __init__(self, expr: GroupExpr, trivial: Callable[[Word], bool]):
        self.expr = expr
        self.generators = generators(expr)
        self._known = frozenset(self.generators)
        self._trivial = trivial

    def _check_alphabet(self, w: Word) -> None:
        for name, _ in w.letters:
            if name not in self._known:
                raise UnknownGeneratorError(name)

    def is_trivial(self, w: Word) -> bool:
        self._check_alphabet(w)
        return self._trivial(w)

    def equal(self, u: Word, v: Word) -> bool:
        return self.is_trivial(concat(u, invert(v)))

    def __repr__(self) -> str:
        return f"GroupOracle({describe(self.expr)})"


def _restrict(w: Word, names: frozenset[str]) -> Word:
    return Word(tuple(letter for letter in w.letters if letter[0] in names))


def degree(w: Word, weight: Mapping[str, int]) -> int:
    return sum(sign * weight.get(name, 0) for name, sign in w.letters)


def degree_weights(p: Presentation) -> list[dict[str, int]]:
    """
    Homomorphisms p -> Z given by generator weights: the total degree and each
    single exponent sum, kept when every relator has degree 0.
    """
    candidates = [{g: 1 for g in p.generators}] + [{g: 1} for g in p.generators]
    return [wt for wt in candidates if all(degree(r, wt) == 0 for r in p.relators)]


@functools.lru_cache(maxsize=None)
def computable_group(e: GroupExpr) -> GroupOracle:
    """
    Word-problem oracle for e.

    Raises:
        GroupExprError: a CentralQuotient's center word is not central, or has
            degree 0 under every relator-compatible weight
    """
    embedding = artin_embedding(e)
    if embedding is not None:
        system, emb = embedding
        return GroupOracle(e, lambda w: garside_trivial(system, apply_map(emb, w)))

    if e.kind == FREE_ABELIAN:
        names = e.names
        return GroupOracle(e, lambda w: all(exponent_sum(w, g) == 0 for g in names))

    if e.kind == PRODUCT:
        parts = [(computable_group(c), frozenset(generators(c))) for c in e.children]
        return GroupOracle(e, lambda w: all(o.is_trivial(_restrict(w, names)) for o, names in parts))

    child = e.children[0]
    child_oracle = computable_group(child)
    z = parse_word(e.param, child_oracle.generators)
    for g in child_oracle.generators:
        a = Word.letter(g)
        if not child_oracle.equal(z * a, a * z):
            raise GroupExprError(f"center word {e.param} does not commute with {g} in {describe(child)}")

    if not z or child_oracle.is_trivial(z):
        return GroupOracle(e, child_oracle.is_trivial)

    child_embedding = artin_embedding(child)
    if child_embedding is not None:
        system, emb = child_embedding
        d = delta_power_of(system, apply_map(emb, z))
        if d:
            logger.debug(f"{describe(e)}: center word is Δ^{d}")

            def trivial(w: Word) -> bool:
                p = delta_power_of(system, apply_map(emb, w))
                return p is not None and p % d == 0

            return GroupOracle(e, trivial)

    # w = z^m forces degree(w) = m * degree(z) for any degree vanishing on the relators
    weight = next((wt for wt in degree_weights(expr_presentation(child)) if degree(z, wt)), None)
    if weight is None:
        raise GroupExprError(f"center word {e.param} has degree 0 in {describe(child)}; its powers cannot be bounded")
    dz = degree(z, weight)

    def power_of_center(w: Word) -> bool:
        dw = degree(w, weight)
        return dw % dz == 0 and child_oracle.equal(w, z ** (dw // dz))

    return GroupOracle(e, power_of_center)
