"""
Finitely presented groups: relator normalization, witnessed Tietze eliminations,
direct products, quotients and abelianization through Smith normal form.

Relators are words equal to 1; a relation u = v is stored as u v^-1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from app.algebra.word import (
    EMPTY,
    GeneratorMap,
    Word,
    apply_map,
    commutator,
    free_reduce,
    invert,
    parse_word,
    render_word,
)
from app.core.exceptions import EliminationError, PresentationError, UnknownGeneratorError
from app.core.logging import logger


def cyclic_reduce(w: Word) -> Word:
    """Freely reduce, then strip matching inverse letters from both ends."""
    letters = free_reduce(w).letters
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo][0] == letters[hi - 1][0] and letters[lo][1] == -letters[hi - 1][1]:
        lo += 1
        hi -= 1
    return Word(letters[lo:hi])


def canonical_relator(w: Word) -> Word:
    """Representative of w up to free/cyclic reduction, rotation and inversion."""
    base = cyclic_reduce(w)
    if not base:
        return EMPTY
    best: Optional[tuple[str, Word]] = None
    for candidate in (base, invert(base)):
        letters = candidate.letters
        for i in range(len(letters)):
            rotated = Word(letters[i:] + letters[:i])
            key = render_word(rotated)
            if best is None or key < best[0]:
                best = (key, rotated)
    return best[1]


def _sort_key(w: Word) -> tuple[int, str]:
    return len(w), render_word(w)


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError(f"duplicate generator names in {self.generators}")
        known = set(self.generators)
        for r in self.relators:
            for name, _ in r.letters:
                if name not in known:
                    raise UnknownGeneratorError(name)
            if not r or cyclic_reduce(r) != r:
                raise PresentationError(
                    f"relator {render_word(r) or '1'} is not a non-empty cyclically reduced word"
                )

    @classmethod
    def create(cls, generators: Iterable[str], relators: Iterable[Word] = ()) -> "Presentation":
        """Build a presentation with freely and cyclically reduced relators."""
        reduced = tuple(r for r in (cyclic_reduce(w) for w in relators) if r)
        return cls(tuple(generators), reduced)

    def relator_set(self) -> frozenset[Word]:
        return frozenset(canonical_relator(r) for r in self.relators)

    def __str__(self) -> str:
        return render_presentation(self)


def normalize_relators(p: Presentation) -> Presentation:
    """Canonical relators, duplicates (up to rotation and inversion) and empties dropped, sorted."""
    canon = {canonical_relator(r) for r in p.relators}
    canon.discard(EMPTY)
    return Presentation(p.generators, tuple(sorted(canon, key=_sort_key)))


def eliminate_generator(p: Presentation, g: str, defining: Word) -> Presentation:
    """
    Tietze elimination of g using the relator g = defining.

    Raises:
        EliminationError: g absent, defining mentions g or unknown letters,
            or no relator witnesses g = defining
    """
    if g not in p.generators:
        raise EliminationError(f"generator {g} is not in the presentation")
    defining = free_reduce(defining)
    used = defining.generators()
    if g in used:
        raise EliminationError(f"defining word for {g} mentions {g}")
    remaining = tuple(name for name in p.generators if name != g)
    unknown = used - set(remaining)
    if unknown:
        raise EliminationError(f"defining word for {g} uses unknown generators {sorted(unknown)}")

    witness = canonical_relator(Word.letter(g) * invert(defining))
    kept: list[Word] = []
    found = False
    for r in p.relators:
        if not found and canonical_relator(r) == witness:
            found = True
            continue
        kept.append(r)
    if not found:
        raise EliminationError(
            f"no relator witnesses {g} = {render_word(defining) or '1'}"
        )

    substitution = GeneratorMap.identity(remaining).updated(**{g: defining})
    logger.debug(f"Eliminating {g} -> {render_word(defining) or '1'} from {len(p.relators)} relators")
    return normalize_relators(
        Presentation.create(remaining, (apply_map(substitution, r) for r in kept))
    )


def add_generator(p: Presentation, g: str, defining: Word) -> Presentation:
    """Inverse Tietze move: new generator g with relator g defining^-1."""
    if g in p.generators:
        raise PresentationError(f"generator {g} already present")
    return normalize_relators(
        Presentation.create(
            p.generators + (g,),
            p.relators + (Word.letter(g) * invert(defining),),
        )
    )


def direct_product(ps: Sequence[Presentation]) -> Presentation:
    """Disjoint union of factors plus commutators between generators of distinct factors."""
    names: list[str] = []
    seen: set[str] = set()
    for factor in ps:
        clash = seen.intersection(factor.generators)
        if clash:
            raise PresentationError(f"generator name clash in direct product: {sorted(clash)}")
        seen.update(factor.generators)
        names.extend(factor.generators)

    if len(ps) == 1:
        return ps[0]

    relators: list[Word] = [r for factor in ps for r in factor.relators]
    for left, right in itertools.combinations(ps, 2):
        for g in left.generators:
            for h in right.generators:
                relators.append(commutator(Word.letter(g), Word.letter(h)))
    return normalize_relators(Presentation.create(names, relators))


def quotient_by_words(p: Presentation, ws: Sequence[Word]) -> Presentation:
    """Add ws as relators (normal closure quotient) and normalize."""
    known = set(p.generators)
    for w in ws:
        for name, _ in w.letters:
            if name not in known:
                raise UnknownGeneratorError(name)
    return normalize_relators(Presentation.create(p.generators, p.relators + tuple(ws)))


def free_abelian_presentation(names: Sequence[str]) -> Presentation:
    relators = [
        commutator(Word.letter(g), Word.letter(h)) for g, h in itertools.combinations(names, 2)
    ]
    return normalize_relators(Presentation.create(names, relators))


def relation_matrix(p: Presentation) -> np.ndarray:
    """Integer matrix with one row per relator of exponent sums."""
    index = {name: i for i, name in enumerate(p.generators)}
    matrix = np.zeros((len(p.relators), len(p.generators)), dtype=object)
    for row, r in enumerate(p.relators):
        for name, sign in r.letters:
            matrix[row, index[name]] += sign
    return matrix


def exgcd(a: int, b: int) -> np.ndarray:
    """
    2x2 unimodular M with M @ [a, b] = [gcd(a, b), 0].

    Runs Euclid's algorithm on the column [a, b] augmented by the identity.
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign

    M = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1].copy()

    g = M[0, 0]
    M = M[:, 1:] * np.array([a_sign, b_sign], dtype=object)
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]
    return M


def diagonalize(A: np.ndarray) -> np.ndarray:
    """
    Diagonal form of an integer matrix under unimodular row and column moves.

    The pivot at each stage is the entry of smallest absolute value in the
    remaining block; rows and columns are cleared with exgcd moves until both
    are zero off the pivot. Divisibility between diagonal entries is restored
    afterwards by invariant_factors.
    """
    D = A.copy().astype(object)
    rows, cols = D.shape
    for i in range(min(rows, cols)):
        block = D[i:, i:]
        nonzero = [(abs(v), r, c) for (r, c), v in np.ndenumerate(block) if v != 0]
        if not nonzero:
            break
        _, r, c = min(nonzero)
        D[[i, i + r]] = D[[i + r, i]]
        D[:, [i, i + c]] = D[:, [i + c, i]]

        while True:
            for j in range(i + 1, rows):
                if D[j, i] != 0:
                    M = exgcd(D[i, i], D[j, i])
                    D[[i, j]] = M @ D[[i, j]]
            col_clear = True
            for j in range(i + 1, cols):
                if D[i, j] != 0:
                    M = exgcd(D[i, i], D[i, j]).T
                    D[:, [i, j]] = D[:, [i, j]] @ M
                    col_clear = False
            if col_clear and all(D[j, i] == 0 for j in range(i + 1, rows)):
                break
    return D


def invariant_factors(diagonal: Iterable[int]) -> list[int]:
    """Turn arbitrary nonzero diagonal entries into d1 | d2 | ... via gcd/lcm swaps."""
    values = sorted(abs(int(d)) for d in diagonal if d != 0)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            a, b = values[i], values[j]
            g = math.gcd(a, b)
            values[i], values[j] = g, a * b // g
    return values


def abelianization(p: Presentation) -> AbelianInvariants:
    if not p.generators:
        return AbelianInvariants(0, ())
    if not p.relators:
        return AbelianInvariants(len(p.generators), ())
    D = diagonalize(relation_matrix(p))
    diagonal = [D[i, i] for i in range(min(D.shape)) if D[i, i] != 0]
    factors = invariant_factors(diagonal)
    rank = len(p.generators) - len(factors)
    return AbelianInvariants(rank, tuple(d for d in factors if d > 1))


def render_presentation(p: Presentation) -> str:
    lines = [f"gens: {', '.join(p.generators)}"]
    lines.extend(render_word(r) for r in p.relators)
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    """Parse `gens: a, b` followed by one relator per line; `#` starts a comment."""
    generators: Optional[tuple[str, ...]] = None
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if generators is None:
            if not line.startswith("gens:"):
                raise PresentationError(f"line {lineno}: expected 'gens:' header")
            body = line[len("gens:"):].strip()
            generators = tuple(name.strip() for name in body.split(",") if name.strip())
            continue
        relators.append(parse_word(line, generators))
    if generators is None:
        raise PresentationError("missing 'gens:' header")
    return Presentation.create(generators, relators)
