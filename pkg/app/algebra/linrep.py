"""
linrep: faithful linear representations of B_n and A(D4) over Z[q^±, t^±].

Both families send each atom to a matrix satisfying the cubic
(σ - 1)(σ + q)(σ - t q^2) = 0, which yields the inverse images without
division. Every representation checks its own defining relators and
inverses when it is built and refuses to exist otherwise.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from app.algebra.coxeter import CoxeterSystem, type_a, type_d4
from app.algebra.laurent import ONE, Q, T, LaurentPoly, PolyMatrix, monomial_scalar_of
from app.algebra.presentation import Presentation, normalize_relators
from app.algebra.word import Word
from app.core.config import settings
from app.core.exceptions import RepresentationError, UnknownGeneratorError
from app.core.logging import logger


def artin_relators(system: CoxeterSystem) -> list[Word]:
    """Braid and commutation relators of the Artin group on the system's atoms."""
    relators = []
    for i, j in itertools.combinations(range(system.rank), 2):
        s, t = system.atoms[i], system.atoms[j]
        m = system.coxeter_matrix[i][j]
        left = Word.of(*([s, t] * m)[:m])
        right = Word.of(*([t, s] * m)[:m])
        relators.append(left * right.inverse())
    return relators


def artin_presentation(system: CoxeterSystem) -> Presentation:
    return normalize_relators(Presentation.create(system.atoms, artin_relators(system)))


def cubic_inverse(m: PolyMatrix) -> PolyMatrix:
    """
    Inverse of a matrix annihilated by (x - 1)(x + q)(x - t q^2):
    m^-1 = -(t q^3)^-1 (m^2 + (q - 1 - t q^2) m + (t q^2 - q - t q^3)).
    """
    n = m.dim
    tq2 = T * Q * Q
    c1 = Q - 1 - tq2
    c0 = tq2 - Q - tq2 * Q
    poly = (m @ m) + m.scale(c1) + PolyMatrix.scalar(n, c0)
    return poly.scale(LaurentPoly.monomial(-1, -3, -1))


@dataclass
class Representation:
    """Matrices for the atoms of an Artin group, plus their inverses."""

    system: CoxeterSystem
    dim: int
    images: dict[str, PolyMatrix]
    inverse_images: dict[str, PolyMatrix]
    convention: str = ""

    def __post_init__(self):
        for atom in self.system.atoms:
            if not (self.images[atom] @ self.inverse_images[atom]).is_identity():
                raise RepresentationError(f"{self.convention}: inverse check failed for {atom}")
        for r in artin_relators(self.system):
            if not evaluate_word_matrix(self, r).is_identity():
                raise RepresentationError(f"{self.convention}: relator {r} is not the identity")

    def matrix(self, name: str, sign: int = 1) -> PolyMatrix:
        try:
            return self.images[name] if sign > 0 else self.inverse_images[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None


def evaluate_word_matrix(rep: "Representation | BlockRepresentation", w: Word) -> PolyMatrix:
    """Ordered product of the letter images, inverse images for negative letters."""
    result = PolyMatrix.identity(rep.dim)
    for name, sign in w.letters:
        result = result @ rep.matrix(name, sign)
    return result


@functools.lru_cache(maxsize=None)
def lk_representation(n: int, atom_names: Optional[tuple[str, ...]] = None) -> Representation:
    """
    Lawrence–Krammer representation of B_n on the basis x_ij, 1 <= i < j <= n.

    For the k-th atom sigma_k:
        x_{k,k+1}  -> t q^2 x_{k,k+1}
        x_{i,k}    -> (1 - q) x_{i,k} + q x_{i,k+1}                       i < k
        x_{i,k+1}  -> x_{i,k} + t q^{k-i+1} (q - 1) x_{k,k+1}            i < k
        x_{k,j}    -> t q (q - 1) x_{k,k+1} + q x_{k+1,j}                k+1 < j
        x_{k+1,j}  -> x_{k,j} + (1 - q) x_{k+1,j}                        k+1 < j
        x_{i,j}    -> x_{i,j} + t q^{k-i} (q - 1)^2 x_{k,k+1}            i < k < k+1 < j
        x_{i,j}    -> x_{i,j}                                            otherwise

    Raises:
        RepresentationError: n outside 2..lk_max_strands, or a failed self-check
    """
    if not 2 <= n <= settings.lk_max_strands:
        raise RepresentationError(f"Lawrence–Krammer constructor supports 2 <= n <= {settings.lk_max_strands}")
    system = type_a(n, atom_names)
    basis = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    index = {pair: pos for pos, pair in enumerate(basis)}
    dim = len(basis)

    def sigma(k: int) -> PolyMatrix:
        kk = index[(k, k + 1)]
        columns: list[dict[int, LaurentPoly]] = []
        for i, j in basis:
            col: dict[int, LaurentPoly] = {}
            if (i, j) == (k, k + 1):
                col[kk] = T * Q ** 2
            elif j == k:
                col[index[(i, j)]] = 1 - Q
                col[index[(i, k + 1)]] = Q
            elif j == k + 1:
                col[index[(i, k)]] = ONE
                col[kk] = T * Q ** (k - i + 1) * (Q - 1)
            elif i == k:
                col[kk] = T * Q * (Q - 1)
                col[index[(k + 1, j)]] = Q
            elif i == k + 1:
                col[index[(k, j)]] = ONE
                col[index[(i, j)]] = 1 - Q
            elif i < k and j > k + 1:
                col[index[(i, j)]] = ONE
                col[kk] = T * Q ** (k - i) * (Q - 1) ** 2
            else:
                col[index[(i, j)]] = ONE
            columns.append(col)
        return PolyMatrix.from_columns(columns, dim)

    images = {atom: sigma(k) for k, atom in enumerate(system.atoms, start=1)}
    inverses = {atom: cubic_inverse(m) for atom, m in images.items()}
    rep = Representation(system, dim, images, inverses, convention=settings.lk_convention)
    logger.info(f"Built Lawrence–Krammer representation of B{n}, dimension {dim}")
    return rep


# Positive roots of D4 as coefficient vectors over the atoms (a1, a2, a3, b).
D4_ROOTS: tuple[tuple[int, int, int, int], ...] = (
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1),
    (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1),
    (1, 1, 1, 1),
    (1, 1, 1, 2),
)


def _d4_pairing(alpha: int, beta: Sequence[int]) -> int:
    """Symmetric bilinear form <alpha_i, beta> for the star graph with centre b (index 3)."""
    if alpha == 3:
        return 2 * beta[3] - beta[0] - beta[1] - beta[2]
    return 2 * beta[alpha] - beta[3]


def _d4_phi(alpha: int, beta: Sequence[int]) -> LaurentPoly:
    """
    Coefficient of t e_alpha in sigma_alpha(e_beta).

    Values are forced by the braid relations once phi_i(e_alpha_i) = q^2;
    they depend on the support of beta only through the counts below.
    """
    qm1 = Q - 1
    if alpha == 3:
        height = sum(beta)
        leaves = beta[0] + beta[1] + beta[2]
        if beta[3] == 0:
            return LaurentPoly()
        if beta[3] == 2:
            return qm1 * Q ** 5
        return qm1 ** leaves * Q ** 2 if height > 1 else Q ** 2
    if beta[alpha] == 0:
        return LaurentPoly()
    others = sum(beta[k] for k in range(3) if k != alpha)
    if beta[3] == 0:
        return Q ** 2
    if beta[3] == 2:
        return qm1 ** 2 * Q ** 3 * (1 + Q)
    return qm1 * Q ** (2 + others)


@functools.lru_cache(maxsize=None)
def cw_representation_d4() -> Representation:
    """
    Twelve-dimensional representation of A(D4) on the positive-root basis e_beta.

    sigma_i(e_beta) = psi_i(e_beta) + t phi_i(beta) e_{alpha_i}, where
        psi_i(e_beta) = 0                                  beta = alpha_i
                      = e_beta                             <alpha_i, beta> = 0
                      = q e_{beta - alpha_i}               <alpha_i, beta> = 1
                      = (1 - q) e_beta + e_{beta + alpha_i} <alpha_i, beta> = -1
    """
    system = type_d4()
    index = {root: pos for pos, root in enumerate(D4_ROOTS)}
    dim = len(D4_ROOTS)

    def sigma(alpha: int) -> PolyMatrix:
        simple = D4_ROOTS[alpha]
        columns: list[dict[int, LaurentPoly]] = []
        for beta in D4_ROOTS:
            col: dict[int, LaurentPoly] = {}
            pairing = _d4_pairing(alpha, beta)
            if beta == simple:
                pass
            elif pairing == 0:
                col[index[beta]] = ONE
            elif pairing == 1:
                lower = tuple(b - s for b, s in zip(beta, simple))
                col[index[lower]] = Q
            elif pairing == -1:
                upper = tuple(b + s for b, s in zip(beta, simple))
                col[index[beta]] = 1 - Q
                col[index[upper]] = ONE
            phi = _d4_phi(alpha, beta)
            if not phi.is_zero():
                col[index[simple]] = col.get(index[simple], LaurentPoly()) + T * phi
            columns.append(col)
        return PolyMatrix.from_columns(columns, dim)

    images = {atom: sigma(pos) for pos, atom in enumerate(system.atoms)}
    inverses = {atom: cubic_inverse(m) for atom, m in images.items()}
    rep = Representation(system, dim, images, inverses, convention=settings.cw_convention)
    logger.info(f"Built root-basis representation of A(D4), dimension {dim}")
    return rep


def representation_for(system: CoxeterSystem) -> Representation:
    if system.kind == "A":
        return lk_representation(system.degree, system.atoms)
    return cw_representation_d4()


@dataclass
class Block:
    """One diagonal block: an Artin-group representation, or a 1-dim free-abelian coordinate."""

    dim: int
    images: dict[str, PolyMatrix]
    inverse_images: dict[str, PolyMatrix]
    projective: bool = False
    label: str = ""


@dataclass
class BlockRepresentation:
    """
    Block-diagonal representation of a product group.

    A word is trivial when every exact block evaluates to the identity and
    every projective block to a unit scalar.
    """

    blocks: list[Block]
    generators: tuple[str, ...]
    dim: int = field(init=False)

    def __post_init__(self):
        self.dim = sum(b.dim for b in self.blocks)

    @property
    def projective(self) -> bool:
        return any(b.projective for b in self.blocks)

    def block_matrices(self, w: Word) -> list[PolyMatrix]:
        known = set(self.generators)
        out = []
        for block in self.blocks:
            m = PolyMatrix.identity(block.dim)
            for name, sign in w.letters:
                if name not in known:
                    raise UnknownGeneratorError(name)
                source = block.images if sign > 0 else block.inverse_images
                if name in source:
                    m = m @ source[name]
            out.append(m)
        return out

    def matrix(self, name: str, sign: int = 1) -> PolyMatrix:
        return PolyMatrix.block_diagonal(self.block_matrices(Word.letter(name, sign)))

    def is_trivial(self, w: Word) -> bool:
        for block, m in zip(self.blocks, self.block_matrices(w)):
            if block.projective:
                if monomial_scalar_of(m) is None:
                    return False
            elif not m.is_identity():
                return False
        return True

    def scalars(self, w: Word) -> list[Optional[tuple[int, int, int]]]:
        return [monomial_scalar_of(m) for m in self.block_matrices(w)]


def artin_block(rep: Representation, projective: bool = False, rename: Optional[Mapping[str, Word]] = None) -> Block:
    """
    Block from an Artin representation; `rename` sends block generators to
    words in the atoms (used for pure braid generators).
    """
    if rename is None:
        images = dict(rep.images)
        inverses = dict(rep.inverse_images)
    else:
        images, inverses = {}, {}
        for name, w in rename.items():
            images[name] = evaluate_word_matrix(rep, w)
            inverses[name] = evaluate_word_matrix(rep, w.inverse())
    return Block(rep.dim, images, inverses, projective=projective, label=rep.system.name)


def free_abelian_block(name: str) -> Block:
    """Generator `name` acts as q on a single coordinate; everything else as 1."""
    return Block(
        1,
        {name: PolyMatrix([[Q]])},
        {name: PolyMatrix([[LaurentPoly.monomial(1, -1, 0)]])},
        label=name,
    )
