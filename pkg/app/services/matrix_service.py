from dataclasses import dataclass, field
from typing import Dict, List, Optional

from app.algebra.coxeter import CoxeterSystem, system_by_name
from app.algebra.garside import equal_words
from app.algebra.groups import (
    ARTIN_A,
    ARTIN_D4,
    FREE_ABELIAN,
    PRODUCT,
    PURE_BRAID,
    GroupExpr,
    computable_group,
    describe,
    generators,
    pure_braid_embedding,
)
from app.algebra.laurent import PolyMatrix, monomial_scalar_of
from app.algebra.linrep import (
    Block,
    BlockRepresentation,
    Representation,
    artin_block,
    cw_representation_d4,
    evaluate_word_matrix,
    free_abelian_block,
    lk_representation,
    representation_for,
)
from app.algebra.mcg import RowModel, SurfaceTriple, row_model
from app.algebra.word import Word, apply_map, render_word
from app.core.config import settings
from app.core.exceptions import UnknownGeneratorError, UnsupportedRowError
from app.core.logging import logger
from app.models.schemas import Certificate
from app.services.certificate_builder import CertificateBuilder


def expr_blocks(e: GroupExpr, projective: bool = False) -> List[Block]:
    """Faithful blocks for e; everything under a CentralQuotient compares projectively."""
    if e.kind == ARTIN_A:
        if e.param < 2:
            return []
        return [artin_block(lk_representation(e.param, e.names), projective)]
    if e.kind == ARTIN_D4:
        return [artin_block(cw_representation_d4(), projective)]
    if e.kind == FREE_ABELIAN:
        blocks = [free_abelian_block(name) for name in e.names]
        for block in blocks:
            block.projective = projective
        return blocks
    if e.kind == PURE_BRAID:
        if e.param < 2:
            return []
        rename = dict(pure_braid_embedding(e.param).items())
        block = artin_block(lk_representation(e.param), projective, rename=rename)
        block.label = f"PB{e.param}"
        return [block]
    if e.kind == PRODUCT:
        return [block for child in e.children for block in expr_blocks(child, projective)]
    return expr_blocks(e.children[0], True)


def block_representation(e: GroupExpr) -> BlockRepresentation:
    return BlockRepresentation(expr_blocks(e), generators(e))


@dataclass
class RowRepresentation:
    """A row's generators sent through its certified map into the target's block representation."""

    model: RowModel
    representation: BlockRepresentation
    images: Dict[str, List[PolyMatrix]] = field(default_factory=dict)
    inverse_images: Dict[str, List[PolyMatrix]] = field(default_factory=dict)

    @property
    def mode(self) -> str:
        return "projective" if self.representation.projective else "exact"

    @property
    def dim(self) -> int:
        return self.representation.dim

    @property
    def max_block_dim(self) -> int:
        return max((b.dim for b in self.representation.blocks), default=0)

    def evaluate_blocks(self, w: Word) -> List[PolyMatrix]:
        result = [PolyMatrix.identity(b.dim) for b in self.representation.blocks]
        for name, sign in w.letters:
            source = self.images if sign > 0 else self.inverse_images
            if name not in source:
                raise UnknownGeneratorError(name)
            result = [acc @ m for acc, m in zip(result, source[name])]
        return result

    def evaluate(self, w: Word) -> PolyMatrix:
        return PolyMatrix.block_diagonal(self.evaluate_blocks(w))

    def is_trivial(self, w: Word) -> bool:
        for block, m in zip(self.representation.blocks, self.evaluate_blocks(w)):
            if block.projective:
                if monomial_scalar_of(m) is None:
                    return False
            elif not m.is_identity():
                return False
        return True

    def structure(self) -> dict:
        return {
            "triple": str(self.model.triple),
            "target": describe(self.model.target),
            "dim": self.dim,
            "mode": self.mode,
            "blocks": [
                {"label": b.label, "dim": b.dim, "projective": b.projective}
                for b in self.representation.blocks
            ],
            "generator_map": self.model.generator_map.to_dict(),
        }


class MatrixService:
    """Explicit matrix representations for every row, and the matrix-side oracle checks."""

    def __init__(self):
        self._rows: Dict[SurfaceTriple, RowRepresentation] = {}

    def build_matrix_rep(self, t: SurfaceTriple) -> RowRepresentation:
        """
        Compose the row's generator map with the target's faithful block representation.

        Raises:
            UnsupportedRowError: t outside the table, or a genus-0 row beyond the
                Lawrence–Krammer strand bound
        """
        cached = self._rows.get(t)
        if cached is not None:
            return cached
        if t.g == 0 and t.b + t.n - 1 > settings.lk_max_strands:
            raise UnsupportedRowError(
                f"{t}: PB{t.b + t.n - 1} exceeds the Lawrence–Krammer bound {settings.lk_max_strands}"
            )
        model = row_model(t)
        rep = block_representation(model.target)
        row = RowRepresentation(model, rep)
        for g in model.source.generators:
            image = model.generator_map[g]
            row.images[g] = rep.block_matrices(image)
            row.inverse_images[g] = rep.block_matrices(image.inverse())
        logger.info(f"Matrix representation for {t.label}: dim {rep.dim}, mode {row.mode}")
        self._rows[t] = row
        return row

    def check_row(self, t: SurfaceTriple, force: bool = False) -> Certificate:
        """
        Every source relator is trivial under the matrices and under the target's
        word-problem oracle, and the two verdicts agree.
        """
        model = row_model(t)
        builder = CertificateBuilder(f"{t.label} matrix representation")
        largest = max((b.dim for b in expr_blocks(model.target)), default=0)
        if not force and largest > settings.matrix_check_max_dim:
            logger.warning(f"{t.label}: block dimension {largest} exceeds {settings.matrix_check_max_dim}, relators not evaluated")
            builder.check(
                f"relator evaluation skipped: block dimension {largest} exceeds {settings.matrix_check_max_dim}",
                False,
                {"skipped": True, "max_block_dim": largest},
            )
            return builder.build(representation={"target": describe(model.target), "max_block_dim": largest})

        row = self.build_matrix_rep(t)
        oracle = computable_group(model.target)
        for r in model.source.relators:
            matrix_ok = row.is_trivial(r)
            oracle_ok = oracle.is_trivial(apply_map(model.generator_map, r))
            builder.check(
                f"relator {render_word(r)} evaluates trivially ({row.mode})",
                matrix_ok and oracle_ok,
                {"matrix": matrix_ok, "oracle": oracle_ok},
            )
        return builder.build(representation=row.structure())

    def group_representation(self, group: str) -> Representation:
        """Representation of a named Artin group (b4, a3, d4, bN)."""
        return representation_for(system_by_name(group))

    def word_matrix(self, group: str, w: Word) -> PolyMatrix:
        return evaluate_word_matrix(self.group_representation(group), w)

    def agree_with_garside(self, system: CoxeterSystem, rep: Representation, u: Word, v: Word) -> bool:
        """Garside equality and exact matrix equality give the same verdict."""
        return equal_words(system, u, v) == (evaluate_word_matrix(rep, u) == evaluate_word_matrix(rep, v))

    def scalar_of(self, group: str, w: Word) -> Optional[tuple]:
        return monomial_scalar_of(self.word_matrix(group, w))


# Global matrix service instance
matrix_service = MatrixService()
