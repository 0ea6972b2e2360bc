from dataclasses import dataclass
from math import comb
from typing import List, Optional, Sequence, Tuple

from app.algebra.coxeter import B4_ATOMS, type_a, type_b4_handles, type_d4
from app.algebra.garside import delta_power_of, equal_words, is_central, normal_form
from app.algebra.groups import (
    GroupExpr,
    GroupOracle,
    computable_group,
    describe,
    expr_presentation,
    full_twist_word,
    is_pure,
    pure_braid_presentation,
    twist_exponent,
)
from app.algebra.laurent import monomial_scalar_of
from app.algebra.linrep import cw_representation_d4, evaluate_word_matrix, lk_representation
from app.algebra.mcg import (
    GENUS_ONE_ROWS,
    SurfaceTriple,
    cap_boundary,
    genus_zero_expr,
    genus_zero_split_expr,
    gervais_presentation,
    row_model,
    row_plan,
    star_words,
    table_rows,
)
from app.algebra.presentation import (
    AbelianInvariants,
    Presentation,
    abelianization,
    eliminate_generator,
    normalize_relators,
)
from app.algebra.word import GeneratorMap, Word, apply_map, render_word
from app.core.config import settings
from app.core.exceptions import PresentationError, UnsupportedRowError
from app.core.logging import logger
from app.models.schemas import Certificate
from app.services.certificate_builder import CertificateBuilder, summarize
from app.services.matrix_service import matrix_service


@dataclass(frozen=True)
class CollapseProof:
    """
    Eliminations on a source presentation that should leave a defining set for
    `target` (plus `kept_relators`) and nothing the target does not satisfy.
    """

    source: Presentation
    eliminations: Tuple[Tuple[str, Word], ...]
    target: GroupExpr
    kept_relators: Tuple[Word, ...] = ()

    @property
    def target_presentation(self) -> Presentation:
        base = expr_presentation(self.target)
        return normalize_relators(
            Presentation.create(base.generators, base.relators + tuple(self.kept_relators))
        )


def _words(ws: Sequence[Word]) -> List[str]:
    return [render_word(w) for w in ws]


class VerifyService:
    """Builds the certificates for every row of the table and the supporting identities."""

    def check_homomorphism(
        self,
        source: Presentation,
        target: GroupOracle,
        m: GeneratorMap,
        claim: Optional[str] = None,
    ) -> Certificate:
        """
        Pass iff every relator of `source` maps to a trivial word of the target.

        Raises:
            PresentationError: m is not total on the source generators
            UnknownGeneratorError: an image leaves the target alphabet
        """
        missing = [g for g in source.generators if g not in m]
        if missing:
            raise PresentationError(f"generator map is not total; missing {missing}")
        builder = CertificateBuilder(claim or f"homomorphism onto {describe(target.expr)}")
        for r in source.relators:
            image = apply_map(m, r)
            builder.check(
                f"relator {render_word(r)} maps to 1",
                target.is_trivial(image),
                {"image": render_word(image)},
            )
        return builder.build(generator_map=m.to_dict())

    def _collapse(self, cp: CollapseProof, claim: Optional[str] = None) -> Tuple[Certificate, Presentation]:
        builder = CertificateBuilder(claim or f"collapse onto {describe(cp.target)}")
        p = cp.source
        for g, defining in cp.eliminations:
            p = eliminate_generator(p, g, defining)
            builder.check(
                f"eliminate {g} = {render_word(defining) or '1'}",
                True,
                {"generators": list(p.generators), "relators": len(p.relators)},
            )

        expected = cp.target_presentation
        builder.check(
            "generators match the target",
            set(p.generators) == set(expected.generators),
            {"remaining": list(p.generators), "target": list(expected.generators)},
        )
        remaining = p.relator_set()
        wanted = expected.relator_set()
        missing = sorted(wanted - remaining, key=lambda w: (len(w), render_word(w)))
        builder.check(
            f"all {len(wanted)} target relators survive",
            not missing,
            {"missing": _words(missing)},
        )
        extras = sorted(remaining - wanted, key=lambda w: (len(w), render_word(w)))
        oracle = computable_group(cp.target)
        alphabet = set(oracle.generators)
        for extra in extras:
            outside = sorted(extra.generators() - alphabet)
            builder.check(
                f"extra relator {render_word(extra)} holds in {describe(cp.target)}",
                not outside and oracle.is_trivial(extra),
                {"outside_alphabet": outside} if outside else None,
            )
        cert = builder.build(
            target=describe(cp.target),
            kept_relators=_words(cp.kept_relators),
            extra_relators=len(extras),
        )
        return cert, p

    def verify_collapse(self, cp: CollapseProof, claim: Optional[str] = None) -> Certificate:
        """
        Perform the eliminations and split what is left into the target's
        relators and extras, each of which must hold in the target.

        Raises:
            EliminationError: an elimination has no witnessing relator
        """
        return self._collapse(cp, claim)[0]

    def verify_abelianization(self, source: Presentation, target: Presentation, claim: str) -> Certificate:
        builder = CertificateBuilder(claim)
        a, b = abelianization(source), abelianization(target)
        builder.check(f"abelianizations agree: {a} and {b}", a == b, {"source": a.to_dict(), "target": b.to_dict()})
        return builder.build()

    def verify_row(self, t: SurfaceTriple, bound: Optional[int] = None) -> Certificate:
        """
        Certificate for one row of the table.

        Raises:
            UnsupportedRowError: t outside the table or beyond the desk-scale bound
        """
        if t.g == 0:
            return self._genus_zero_row(t, bound)
        if t not in GENUS_ONE_ROWS:
            raise UnsupportedRowError(f"{t} is not a row of the table")
        return self._genus_one_row(t)

    def _genus_one_row(self, t: SurfaceTriple) -> Certificate:
        plan = row_plan(t)
        builder = CertificateBuilder(plan.claim)
        gervais = gervais_presentation(plan.source)
        p = gervais.presentation
        builder.check(
            f"Gervais presentation of {plan.source.label}",
            True,
            {"generators": list(p.generators), "relators": len(p.relators)},
        )
        for c in plan.caps:
            p = cap_boundary(p, c)
            builder.check(f"cap boundary twist {c}", True, {"generators": list(p.generators), "relators": len(p.relators)})
        capped = p

        for number, stage in enumerate(plan.stages, start=1):
            cp = CollapseProof(p, stage.eliminations, stage.target, stage.kept_relators)
            sub, p = self._collapse(cp, f"{t.label} stage {number}: {describe(stage.target)}")
            builder.include(sub)

        model = row_model(t)
        target_oracle = computable_group(model.target)
        builder.include(
            self.check_homomorphism(capped, target_oracle, model.generator_map, f"{t.label} relators hold in the target"),
            "round trip: every source relator holds in the target under the composite map",
        )
        builder.include(
            self.verify_abelianization(capped, expr_presentation(model.target), f"{t.label} abelianization"),
        )
        builder.include(matrix_service.check_row(t))
        return builder.build(
            triple=str(t),
            target=describe(model.target),
            generator_map=model.generator_map.to_dict(),
            abelianization=abelianization(capped).to_dict(),
        )

    def _genus_zero_row(self, t: SurfaceTriple, bound: Optional[int]) -> Certificate:
        bound = settings.desk_scale_bound if bound is None else bound
        m, n = t.b, t.n
        if m < 2:
            raise UnsupportedRowError(f"{t}: genus-0 rows need m >= 2")
        if m + n > bound:
            raise UnsupportedRowError(f"{t}: m + n = {m + n} exceeds the desk-scale bound {bound}")
        k = m + n - 1
        source_expr = genus_zero_expr(m, n)
        claim = f"{t.label} ≅ Z^{m - 1}×PB{k}"
        if m + n >= 3:
            claim += f" ≅ Z^{m}×PB{k}/Z(PB{k})"
        builder = CertificateBuilder(claim)
        source = expr_presentation(source_expr)

        pb, embedding = pure_braid_presentation(k)
        braid_oracle = computable_group(source_expr.children[1])
        builder.check(
            f"PB{k} relators are trivial in B{k} under the band embedding",
            all(braid_oracle.is_trivial(r) for r in pb.relators),
            {"relators": len(pb.relators)},
        )
        builder.check(
            f"band generators of PB{k} are pure braids",
            all(is_pure(k, Word.letter(g)) for g in pb.generators),
        )
        if k >= 2:
            twist = full_twist_word(k)
            delta = delta_power_of(type_a(k), apply_map(embedding, twist))
            builder.check(f"full twist of PB{k} is Δ^2 in B{k}", delta == 2, {"delta_power": delta})
            builder.check(
                f"full twist is central in PB{k}",
                all(braid_oracle.equal(twist * Word.letter(g), Word.letter(g) * twist) for g in pb.generators),
            )

        expected = AbelianInvariants((m - 1) + comb(k, 2), ())
        found = abelianization(source)
        builder.check(
            f"abelianization is Z^{expected.rank}",
            found == expected,
            {"found": found.to_dict(), "expected": expected.to_dict()},
        )

        if m + n < 3:
            builder.check("second isomorphism not asserted (m+n<3)", True, {"m": m, "n": n})
        else:
            for sub in self.verify_genus_zero_split(m, n):
                builder.include(sub)
        builder.include(matrix_service.check_row(t))
        return builder.build(triple=str(t), target=describe(source_expr))

    def genus_zero_maps(self, m: int, n: int) -> Tuple[GeneratorMap, GeneratorMap]:
        """
        phi: A_ij -> d_m^eps(A_ij) A_ij into the split form, psi: d_m -> T and
        A_ij -> A_ij T^-eps(A_ij) back, with eps(A12) = 1 and 0 elsewhere.
        """
        k = m + n - 1
        twist = full_twist_word(k)
        last = Word.letter(f"d{m}")
        free = [f"d{i}" for i in range(1, m)]
        pb = pure_braid_presentation(k)[0].generators
        phi = {g: Word.letter(g) for g in free}
        psi = {g: Word.letter(g) for g in free}
        for g in pb:
            eps = twist_exponent(g)
            phi[g] = (last ** eps) * Word.letter(g)
            psi[g] = Word.letter(g) * (twist ** -eps)
        psi[last.letters[0][0]] = twist
        return GeneratorMap(phi), GeneratorMap(psi)

    def verify_genus_zero_split(self, m: int, n: int) -> List[Certificate]:
        """
        Z^{m-1}×PB_k ≅ Z^m×PB_k/Z(PB_k) through explicit inverse maps.

        Raises:
            UnsupportedRowError: m < 2 or m + n < 3
        """
        target_expr = genus_zero_split_expr(m, n)
        source_expr = genus_zero_expr(m, n)
        source, target = expr_presentation(source_expr), expr_presentation(target_expr)
        source_oracle, target_oracle = computable_group(source_expr), computable_group(target_expr)
        phi, psi = self.genus_zero_maps(m, n)

        certs = [
            self.check_homomorphism(source, target_oracle, phi, f"phi: {describe(source_expr)} -> {describe(target_expr)}"),
            self.check_homomorphism(target, source_oracle, psi, f"psi: {describe(target_expr)} -> {describe(source_expr)}"),
        ]
        builder = CertificateBuilder(f"psi∘phi and phi∘psi are identities for (0,{m},{n})")
        for g in source.generators:
            back = apply_map(psi, apply_map(phi, Word.letter(g)))
            builder.check(f"psi(phi({g})) = {g}", source_oracle.equal(back, Word.letter(g)), {"word": render_word(back)})
        for g in target.generators:
            back = apply_map(phi, apply_map(psi, Word.letter(g)))
            builder.check(f"phi(psi({g})) = {g}", target_oracle.equal(back, Word.letter(g)), {"word": render_word(back)})
        certs.append(builder.build())
        certs.append(self.verify_abelianization(source, target, f"abelianization of (0,{m},{n}) both sides"))
        return certs

    def verify_word_identities(self, parts: Sequence[str] = ("eq4", "eq5")) -> Certificate:
        """
        In B4 on a1, b, a2: (ai ai aj b)^3 = (ai aj b)^4 = (ai b aj)^4 and
        (ai ai aj b)^3 = (ai aj aj b)^3, by normal form and by exact matrices.
        """
        system = type_b4_handles()
        rep = lk_representation(4, B4_ATOMS)
        names = {"eq4": "cube and fourth-power forms of the center", "eq5": "fourth-power forms of the center"}
        builder = CertificateBuilder("; ".join(names[p] for p in parts) + " agree in B4")
        for i, j in (("a1", "a2"), ("a2", "a1")):
            cube = Word.of(i, i, j, "b") ** 3
            fourth = Word.of(i, j, "b") ** 4
            braided = Word.of(i, "b", j) ** 4
            other_cube = Word.of(i, j, j, "b") ** 3
            pairs = []
            if "eq4" in parts:
                pairs += [(cube, fourth), (cube, other_cube)]
            if "eq5" in parts:
                pairs.append((fourth, braided))
            for u, v in pairs:
                same_nf = equal_words(system, u, v)
                same_matrix = evaluate_word_matrix(rep, u) == evaluate_word_matrix(rep, v)
                builder.check(
                    f"({render_word(u)}) = ({render_word(v)})",
                    same_nf and same_matrix,
                    {"normal_form": same_nf, "matrix": same_matrix, "delta_power": delta_power_of(system, u)},
                )
        return builder.build()

    def verify_star_identities(self) -> Certificate:
        """Each raw star word (ai aj ak b)^3 equals the word emitted in the presentation."""
        d4 = type_d4()
        builder = CertificateBuilder("star relators match (ai aj ak b)^3")
        for star in star_words(SurfaceTriple(1, 3, 0)):
            i, j, k = star.triple
            witness = {"raw": render_word(star.raw_word), "emitted": render_word(star.emitted_word)}
            if i == j:
                sub = type_a(4, (f"a{i}", "b", f"a{k}"))
                ok = equal_words(sub, star.raw_word, star.emitted_word) and equal_words(d4, star.raw_word, star.emitted_word)
                witness["delta_power"] = delta_power_of(sub, star.emitted_word)
            else:
                ok = equal_words(d4, star.raw_word, star.emitted_word)
                witness["delta_power"] = delta_power_of(d4, star.emitted_word)
            builder.check(f"star {star.triple}: {render_word(star.boundary_word)} = ({render_word(star.raw_word)})", ok, witness)
        return builder.build()

    def verify_center_claims(self) -> Certificate:
        d4, b4 = type_d4(), type_b4_handles()
        delta_d4 = Word.of("a1", "a2", "a3", "b") ** 3
        delta_b4 = Word.of("a1", "b", "a2") ** 4
        builder = CertificateBuilder("center generators of A(D4) and B4")

        builder.check("(a1 a2 a3 b)^3 is central in A(D4)", is_central(d4, delta_d4))
        power_d4 = delta_power_of(d4, delta_d4)
        builder.check("(a1 a2 a3 b)^3 is a power of Δ in A(D4)", power_d4 is not None, {"delta_power": power_d4})
        scalar_d4 = monomial_scalar_of(evaluate_word_matrix(cw_representation_d4(), delta_d4))
        builder.check("(a1 a2 a3 b)^3 acts as a unit scalar in the root-basis representation", scalar_d4 is not None, {"scalar": scalar_d4})

        builder.check("(a1 b a2)^4 is central in B4", is_central(b4, delta_b4))
        power_b4 = delta_power_of(b4, delta_b4)
        builder.check("(a1 b a2)^4 is Δ^2 in B4", power_b4 == 2, {"delta_power": power_b4})
        scalar_b4 = monomial_scalar_of(evaluate_word_matrix(lk_representation(4, B4_ATOMS), delta_b4))
        builder.check("(a1 b a2)^4 acts as a unit scalar in the Lawrence–Krammer representation", scalar_b4 is not None, {"scalar": scalar_b4})

        builder.check(
            "these elements generate the full centers",
            True,
            {"trusted_citation": "Brieskorn–Saito: the center of an irreducible spherical Artin group is generated by Δ or Δ^2"},
        )
        return builder.build()

    def hamidi_tehrani(self) -> Certificate:
        """<a1^2 a2, b> in B4 is not free of rank 2."""
        system = type_b4_handles()
        rep = lk_representation(4, B4_ATOMS)
        x, y = Word.of("a1", "a1", "a2"), Word.of("b")
        builder = CertificateBuilder("<a1^2 a2, b> ≤ B4 is not free of rank 2")

        commute = equal_words(system, x * y, y * x)
        commute_matrix = evaluate_word_matrix(rep, x * y) == evaluate_word_matrix(rep, y * x)
        builder.check(
            "a1^2 a2 and b do not commute",
            not commute and not commute_matrix,
            {"normal_form_equal": commute, "matrix_equal": commute_matrix},
        )
        z = (x * y) ** 3
        builder.check("(a1^2 a2 b)^3 is central in B4", is_central(system, z), {"delta_power": delta_power_of(system, z)})
        nf = normal_form(system, z)
        builder.check("(a1^2 a2 b)^3 is nontrivial", not nf.is_identity(), {"normal_form": nf.render(system)})
        builder.check(
            "conclusion: a non-abelian group with a nontrivial central element is not free of rank 2",
            builder.ok,
        )
        return builder.build()

    def run_all(self, bound: Optional[int] = None) -> List[Certificate]:
        """Every row, then the identities, centers and the rank-2 question, in a fixed order."""
        rows = table_rows(bound)
        logger.info(f"Verifying {len(rows)} rows and the supporting identities")
        certs = [self.verify_row(t, bound) for t in rows]
        certs.append(self.verify_word_identities(("eq4",)))
        certs.append(self.verify_word_identities(("eq5",)))
        certs.append(self.verify_star_identities())
        certs.append(self.verify_center_claims())
        certs.append(self.hamidi_tehrani())
        return certs

    def verify_all(self, bound: Optional[int] = None) -> Certificate:
        return summarize("every row of the table and the supporting identities", self.run_all(bound))


# Global verify service instance
verify_service = VerifyService()
