"""Certificates for every row of the table and the supporting identities."""

from math import comb

import pytest

from app.algebra.coxeter import B4_ATOMS
from app.algebra.groups import artin_a, computable_group, free_abelian, full_twist_word
from app.algebra.mcg import GENUS_ONE_ROWS, SurfaceTriple, gervais_presentation, row_model
from app.algebra.presentation import AbelianInvariants, abelianization, free_abelian_presentation
from app.algebra.word import EMPTY, GeneratorMap, Word
from app.core.config import settings
from app.core.exceptions import PresentationError, UnsupportedRowError
from app.services.matrix_service import matrix_service
from app.services.verify_service import CollapseProof, verify_service

ROW_ABELIANIZATIONS = {
    SurfaceTriple(1, 3, 0): AbelianInvariants(3),
    SurfaceTriple(1, 2, 1): AbelianInvariants(2),
    SurfaceTriple(1, 1, 2): AbelianInvariants(1),
    SurfaceTriple(1, 0, 3): AbelianInvariants(0, (12,)),
    SurfaceTriple(1, 2, 0): AbelianInvariants(2),
    SurfaceTriple(1, 1, 1): AbelianInvariants(1),
    SurfaceTriple(1, 0, 2): AbelianInvariants(0, (12,)),
}


class TestGenusOneRows:
    @pytest.mark.parametrize("t", GENUS_ONE_ROWS, ids=str)
    def test_row_passes(self, t):
        cert = verify_service.verify_row(t)
        assert cert.passed, [step.desc for step in cert.failed_steps]
        assert cert.metadata["triple"] == str(t)

    @pytest.mark.parametrize("t, expected", ROW_ABELIANIZATIONS.items(), ids=str)
    def test_source_abelianization(self, t, expected):
        assert abelianization(row_model(t).source) == expected

    def test_claim_text(self):
        cert = verify_service.verify_row(SurfaceTriple(1, 1, 1))
        assert cert.claim == "PMod(1,1,1) ≅ B4"
        assert cert.metadata["generator_map"]["c12"] == "a1 b a2 " * 3 + "a1 b a2"

    def test_unsupported_rows(self):
        with pytest.raises(UnsupportedRowError):
            verify_service.verify_row(SurfaceTriple(2, 0, 0))
        with pytest.raises(UnsupportedRowError):
            verify_service.verify_row(SurfaceTriple(1, 3, 1))


class TestGenusZeroRows:
    @pytest.mark.parametrize("m, n", [(2, 0), (2, 1), (3, 0), (2, 2), (3, 1), (4, 0), (2, 3)])
    def test_row_passes(self, m, n):
        cert = verify_service.verify_row(SurfaceTriple(0, m, n))
        assert cert.passed, [step.desc for step in cert.failed_steps]

    @pytest.mark.parametrize("m, n", [(2, 1), (3, 1), (4, 0)])
    def test_abelianization_rank(self, m, n):
        k = m + n - 1
        assert abelianization(row_model(SurfaceTriple(0, m, n)).source) == AbelianInvariants(m - 1 + comb(k, 2))

    def test_small_rows_skip_the_split(self):
        cert = verify_service.verify_row(SurfaceTriple(0, 2, 0))
        assert "≅ Z^2" not in cert.claim
        assert any("m+n<3" in step.desc for step in cert.steps)

    def test_refusals(self):
        with pytest.raises(UnsupportedRowError):
            verify_service.verify_row(SurfaceTriple(0, 1, 2))
        with pytest.raises(UnsupportedRowError):
            verify_service.verify_row(SurfaceTriple(0, 4, 3))
        with pytest.raises(UnsupportedRowError):
            verify_service.verify_genus_zero_split(2, 0)

    def test_split_maps(self):
        phi, psi = verify_service.genus_zero_maps(2, 1)
        assert psi["d2"] == full_twist_word(2)
        assert phi["A12"] == Word.of("d2", "A12")
        assert all(cert.passed for cert in verify_service.verify_genus_zero_split(3, 1))

    @pytest.mark.slow
    def test_larger_bound(self):
        cert = verify_service.verify_row(SurfaceTriple(0, 3, 3), bound=6)
        assert cert.passed


class TestMatrixChecks:
    @pytest.mark.parametrize("t", GENUS_ONE_ROWS, ids=str)
    def test_every_relator_is_evaluated(self, t):
        cert = matrix_service.check_row(t)
        assert cert.passed, [step.desc for step in cert.failed_steps]
        assert len(cert.steps) == len(row_model(t).source.relators)
        assert all(step.witness == {"matrix": True, "oracle": True} for step in cert.steps)

    def test_default_cap_covers_the_d4_block(self):
        assert settings.matrix_check_max_dim >= 12
        assert matrix_service.check_row(SurfaceTriple(1, 0, 3)).metadata["representation"]["dim"] == 12

    def test_lowered_cap_fails_the_row(self, monkeypatch):
        monkeypatch.setattr(settings, "matrix_check_max_dim", 6)
        t = SurfaceTriple(1, 1, 2)
        cert = matrix_service.check_row(t)
        assert not cert.passed
        assert cert.steps[0].witness == {"skipped": True, "max_block_dim": 12}
        assert not verify_service.verify_row(t).passed
        assert matrix_service.check_row(t, force=True).passed


class TestBuildingBlocks:
    def test_trivial_homomorphism(self):
        source = gervais_presentation(SurfaceTriple(1, 2, 0)).presentation
        m = GeneratorMap({g: EMPTY for g in source.generators})
        cert = verify_service.check_homomorphism(source, computable_group(artin_a(4, B4_ATOMS)), m)
        assert cert.passed

    def test_map_must_be_total(self):
        source = free_abelian_presentation(["x", "y"])
        with pytest.raises(PresentationError):
            verify_service.check_homomorphism(source, computable_group(free_abelian(("x",))), GeneratorMap({"x": Word.of("x")}))

    def test_collapse_detects_a_wrong_target(self):
        cp = CollapseProof(free_abelian_presentation(["x", "y"]), (), free_abelian(("x",)))
        cert = verify_service.verify_collapse(cp)
        assert not cert.passed
        assert cert.status == "fail"

    def test_collapse_onto_itself(self):
        cp = CollapseProof(free_abelian_presentation(["x", "y"]), (), free_abelian(("x", "y")))
        assert verify_service.verify_collapse(cp).passed


class TestIdentities:
    def test_word_identities(self):
        cert = verify_service.verify_word_identities()
        assert cert.passed
        assert len(cert.steps) == 6
        assert all(step.witness["delta_power"] == 2 for step in cert.steps)

    def test_eq5_alone(self):
        cert = verify_service.verify_word_identities(("eq5",))
        assert cert.passed
        assert len(cert.steps) == 2

    def test_star_identities(self):
        cert = verify_service.verify_star_identities()
        assert cert.passed
        assert len(cert.steps) == 4

    def test_center_claims(self):
        cert = verify_service.verify_center_claims()
        assert cert.passed
        b4_step = next(step for step in cert.steps if step.desc == "(a1 b a2)^4 is Δ^2 in B4")
        assert b4_step.witness == {"delta_power": 2}
        d4_step = next(step for step in cert.steps if "power of Δ in A(D4)" in step.desc)
        assert d4_step.witness == {"delta_power": 1}

    def test_hamidi_tehrani(self):
        cert = verify_service.hamidi_tehrani()
        assert cert.passed
        assert cert.steps[-1].desc.startswith("conclusion")
        assert cert.steps[0].witness == {"normal_form_equal": False, "matrix_equal": False}

    def test_certificates_are_reproducible(self):
        first = verify_service.hamidi_tehrani()
        second = verify_service.hamidi_tehrani()
        assert first.metadata["digest"] == second.metadata["digest"]
        assert first.metadata["conventions"]["twist_direction"] == "right-handed"


@pytest.mark.slow
def test_verify_all():
    cert = verify_service.verify_all()
    assert cert.passed, [step.desc for step in cert.failed_steps]
    assert len(cert.steps) == 22 + 5
