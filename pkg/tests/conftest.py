"""
Shared fixtures and hypothesis strategies.

Coxeter systems and representations are cached by their constructors, so the
session fixtures below only name them.
"""

import sys

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings, strategies as st

from app.algebra.coxeter import B4_ATOMS, type_a, type_b4_handles, type_d4
from app.algebra.linrep import cw_representation_d4, lk_representation
from app.algebra.word import Word, free_reduce
from app.core.config import settings
from app.core.logging import setup_logging

hypothesis_settings.register_profile(
    "exact",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
hypothesis_settings.load_profile("exact")

settings.validate_settings()


def letters(atoms):
    return st.tuples(st.sampled_from(tuple(atoms)), st.sampled_from((1, -1)))


def words(atoms, min_size=0, max_size=10):
    """Freely reduced words over the given atoms."""
    return st.lists(letters(atoms), min_size=min_size, max_size=max_size).map(
        lambda ls: free_reduce(Word(tuple(ls)))
    )


def positive_words(atoms, min_size=0, max_size=10):
    return st.lists(st.sampled_from(tuple(atoms)), min_size=min_size, max_size=max_size).map(
        lambda names: Word.of(*names)
    )


@pytest.fixture(autouse=True, scope="session")
def quiet_logging():
    setup_logging(sys.__stderr__, "WARNING")
    yield


@pytest.fixture(scope="session")
def b3():
    return type_a(3)


@pytest.fixture(scope="session")
def b4():
    return type_b4_handles()


@pytest.fixture(scope="session")
def d4():
    return type_d4()


@pytest.fixture(scope="session")
def lk4():
    return lk_representation(4, B4_ATOMS)


@pytest.fixture(scope="session")
def cw():
    return cw_representation_d4()
