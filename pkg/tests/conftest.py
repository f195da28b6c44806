import itertools
from pathlib import Path

import pytest

from assemblies.assembly import check_axioms
from assemblies.census import census_tables
from assemblies.morphisms import enumerate_homomorphisms

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def census4():
    return census_tables(4)


@pytest.fixture(scope="session")
def census3():
    return census_tables(3)


@pytest.fixture(scope="session")
def census_assemblies4(census4):
    return [t for t in census4 if check_axioms(t).is_assembly]


@pytest.fixture(scope="session")
def census_assemblies3(census3):
    return [t for t in census3 if check_axioms(t).is_assembly]


@pytest.fixture(scope="session")
def assembly_homs4(census_assemblies4):
    """Every homomorphism between census assemblies of order <= 4."""
    out = []
    for s, t in itertools.product(census_assemblies4, repeat=2):
        out.extend(enumerate_homomorphisms(s, t))
    return out
