import pytest
from hypothesis import settings, strategies as st

from vcfold.core import SetFamily

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@st.composite
def families(draw, min_n=1, max_n=6, min_size=0, max_size=None):
    n = draw(st.integers(min_n, max_n))
    members = draw(st.sets(st.integers(0, (1 << n) - 1), min_size=min_size, max_size=max_size))
    return SetFamily(n, members)


def fam(n, *sets):
    return SetFamily.from_sets(n, sets)


@pytest.fixture
def F():
    return fam
