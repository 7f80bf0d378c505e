import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from distint.corpus import load_corpus
from distint.model import PartitionSpec

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def specs(draw, max_size=12, max_count=15, max_s=4):
    sizes = draw(st.lists(st.integers(1, max_size), min_size=1, max_size=max_s, unique=True))
    counts = draw(st.lists(st.integers(1, max_count), min_size=len(sizes), max_size=len(sizes)))
    return PartitionSpec(tuple(zip(sorted(sizes), counts)))


@pytest.fixture(scope="session")
def corpus_entries():
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_rows(corpus_entries):
    return [e.row for e in corpus_entries if e.kind == "row"]
