from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from distint.model import (
    PartitionSpec,
    SpecError,
    format_spec,
    group,
    is_primitive,
    iter_partitions,
    parse_spec,
    primitive_reduce,
    scale,
)

from .conftest import specs


def test_group_examples():
    assert group([1, 1, 3]).parts == ((1, 2), (3, 1))
    assert group([2, 2]).parts == ((2, 2),)
    row1 = [1] * 1302 + [3] * 254 + [5] * 185 + [12] * 70 + [20] * 132
    spec = group(row1)
    assert spec.parts == ((1, 1302), (3, 254), (5, 185), (12, 70), (20, 132))
    assert spec.n == 6469 == sum(row1)
    assert spec.part_count == 1943


@pytest.mark.parametrize("bad", [[], [0], [1, -2], [1.5]])
def test_group_rejects(bad):
    with pytest.raises(SpecError):
        group(bad)


def test_spec_invariants():
    with pytest.raises(SpecError):
        PartitionSpec(((3, 1), (1, 2)))
    with pytest.raises(SpecError):
        PartitionSpec(((1, 0),))
    with pytest.raises(SpecError):
        PartitionSpec(())


def test_scale_examples():
    assert scale(PartitionSpec(((1, 7), (3, 2))), 2).parts == ((2, 7), (6, 2))
    assert scale(PartitionSpec(((2, 2),)), 3).parts == ((6, 2),)
    with pytest.raises(SpecError):
        scale(PartitionSpec(((2, 2),)), 0)


def test_primitive_reduce_examples():
    assert primitive_reduce(PartitionSpec(((2, 7), (6, 2)))) == (PartitionSpec(((1, 7), (3, 2))), 2)
    assert primitive_reduce(PartitionSpec(((1, 3), (5, 1)))) == (PartitionSpec(((1, 3), (5, 1))), 1)
    assert primitive_reduce(PartitionSpec(((4, 1), (8, 1), (20, 1)))) == (PartitionSpec(((1, 1), (2, 1), (5, 1))), 4)
    assert is_primitive([2, 3]) and not is_primitive([2, 4])


@given(specs(), st.integers(1, 7))
def test_scale_multiplies_n(spec, q):
    scaled = scale(spec, q)
    assert scaled.n == q * spec.n
    assert scaled.counts == spec.counts
    assert scale(spec, 1) == spec


@given(specs())
def test_primitive_reduce_properties(spec):
    reduced, g = primitive_reduce(spec)
    assert is_primitive(reduced.sizes)
    assert scale(reduced, g) == spec
    assert primitive_reduce(reduced) == (reduced, 1)


@given(st.lists(st.integers(1, 30), min_size=1, max_size=40))
def test_group_roundtrip(multiset):
    spec = group(multiset)
    assert spec.ungroup() == sorted(multiset)
    assert Counter(spec.ungroup()) == Counter(multiset)


@given(specs())
def test_parse_format_roundtrip(spec):
    assert parse_spec(format_spec(spec)) == spec
    assert parse_spec(",".join(map(str, spec.ungroup()))) == spec


def test_parse_examples():
    assert parse_spec("1302x1,254x3,185x5,70x12,132x20").n == 6469
    assert parse_spec("1,1,3") == group([1, 1, 3])
    assert parse_spec("3x1") == PartitionSpec(((1, 3),))


@pytest.mark.parametrize(
    "text,token",
    [("2x2,1x2", "1x2"), ("2y3", "2y3"), ("1x1,,2x3", None), ("0x3", "0x3"), ("1,a", "a"), ("2x3,1x1", "1x1")],
)
def test_parse_errors_name_token(text, token):
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    if token is not None:
        assert exc.value.token == token
        assert repr(token) in str(exc.value)


def test_iter_partitions_counts():
    # p(n) for n = 1..12
    expected = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]
    for n, want in enumerate(expected, start=1):
        parts = list(iter_partitions(n))
        assert len(parts) == want
        assert len(set(parts)) == want
        assert all(p.n == n for p in parts)
