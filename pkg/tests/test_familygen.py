import json
from math import gcd, lcm, prod

import pytest

from distint.familygen import FamilyParams, NotIntegralBase, family_params, instantiate
from distint.integrality import is_distance_integral
from distint.model import PartitionSpec

P32 = (1, 4, 8, 18, 31)
MU32 = (1, 5, 14, 20, 9298)


def test_theorem_32_constants():
    fam = family_params(P32, MU32)
    assert fam.step == 13236132
    assert fam.slopes == (4671576, 472719, 143871, 31372, 159936)
    assert fam.intercepts == (3282, 332, 101, 22, 112)
    assert fam.n_slope == 13236132
    assert fam.n_intercept == 9286


def test_theorem_32_internals_k1():
    fam = family_params(P32, MU32)
    num = 2 * 6 * 15 * 21
    den = 1 * 3 * 7 * 17 * 30
    assert (num, den) == (3780, 10710)
    assert fam.d[0] == gcd(num, den) == 630
    assert fam.r[0] == den // 630 == 17


def test_theorem_32_instances():
    fam = family_params(P32, MU32)
    spec, mu = instantiate(fam, 0)
    assert spec.counts == (3282, 332, 101, 22, 112) and mu[-1] == 9298
    spec, mu = instantiate(fam, 1)
    assert spec.counts == (4674858, 473051, 143972, 31394, 160048)
    assert mu == (1, 5, 14, 20, 13245430)
    rep = is_distance_integral(spec)
    assert rep.integral and rep.mu == mu


def test_single_size_family():
    p, a = 3, 4
    fam = family_params((p,), (a * p + p - 2,))
    assert fam.d == (1,) and fam.step == p and fam.slopes == (1,)
    for t in range(6):
        spec, mu = instantiate(fam, t)
        assert spec == PartitionSpec(((p, a + t),))
        assert mu == ((a + t) * p + p - 2,)
        assert is_distance_integral(spec).mu == mu


def test_not_integral_base():
    with pytest.raises(NotIntegralBase):
        family_params((1, 3), (0, 14))
    with pytest.raises(NotIntegralBase):
        family_params((1, 3), (1, 13))


def test_negative_t():
    with pytest.raises(ValueError):
        instantiate(family_params(P32, MU32), -1)


def _check_family(fam: FamilyParams, p, mu, a):
    s = len(p)
    for k in range(s):
        num = prod(mu[i] - p[k] + 2 for i in range(s - 1))
        den = p[k] * prod(p[i] - p[k] for i in range(s) if i != k)
        assert fam.d[k] == gcd(num, den)
        assert fam.r[k] == abs(den) // fam.d[k]
        assert fam.step % fam.r[k] == 0
        assert fam.slopes[k] >= 1
        assert fam.slopes[k] * den == num * fam.step
    assert fam.step == lcm(*fam.r)
    assert fam.intercepts == tuple(a)
    assert sum(m * q for m, q in zip(fam.slopes, p)) == fam.step
    for t in range(6):
        spec, want = instantiate(fam, t)
        assert spec.n == fam.n_intercept + fam.step * t
        rep = is_distance_integral(spec)
        assert rep.integral and rep.mu == want


def test_every_corpus_row_generates_a_family(corpus_rows):
    for row in corpus_rows:
        fam = family_params(row.p, row.mu)
        _check_family(fam, row.p, row.mu, row.a)


def test_small_families_from_search():
    from distint.search import SearchBounds, search

    rows = list(search(SearchBounds.box((4, 7, 10), 300)))
    assert rows
    for row in rows:
        _check_family(family_params(row.p, row.mu), row.p, row.mu, row.a)


def test_json_roundtrip():
    fam = family_params(P32, MU32)
    d = json.loads(fam.to_json())
    assert d["step"] == 13236132 and d["n_slope"] == 13236132
    assert FamilyParams.from_dict(d) == fam


def test_formulas():
    lines = family_params(P32, MU32).formulas()
    assert lines[0] == "mu_5(t) = 13236132t + 9298"
    assert lines[1] == "a_1(t) = 4671576t + 3282"
    assert lines[-1] == "n(t) = 13236132t + 9286"
    assert len(lines) == 7
