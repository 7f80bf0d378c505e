import json
from pathlib import Path

import pytest

from distint.corpus import (
    CorpusError,
    _raw_bytes,
    find_family_claims,
    load_corpus,
    run_errata_report,
    table1_entries,
)

GOLDEN = Path(__file__).parent / "golden" / "errata.json"


def test_checksum_guards_drift():
    raw = _raw_bytes()
    assert load_corpus(raw)
    tampered = raw.replace(b'"a": [1302', b'"a": [1303', 1)
    assert tampered != raw
    with pytest.raises(CorpusError):
        load_corpus(tampered)


def test_table1_shape(corpus_entries):
    rows = table1_entries(corpus_entries)
    assert len(rows) >= 37
    assert len(rows) == 56
    assert rows[0].row.p == (1, 3, 5, 12, 20)
    assert rows[0].row.a == (1302, 254, 185, 70, 132)
    sources = [e.source for e in rows]
    assert sources == [f"Table 1, row {i}" for i in range(1, 57)]
    s6 = [e for e in corpus_entries if e.kind == "row" and e.row.p == (2, 5, 11, 18, 21, 23)]
    assert len(s6) == 1 and s6[0].row.mu[-1] == 53979


def test_loaded_entries_are_unchecked(corpus_entries):
    assert {e.status for e in corpus_entries} == {"unchecked"}
    assert all(e.source for e in corpus_entries)


def test_claim_and_families_recorded(corpus_entries):
    claims = [e for e in corpus_entries if e.kind == "claim"]
    assert [c.payload for c in claims] == [{"quantity": "table1_rows", "value": 37}]
    fam = find_family_claims((1, 4, 8, 18, 31), (1, 5, 14, 20, 9298), corpus_entries)
    assert [f.source for f in fam] == ["Theorem 3.2"]
    assert fam[0].payload["step"] == 13236132
    assert (fam[0].payload["n_slope"], fam[0].payload["n_intercept"]) == (324632, 2622)


def test_errata_report_matches_golden():
    report = run_errata_report()
    assert report.to_json() == GOLDEN.read_text()
    assert report.counts == {"verified": 57, "discrepant": 3, "unchecked": 0}


def test_errata_details():
    report = run_errata_report()
    by_source = {e.source: e for e in report.entries}
    assert by_source["Table 1, row 1"].status == "verified"
    t32 = {d["field"]: d for d in by_source["Theorem 3.2"].details}
    assert t32["n_slope"]["recomputed"] == 13236132 and t32["n_intercept"]["recomputed"] == 9286
    assert "step" not in t32
    t35 = {d["field"]: d for d in by_source["Theorem 3.5"].details}
    assert (t35["step"]["printed"], t35["step"]["recomputed"]) == (9598038, 4772040)
    assert "table1_rows" in {d["field"] for d in report.discrepancies[-1].details}


def test_report_is_deterministic():
    assert run_errata_report().to_json() == run_errata_report().to_json()
    text = run_errata_report().to_text()
    assert text.splitlines()[-1] == "60 entries: 57 verified, 3 discrepant, 0 unchecked"
    assert json.loads(run_errata_report().to_json())["summary"]["discrepant"] == 3
