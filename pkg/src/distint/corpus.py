"""Published solutions and family constants, stored exactly as printed.

Statuses are only ever assigned by recomputation in
:func:`run_errata_report`; loading yields ``unchecked`` entries.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Any, Sequence

from .familygen import FamilyParams, NotIntegralBase, family_params, instantiate
from .integrality import SolutionRow, is_distance_integral, verify_row

CORPUS_FILE = "corpus.jsonl"
CORPUS_SHA256 = "6136d65b78439b15b5fa6d3c6324b430cbc1c5fc41a02fd0f303bbd380ecdc6e"

FAMILY_T_RANGE = range(6)


class CorpusError(RuntimeError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    kind: str
    source: str
    payload: dict[str, Any]
    status: str = "unchecked"
    details: tuple[dict[str, Any], ...] = field(default=())

    def __post_init__(self):
        if not self.source:
            raise CorpusError("corpus entry without a source")
        if self.kind not in ("row", "family", "claim"):
            raise CorpusError(f"unknown corpus entry kind {self.kind!r}")

    @property
    def row(self) -> SolutionRow:
        if self.kind != "row":
            raise TypeError(f"{self.source} is a {self.kind} entry")
        return SolutionRow.build(self.payload["p"], self.payload["a"], self.payload["mu"], self.payload.get("n"))

    def to_dict(self) -> dict[str, Any]:
        d = {"kind": self.kind, "source": self.source, "status": self.status, "payload": self.payload}
        if self.details:
            d["details"] = list(self.details)
        return d


def _raw_bytes() -> bytes:
    return resources.files("distint").joinpath("data").joinpath(CORPUS_FILE).read_bytes()


def load_corpus(data: bytes | None = None, expected_sha256: str = CORPUS_SHA256) -> list[CorpusEntry]:
    raw = _raw_bytes() if data is None else data
    digest = hashlib.sha256(raw).hexdigest()
    if digest != expected_sha256:
        raise CorpusError(f"corpus checksum mismatch: {digest}")
    entries = []
    for lineno, line in enumerate(raw.decode().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            entries.append(CorpusEntry(rec["kind"], rec["source"], rec["payload"]))
        except (ValueError, KeyError) as exc:
            raise CorpusError(f"corrupt corpus line {lineno}: {exc}") from exc
    return entries


def table1_entries(entries: Sequence[CorpusEntry]) -> list[CorpusEntry]:
    return [e for e in entries if e.kind == "row" and e.source.startswith("Table 1")]


def compare_family_claim(claim: dict[str, Any], derived: FamilyParams) -> list[dict[str, Any]]:
    """Field-by-field differences between printed family constants and derived ones."""
    out = []

    def cmp(name: str, printed, recomputed) -> None:
        if printed != recomputed:
            out.append({"field": name, "printed": printed, "recomputed": recomputed})

    cmp("step", claim["step"], derived.step)
    for k, (x, y) in enumerate(zip(claim["slopes"], derived.slopes), start=1):
        cmp(f"slope[{k}]", x, y)
    for k, (x, y) in enumerate(zip(claim["intercepts"], derived.intercepts), start=1):
        cmp(f"intercept[{k}]", x, y)
    cmp("n_slope", claim["n_slope"], derived.n_slope)
    cmp("n_intercept", claim["n_intercept"], derived.n_intercept)
    return out


def find_family_claims(p: Sequence[int], mu: Sequence[int], entries: Sequence[CorpusEntry] | None = None) -> list[CorpusEntry]:
    entries = load_corpus() if entries is None else entries
    key = (list(p), list(mu[:-1]), mu[-1])
    return [
        e for e in entries
        if e.kind == "family" and (e.payload["p"], e.payload["mu_head"], e.payload["mu_s_base"]) == key
    ]


def _check_row(entry: CorpusEntry) -> CorpusEntry:
    report = verify_row(entry.row)
    if report.ok:
        return replace(entry, status="verified")
    details = tuple({"check": c.name, **c.detail} for c in report.failures)
    return replace(entry, status="discrepant", details=details)


def _check_family(entry: CorpusEntry) -> CorpusEntry:
    pl = entry.payload
    mu = list(pl["mu_head"]) + [pl["mu_s_base"]]
    try:
        fam = family_params(pl["p"], mu)
    except NotIntegralBase as exc:
        return replace(entry, status="discrepant", details=({"field": "base", "error": str(exc)},))
    details = compare_family_claim(pl, fam)
    for t in FAMILY_T_RANGE:
        spec, expected = instantiate(fam, t)
        rep = is_distance_integral(spec)
        if not rep.integral or rep.mu != expected:
            details.append({"field": f"instance[t={t}]", "expected_mu": list(expected), "integral": rep.integral})
    return replace(entry, status="discrepant" if details else "verified", details=tuple(details))


def _check_claim(entry: CorpusEntry, checked: Sequence[CorpusEntry]) -> CorpusEntry:
    if entry.payload["quantity"] != "table1_rows":
        return entry
    rows = table1_entries(checked)
    valid = sum(e.status == "verified" for e in rows)
    if valid == entry.payload["value"] and len(rows) == valid:
        return replace(entry, status="verified")
    return replace(
        entry,
        status="discrepant",
        details=({"field": "table1_rows", "printed": entry.payload["value"], "transcribed": len(rows), "verified": valid},),
    )


@dataclass(frozen=True)
class ErrataReport:
    entries: tuple[CorpusEntry, ...]

    @property
    def counts(self) -> dict[str, int]:
        out = {"verified": 0, "discrepant": 0, "unchecked": 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    @property
    def discrepancies(self) -> list[CorpusEntry]:
        return [e for e in self.entries if e.status == "discrepant"]

    def to_dict(self) -> dict[str, Any]:
        return {"summary": self.counts, "entries": [e.to_dict() for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = []
        for e in self.entries:
            lines.append(f"{e.status:<10} {e.source}")
            for d in e.details:
                lines.append("           " + " ".join(f"{k}={v}" for k, v in sorted(d.items())))
        c = self.counts
        lines.append(f"{len(self.entries)} entries: {c['verified']} verified, {c['discrepant']} discrepant, {c['unchecked']} unchecked")
        return "\n".join(lines) + "\n"


def run_errata_report(entries: Sequence[CorpusEntry] | None = None) -> ErrataReport:
    entries = load_corpus() if entries is None else list(entries)
    checked = []
    for e in entries:
        if e.kind == "row":
            checked.append(_check_row(e))
        elif e.kind == "family":
            checked.append(_check_family(e))
        else:
            checked.append(e)
    checked = [_check_claim(e, checked) if e.kind == "claim" else e for e in checked]
    return ErrataReport(tuple(checked))
