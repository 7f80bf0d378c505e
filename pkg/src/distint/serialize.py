"""JSON encodings for spectra and integrality reports.

Integers stay integers; an isolating interval becomes ``{"lo": "5/2", "hi": "3"}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .integrality import IntegralityReport
from .spectral import DSpectrum, Eigenvalue, Interval


def eigen_to_json(lam: Eigenvalue) -> Any:
    if isinstance(lam, Interval):
        return {"lo": str(lam.lo), "hi": str(lam.hi)}
    return lam


def eigen_from_json(obj: Any) -> Eigenvalue:
    if isinstance(obj, dict):
        return Interval(Fraction(obj["lo"]), Fraction(obj["hi"]))
    return int(obj)


def spectrum_to_dict(spec_text: str, sp: DSpectrum) -> dict[str, Any]:
    return {
        "spec": spec_text,
        "integral": sp.integral,
        "entries": [{"eigenvalue": eigen_to_json(lam), "multiplicity": m} for lam, m in sp.entries],
        "nontrivial": [eigen_to_json(lam) for lam in sp.nontrivial],
    }


def spectrum_from_dict(d: dict[str, Any]) -> DSpectrum:
    return DSpectrum(
        tuple((eigen_from_json(e["eigenvalue"]), e["multiplicity"]) for e in d["entries"]),
        tuple(eigen_from_json(x) for x in d["nontrivial"]),
        d["integral"],
    )


def report_to_dict(spec_text: str, rep: IntegralityReport) -> dict[str, Any]:
    return {
        "spec": spec_text,
        "integral": rep.integral,
        "mu": None if rep.mu is None else list(rep.mu),
        "roots": [eigen_to_json(r) for r in rep.roots],
    }


def report_from_dict(d: dict[str, Any]) -> IntegralityReport:
    return IntegralityReport(d["integral"], None if d["mu"] is None else tuple(d["mu"]), tuple(eigen_from_json(r) for r in d["roots"]))
