"""Canonical JSON envelopes for everything the command line prints or writes."""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from . import __version__
from .blowup_pic import ClassificationReport
from .kulikov_verify import Check, KulikovCertificate, cycle_witness

SCHEMA_VERSION = 1


def _plain(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        raise TypeError("floating-point values are not allowed in reports")
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(command: str, seed: int, checks: list[Check], inputs_echo: str, result: dict | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "seed": seed,
        "checks": [c.to_json() for c in checks],
        "overall": "pass" if all(c.passed for c in checks) else "fail",
        "inputs_echo": inputs_echo,
        "result": result if result is not None else {},
    }


def dumps(doc: dict) -> str:
    return json.dumps(_plain(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def classification_json(rep: ClassificationReport) -> dict:
    return {
        "spec": {"d1": rep.spec.d1, "m1": rep.spec.m1, "d2": rep.spec.d2, "m2": rep.spec.m2},
        "determinant": rep.determinant,
        "affine": rep.affine,
        "factorial": rep.factorial,
        "picard_invariants": list(rep.picard_invariants),
        "self_intersection_sum": rep.self_intersection_sum,
    }


def certificate_json(cert: KulikovCertificate, inputs_echo: str) -> dict:
    return envelope("kulikov-verify", cert.seed, list(cert.checks), inputs_echo,
                    {"metadata": cert.metadata, "n_samples": cert.n_samples})


def cycle_json(cycle) -> dict:
    return cycle_witness(cycle)


def load_schema() -> dict:
    text = resources.files("kulikov").joinpath("schemas/report-v1.json").read_text(encoding="utf-8")
    return json.loads(text)
