"""Run reports and their JSON form.

Complex numbers are written as ``{"re": x, "im": y}``. Floats go through
``repr`` (the shortest string that parses back to the same double), so a
report read back and dumped again is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .extremal import ExtremalSolution
from .harmonic import ZeroSet
from .trees import CountReport

SCHEMA = 1
STATUSES = ("success", "partial", "failure")


def cnum(z) -> dict:
    z = complex(z)
    return {"re": float(z.real) + 0.0, "im": float(z.imag) + 0.0}


def from_cnum(d: dict) -> complex:
    return complex(d["re"], d["im"])


def zero_set_to_dict(zs: ZeroSet) -> dict:
    return {
        "degree": zs.degree,
        "total": zs.total,
        "count_preserving": zs.count_preserving,
        "count_reversing": zs.count_reversing,
        "winding": zs.winding,
        "zeros": [{"location": cnum(z.location), "orientation": z.orientation.value,
                   "index": z.index, "derivative_modulus": z.derivative_modulus,
                   "residual": z.residual} for z in zs.zeros],
    }


def solution_to_dict(sol: ExtremalSolution, **extra) -> dict:
    out = {
        "label": sol.label,
        "degree": sol.degree,
        "coefficients": [cnum(c) for c in sol.polynomial.coeffs],
        "critical_points": [cnum(c) for c in sol.critical_points],
        "residual_norm": sol.residual_norm,
    }
    if sol.config is not None:
        out["scale"] = sol.config.scale
        out["offset"] = sol.config.offset
    if sol.zero_report is not None:
        zs = sol.zero_report
        out["zeros"] = {"total": zs.total, "count_preserving": zs.count_preserving,
                        "count_reversing": zs.count_reversing, "winding": zs.winding}
    out.update(extra)
    return out


def count_report_to_dict(cr: CountReport) -> dict:
    return {
        "degree": cr.degree,
        "enumerated_conjugacy": cr.enumerated_conjugacy,
        "enumerated_equivalence": cr.enumerated_equivalence,
        "closed_form_Q": cr.closed_form_Q,
        "closed_form_E": cr.closed_form_E,
        "trees": [t.label for t in cr.trees],
    }


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return cnum(obj)
    if isinstance(obj, Path):
        return str(obj)
    return obj


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    results: Any = None
    status: str = "success"
    diagnostics: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_dict(self) -> dict:
        return _plain({"schema": SCHEMA, "command": self.command, "status": self.status,
                       "inputs": self.inputs, "diagnostics": self.diagnostics,
                       "results": self.results})

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d["command"], d["inputs"], d["results"], d["status"], list(d["diagnostics"]))

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json())
        return path


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)
