from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


def jsonable(x: Any) -> Any:
    """Recursively convert Fractions, tuples and objects with ``to_json``."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    if hasattr(x, "serialize"):
        return x.serialize()
    return x


@dataclass
class VerificationReport:
    claim: str
    inputs: dict
    computed: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    verdict: str = PASS
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def to_json(self) -> dict:
        return {"claim": self.claim, "inputs": jsonable(self.inputs),
                "computed": jsonable(self.computed), "expected": jsonable(self.expected),
                "verdict": self.verdict, "witnesses": jsonable(self.witnesses)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)
