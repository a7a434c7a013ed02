"""Value objects shared by the checkers: witnesses, verdicts, check records."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


class PervcohError(Exception):
    """Base class for input and precondition errors."""


class PreconditionError(PervcohError):
    pass


class InternalConsistencyError(RuntimeError):
    """Two routes that must agree did not."""


def jsonable(x: Any) -> Any:
    """Map infinities to strings so reports stay valid JSON."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


@dataclass(frozen=True)
class Witness:
    stratum: Optional[str]
    degree: Optional[int]
    computed: Any
    required: Any
    relation: str = "<="  # the bound that failed to hold: computed <relation> required
    note: str = ""

    def as_dict(self) -> Dict[str, Any]:
        d = {
            "stratum": self.stratum,
            "degree": self.degree,
            "computed": jsonable(self.computed),
            "required": jsonable(self.required),
            "relation": self.relation,
        }
        if self.note:
            d["note"] = self.note
        return d

    def violated(self) -> bool:
        if self.relation == "<=":
            return self.computed > self.required
        if self.relation == ">=":
            return self.computed < self.required
        return self.computed != self.required


@dataclass
class Verdict:
    result: bool
    route: str
    witnesses: List[Witness] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.result

    def as_dict(self) -> Dict[str, Any]:
        return {"result": self.result, "route": self.route,
                "witnesses": [w.as_dict() for w in self.witnesses]}


@dataclass
class CheckRecord:
    name: str
    result: bool
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    detail: Dict[str, Any] = field(default_factory=dict)
    timing: float = 0.0

    def as_dict(self) -> Dict[str, Any]:
        d = {"name": self.name, "result": self.result, "witnesses": jsonable(self.witnesses)}
        if self.detail:
            d["detail"] = jsonable(self.detail)
        return d
