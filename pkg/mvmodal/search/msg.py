"""
Result records of searches. Every record is a pydantic model; ``record()`` gives the plain
dictionary written as one json line, in field declaration order.
"""
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from ..config import DEFAULT_MODEL_CAP


def dump(model, **kwargs):
    """The fields of a pydantic model as a dictionary, in declaration order."""
    if hasattr(model, "model_dump"):
        return model.model_dump(**kwargs)
    return model.dict(**kwargs)


VALID_UP_TO = "ValidUpTo"
REFUTED = "Refuted"
DISCARDED = "Discarded"
INCONCLUSIVE = "Inconclusive"


class SearchBudget(BaseModel):
    """
    Bounds of an exhaustive model search.

    ``model_cap`` bounds the number of (frame, valuation) pairs a search may visit; ``jobs`` is the
    number of worker threads.
    """

    max_worlds: int
    min_worlds: int = 1
    model_cap: Optional[int] = DEFAULT_MODEL_CAP
    jobs: int = 1

    def __init__(self, **data):
        super().__init__(**data)
        if self.max_worlds < 1:
            raise ValueError(f"max_worlds must be at least 1, got {self.max_worlds}")
        if not 1 <= self.min_worlds <= self.max_worlds:
            raise ValueError(f"min_worlds must be between 1 and max_worlds, got {self.min_worlds}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")


class _Record(BaseModel):
    class Config:
        arbitrary_types_allowed = True

    def record(self) -> Dict[str, Any]:
        """Fields as plain data; live objects (models, frames) are left out."""
        return dump(self, exclude={"countermodel", "frame"})

    def json_line(self):
        return json.dumps(self.record(), ensure_ascii=False)


class Verdict(_Record):
    """
    Outcome of a bounded search: ``ValidUpTo`` (no countermodel with at most ``max_worlds``
    worlds) or ``Refuted`` with a countermodel and the refuting world.
    """

    query: str
    algebra: str
    frame_class: str
    formula: str
    premises: List[str] = []
    status: str
    max_worlds: int
    models_checked: int
    world: Optional[str] = None
    value: Optional[str] = None
    model_text: Optional[str] = None
    countermodel: Any = None

    @property
    def refuted(self):
        return self.status == REFUTED

    @property
    def valid_up_to(self):
        return self.status == VALID_UP_TO

    def text(self):
        scope = f"[{self.algebra}, {self.frame_class}, up to {self.max_worlds} world(s)]"
        if self.refuted:
            line = f"{REFUTED} at {self.world} (value {self.value}) {scope}"
            return line + "\n" + self.model_text
        return f"{VALID_UP_TO}({self.max_worlds}) {scope}\n"


class DefinabilityResult(_Record):
    algebra: str
    frame_class: str
    formulas: List[str]
    max_worlds: int
    frames_checked: int
    defines: bool
    frame_valid: Optional[bool] = None
    in_class: Optional[bool] = None
    frame_text: Optional[str] = None
    frame: Any = None

    def text(self):
        scope = f"[{self.algebra}, {self.frame_class}, up to {self.max_worlds} world(s)]"
        if self.defines:
            return f"Defines {self.frame_class} up to {self.max_worlds} world(s) {scope}\n"
        what = "valid but outside the class" if self.frame_valid else "in the class but not valid"
        return f"Counterexample frame ({what}) {scope}\n{self.frame_text}"


class CompanionVerdict(_Record):
    algebra: str
    variant: str
    formula: str
    companion: str
    premises: List[str] = []
    status: str
    assignment: Optional[Dict[str, str]] = None
    world: Optional[str] = None
    value: Optional[str] = None
    model_text: Optional[str] = None
    countermodel: Any = None

    @property
    def discarded(self):
        return self.status == DISCARDED

    def text(self):
        head = f"{self.status} [{self.algebra}, {self.variant}] companion: {self.companion}"
        if not self.discarded:
            return head + "\n"
        values = ", ".join(f"{k}={v}" for k, v in self.assignment.items())
        return f"{head}\nassignment: {values}\nrefuted at {self.world} (value {self.value})\n{self.model_text}"


class LiftResult(_Record):
    algebra: str
    premise: str
    conclusion: str
    verified: bool
    witnessed: bool = False

    def text(self):
        return f"{'Verified' if self.verified else 'Premise fails'}: {self.conclusion}\n"


class MatrixFailure(BaseModel):
    name: str
    kind: str
    witness: Dict[str, str]
    premises: List[str] = []
    conclusion: str = ""


class MatrixReport(_Record):
    matrix: str
    checked: List[str]
    failures: List[MatrixFailure]

    @property
    def failing(self):
        return [failure.name for failure in self.failures]

    def text(self):
        lines = [f"{self.matrix}: {len(self.checked)} checked, {len(self.failures)} failing"]
        for failure in self.failures:
            values = ", ".join(f"{k}={v}" for k, v in failure.witness.items())
            lines.append(f"  {failure.kind} {failure.name} fails at {values}")
        return "\n".join(lines) + "\n"
