from typing import Any, Dict, List, Literal, Optional

import orjson
from pydantic import BaseModel


class Witness(BaseModel):
    kind: Literal["point", "plane"]
    object: str
    count: int


class ConditionOutcome(BaseModel):
    holds: bool
    allowed: List[int]
    observed: Dict[int, int]  # incidence count -> multiplicity


class ConditionReport(BaseModel):
    q: int
    size: int
    condI: ConditionOutcome
    condII: ConditionOutcome
    condIII: ConditionOutcome
    e: Optional[int] = None
    eResidue: Optional[int] = None
    violations: List[Witness] = []
    violationsTruncated: bool = False


class SpectrumSummary(BaseModel):
    q: int
    size: int
    points: Dict[int, int]
    planes: Dict[int, int]
    lines: Dict[int, int]


class LemmaEntry(BaseModel):
    lemma: str
    statement: str
    expected: Any
    observed: Any
    passed: bool


class LemmaReport(BaseModel):
    q: int
    size: int
    case: Literal["A", "B", "NA"]
    e: Optional[int] = None
    entries: List[LemmaEntry] = []
    skipped: List[str] = []
    allPassed: bool = False


def dump_json(model: BaseModel) -> bytes:
    """Stable, indented JSON with a trailing newline."""
    return orjson.dumps(
        model.model_dump(mode="python"),
        option=orjson.OPT_INDENT_2 | orjson.OPT_NON_STR_KEYS | orjson.OPT_APPEND_NEWLINE,
    )
