import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from classifier.families import OrbitClass


@dataclass
class ClassificationRecord:
    """Outcome of one seed in a classification run."""
    index: int
    seed: str
    family: Optional[str]
    verdict: Optional[str]
    parameters: Dict[str, Any] = field(default_factory=dict)
    complete: Optional[bool] = None
    gauss_sign: Optional[str] = None
    height_monotone: Optional[bool] = None
    ends: List[Dict[str, Any]] = field(default_factory=list)
    regime: Optional[str] = None
    time_ms: float = 0.0
    error: Optional[str] = None  # 'NoCrossing: ...', 'Unclassified: ...'


class ReportCollector:
    """Collects classification outcomes for the JSON report."""

    def __init__(self, a: float, b: float, phi: str):
        self.header = {"a": a, "b": b, "phi": phi}
        self.records: List[ClassificationRecord] = []
        self._current_index = 0

    def record(self, seed: str, verdict: OrbitClass):
        self._current_index += 1
        data = verdict.as_dict()
        self.records.append(ClassificationRecord(
            index=self._current_index,
            seed=seed,
            family=data["family"],
            verdict=verdict.verdict(),
            parameters=data["parameters"],
            complete=verdict.complete,
            gauss_sign=verdict.gauss_sign,
            height_monotone=verdict.height_monotone,
            ends=data["ends"],
            regime=verdict.regime,
            time_ms=verdict.stats.get("time_ms", 0.0),
        ))

    def record_failure(self, seed: str, error: str):
        self._current_index += 1
        self.records.append(ClassificationRecord(
            index=self._current_index, seed=seed, family=None, verdict=None, error=error,
        ))

    def set_thresholds(self, thresholds: Dict[str, Any]):
        self.header["thresholds"] = thresholds

    def get_family_counts(self) -> Dict[str, int]:
        return dict(sorted(Counter(r.family for r in self.records if r.family).items()))

    def get_failures(self) -> List[ClassificationRecord]:
        return [r for r in self.records if r.error is not None]

    def get_total_time(self) -> float:
        return round(sum(r.time_ms for r in self.records), 3)

    def to_json(self) -> str:
        report = dict(self.header)
        report["records"] = [asdict(r) for r in self.records]
        report["families"] = self.get_family_counts()
        report["failures"] = len(self.get_failures())
        report["total_time_ms"] = self.get_total_time()
        return json.dumps(report, indent=2, allow_nan=True) + "\n"
