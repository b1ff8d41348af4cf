"""Line-oriented reports for axiom soundness runs.

Each instance produces ``SCHEMA <id> instance <k>: VALID`` or
``SCHEMA <id> instance <k>: FAIL <countermodel-file>``; countermodels are
written as model files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..io.files import write_model
from ..model import Signature
from .enumeration import EnumerationBudget
from .schemas import canonical_id, instantiate_schema
from .validity import check_validity

_FILE_SAFE = {"∧": "and", "⊔": "gor", "⊃": "imp"}


def file_stem(schema_id: str) -> str:
    return "".join(_FILE_SAFE.get(ch, ch) for ch in schema_id)


@dataclass
class AxiomCheckResult:
    schema: str
    seed: int
    lines: list[str] = field(default_factory=list)
    failures: int = 0
    instances: int = 0

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def run_axiom_check(schema_id: str, sig: Signature, samples: int, max_rows: int, *,
                    seed: int = 0, out_dir: Optional[Path] = None,
                    workers: int = 1) -> AxiomCheckResult:
    sid = canonical_id(schema_id)
    budget = EnumerationBudget(sig, max_rows)
    result = AxiomCheckResult(sid, seed)
    result.lines.append(f"# seed {seed}; {budget.describe()}")
    for k, phi in enumerate(instantiate_schema(sid, sig, samples, seed=seed)):
        result.instances += 1
        verdict = check_validity(phi, budget, workers=workers)
        if verdict:
            result.lines.append(f"SCHEMA {sid} instance {k}: VALID")
            continue
        result.failures += 1
        directory = Path(out_dir or ".")
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{file_stem(sid)}-{k}.model"
        path.write_text(f"# countermodel for: {phi}\n" + write_model(verdict.countermodel),
                        encoding="utf-8")
        result.lines.append(f"SCHEMA {sid} instance {k}: FAIL {path}")
    return result
