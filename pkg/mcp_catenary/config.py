from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional


@dataclass
class CatenaryConfig:
    """Tunable limits for the enumeration-heavy operations."""

    explosion_cap: int = 20000
    workers: Optional[int] = None
    parallel_threshold: int = 400
    oracle_value_cap: int = 100000
    oracle_factorization_cap: int = 5000
    verify_budget: int = 5000
    verify_samples: int = 24
    sample_seed: int = 0
    base_search_factor: int = 6
    base_search_max_generators: int = 4

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "CatenaryConfig":
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}")
        return cls(**payload)

    @classmethod
    def from_file(cls, path: str | Path) -> "CatenaryConfig":
        payload = json.loads(Path(path).read_text())
        return cls.from_dict(payload)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def resolved_workers(self) -> int:
        if self.workers is None:
            return os.cpu_count() or 1
        return max(1, self.workers)


DEFAULT_CONFIG = CatenaryConfig()
