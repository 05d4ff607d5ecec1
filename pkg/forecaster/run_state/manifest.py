"""
Run manifest: config echo, seed, every artifact path produced, stage timings.
Each CLI command merges into the manifest already present in the output directory.
"""

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Union

from .. import __version__

MANIFEST_NAME = "manifest.json"


@dataclass
class RunManifest:
    """
    Paths are stored relative to the output directory so runs can be moved.
    checkpoints is keyed '<model>_f<h>'.
    """

    config: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    dataset: List[str] = field(default_factory=list)
    checkpoints: Dict[str, str] = field(default_factory=dict)
    loss_histories: Dict[str, str] = field(default_factory=dict)
    forecasts: Dict[str, str] = field(default_factory=dict)
    reports: List[str] = field(default_factory=list)
    plots: List[str] = field(default_factory=list)
    logs: List[str] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    toolkit_version: str = __version__

    def add_path(self, group: str, path: str, key: str = "") -> None:
        target = getattr(self, group)
        if isinstance(target, dict):
            target[key] = path
        elif path not in target:
            target.append(path)

    def all_paths(self) -> List[str]:
        paths = list(self.dataset) + list(self.reports) + list(self.plots) + list(self.logs)
        for group in (self.checkpoints, self.loss_histories, self.forecasts):
            paths.extend(group.values())
        return paths

    def missing(self, root: Union[str, Path]) -> List[str]:
        root = Path(root)
        return [p for p in self.all_paths() if not (root / p).exists()]

    def get_snapshot(self) -> Dict[str, Any]:
        return asdict(self)

    def save(self, root: Union[str, Path]) -> Path:
        path = Path(root) / MANIFEST_NAME
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.get_snapshot(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path

    @classmethod
    def load(cls, root: Union[str, Path]) -> "RunManifest":
        """Existing manifest in root, or an empty one."""
        path = Path(root) / MANIFEST_NAME
        if not path.exists():
            return cls()
        data = json.loads(path.read_text(encoding="utf-8"))
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**known)
